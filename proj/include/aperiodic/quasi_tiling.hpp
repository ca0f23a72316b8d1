#pragma once

#include <optional>
#include <vector>

#include "aperiodic/group.hpp"

namespace aperiodic {

/// N(eps) = ceil(-ln(eps / (1 - eps))), for eps in (0, 1/10).
int n_epsilon(double eps);

struct PrototileSet {
    double epsilon = 0.0;
    int n_eps = 0;
    std::vector<Region> tiles;          // nested S_1 subset ... subset S_N
    std::vector<std::size_t> provenance; // indices into the source schedule (1-based)
    std::vector<double> chain_defects;   // defect of tile i w.r.t. tile i-1
};

/// Greedy prototile selection from a Folner schedule: S_1 = F_n, then each
/// subsequent tile is the first later set whose boundary defect relative to
/// the previous tile is at most `chain_defect_target`. The default target is
/// (eps/16)^2; at desk scale that usually exhausts any ball schedule long
/// before the cap, so callers may relax it and lean on the post-hoc tiling
/// verifier instead. Throws ResourceError when the schedule runs out.
PrototileSet select_prototiles(const FolnerSchedule& sched, double eps, std::size_t n,
                               std::optional<double> chain_defect_target = std::nullopt);

struct PlacedTile {
    Elem center{};
    Region tile;    // S_i . c
    Region trimmed; // tile minus earlier same-type tiles
};

struct TilingReport {
    bool t1 = false; // tiles inside A
    bool t2 = false; // trim bound and exact disjointification per type
    bool t3 = false; // cross-type disjointness
    bool t4 = false; // coverage >= (1 - 2 eps) |A|
    double coverage = 0.0;
    std::vector<double> min_trim_fraction;              // per type, min |trimmed| / |S_i|
    std::vector<std::vector<double>> trim_fractions;    // per type, per accepted center
    std::vector<double> region_defects;    // defect of A w.r.t. each tile
    double region_defect_nn_inv = 0.0;     // defect of A w.r.t. S_N S_N^{-1}
    bool all_passed() const { return t1 && t2 && t3 && t4; }
};

struct QuasiTiling {
    Region region; // A
    double epsilon = 0.0;
    PrototileSet prototiles;
    std::vector<std::vector<PlacedTile>> by_type; // index aligned with prototiles.tiles
    TilingReport report;
};

/// Greedy eps-disjoint placement, largest tile type first, scanning candidate
/// centers in lexicographic order (total, documented tie-break). A new tile
/// must avoid all other-type tiles entirely and may overlap previously placed
/// same-type tiles by at most floor(eps |S_i|) points; overlaps are trimmed
/// away. Invariance defects of A are measured and reported, not enforced.
/// Verifies (T1)-(T4) post-hoc and throws VerificationError on failure.
QuasiTiling quasi_tile(const Region& A, const PrototileSet& prototiles, const Group& g);

/// Clause-by-clause check of an arbitrary tiling against Definition-style
/// (T1)-(T4), with measured coverage and trim fractions.
TilingReport verify_tiling(const QuasiTiling& t, double eps, const Group& g);

struct WeightFunction;
struct HullPoint;

struct SubadditivityCheck {
    double region_average = 0.0;   // w(A, x) / |A|
    double tile_sum_average = 0.0; // sum over tiles of w(S_i c, x) / |A|
    double residual = 0.0;         // region_average - tile_sum_average
    double bound = 0.0;            // (8 eta + 2 theta) * eps
    bool ok = false;
};

/// Residual of the tiling sub-additivity bound: w(A)/|A| minus the per-tile
/// sum must stay below (8 eta + 2 theta) eps for the supplied measured
/// constants.
SubadditivityCheck tiling_subadditivity_check(const QuasiTiling& t, const WeightFunction& w,
                                              const HullPoint& x, double eta, double theta);

} // namespace aperiodic

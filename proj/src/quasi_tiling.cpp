#include "aperiodic/quasi_tiling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aperiodic/weights.hpp"

namespace aperiodic {

int n_epsilon(double eps) {
    if (!(eps > 0.0) || !(eps < 0.1))
        throw DomainError("n_epsilon: eps must lie in (0, 1/10)");
    return static_cast<int>(std::ceil(-std::log(eps / (1.0 - eps))));
}

PrototileSet select_prototiles(const FolnerSchedule& sched, double eps, std::size_t n,
                               std::optional<double> chain_defect_target) {
    const int count = n_epsilon(eps);
    if (n < 1 || n > sched.length())
        throw DomainError("select_prototiles: base index out of range");
    const double zeta = eps / 16.0;
    const double target = chain_defect_target.value_or(zeta * zeta);

    PrototileSet out;
    out.epsilon = eps;
    out.n_eps = count;
    out.tiles.push_back(sched.set(n));
    out.provenance.push_back(n);
    out.chain_defects.push_back(0.0);

    const Group& g = sched.group();
    std::size_t cursor = n;
    for (int i = 2; i <= count; ++i) {
        bool found = false;
        for (std::size_t l = std::max<std::size_t>(cursor + 1, static_cast<std::size_t>(i));
             l <= sched.length(); ++l) {
            const double defect = folner_defect(g, out.tiles.back(), sched.set(l),
                                                BoundarySide::Left);
            if (defect <= target) {
                if (!out.tiles.back().is_subset_of(sched.set(l)))
                    throw DomainError("select_prototiles: schedule is not nested");
                out.tiles.push_back(sched.set(l));
                out.provenance.push_back(l);
                out.chain_defects.push_back(defect);
                cursor = l;
                found = true;
                break;
            }
        }
        if (!found)
            throw ResourceError("select_prototiles: schedule exhausted before tile " +
                                std::to_string(i) + " reached defect " + std::to_string(target));
    }
    return out;
}

namespace {

std::size_t union_size(const std::vector<std::vector<PlacedTile>>& by_type) {
    std::size_t covered = 0;
    for (const auto& tiles : by_type)
        for (const auto& t : tiles) covered += t.trimmed.size();
    return covered;
}

} // namespace

QuasiTiling quasi_tile(const Region& A, const PrototileSet& prototiles, const Group& g) {
    if (A.empty()) throw DomainError("quasi_tile: empty region");
    QuasiTiling tiling;
    tiling.region = A;
    tiling.epsilon = prototiles.epsilon;
    tiling.prototiles = prototiles;
    tiling.by_type.resize(prototiles.tiles.size());

    const double eps = prototiles.epsilon;
    Region other_types; // union over already finished types

    for (std::size_t idx = prototiles.tiles.size(); idx-- > 0;) {
        const Region& proto = prototiles.tiles[idx];
        const auto max_overlap =
            static_cast<std::size_t>(std::floor(eps * static_cast<double>(proto.size())));

        // Candidate centers: c in A with proto.c inside A, lex order.
        // s c in A for all s  <=>  c in the intersection of the s^{-1} A.
        Region candidates = g.product(Region({g.inv(proto.elems().front())}), A);
        for (std::size_t i = 1; i < proto.size() && !candidates.empty(); ++i)
            candidates =
                candidates.set_intersection(g.product(Region({g.inv(proto.elems()[i])}), A));
        candidates = candidates.set_intersection(A);

        Region same_type; // union of tiles of this type so far
        for (const auto& c : candidates.elems()) {
            const Region tile = g.translate_right(proto, c);
            if (!tile.disjoint_from(other_types)) continue;
            const Region overlap = tile.set_intersection(same_type);
            if (overlap.size() > max_overlap) continue;
            PlacedTile placed;
            placed.center = c;
            placed.trimmed = tile.set_difference(same_type);
            placed.tile = tile;
            same_type = same_type.set_union(tile);
            tiling.by_type[idx].push_back(std::move(placed));
        }
        other_types = other_types.set_union(same_type);
    }

    tiling.report = verify_tiling(tiling, eps, g);
    if (!tiling.report.all_passed()) {
        throw VerificationError(
            "quasi_tile: verification failed (T1=" + std::to_string(tiling.report.t1) +
            " T2=" + std::to_string(tiling.report.t2) + " T3=" + std::to_string(tiling.report.t3) +
            " T4=" + std::to_string(tiling.report.t4) +
            ", coverage=" + std::to_string(tiling.report.coverage) + ")");
    }
    return tiling;
}

TilingReport verify_tiling(const QuasiTiling& t, double eps, const Group& g) {
    TilingReport report;
    const Region& A = t.region;

    // Measured invariance defects of A (reported, never enforced).
    for (const auto& proto : t.prototiles.tiles)
        report.region_defects.push_back(folner_defect(g, proto, A, BoundarySide::Left));
    if (!t.prototiles.tiles.empty()) {
        const Region& last = t.prototiles.tiles.back();
        report.region_defect_nn_inv =
            folner_defect(g, g.product(last, g.inverse(last)), A, BoundarySide::Left);
    }

    report.t1 = true;
    report.t2 = true;
    report.t3 = true;
    std::vector<Region> type_unions;
    for (std::size_t i = 0; i < t.by_type.size(); ++i) {
        const auto tile_cells = static_cast<double>(t.prototiles.tiles[i].size());
        Region union_tiles;
        Region union_trimmed;
        double min_trim = 1.0;
        std::size_t trimmed_total = 0;
        std::vector<double> fractions;
        for (const auto& placed : t.by_type[i]) {
            if (!placed.tile.is_subset_of(A)) report.t1 = false;
            if (placed.tile.size() != t.prototiles.tiles[i].size()) report.t2 = false;
            if (!placed.trimmed.is_subset_of(placed.tile)) report.t2 = false;
            const double frac = static_cast<double>(placed.trimmed.size()) / tile_cells;
            fractions.push_back(frac);
            min_trim = std::min(min_trim, frac);
            if (static_cast<double>(placed.trimmed.size()) < (1.0 - eps) * tile_cells)
                report.t2 = false;
            if (!union_trimmed.disjoint_from(placed.trimmed)) report.t2 = false;
            union_trimmed = union_trimmed.set_union(placed.trimmed);
            union_tiles = union_tiles.set_union(placed.tile);
            trimmed_total += placed.trimmed.size();
        }
        // Disjointification must recover the union exactly.
        if (!(union_trimmed == union_tiles) || trimmed_total != union_tiles.size())
            report.t2 = false;
        report.min_trim_fraction.push_back(t.by_type[i].empty() ? 1.0 : min_trim);
        report.trim_fractions.push_back(std::move(fractions));
        type_unions.push_back(std::move(union_tiles));
    }
    for (std::size_t i = 0; i < type_unions.size(); ++i)
        for (std::size_t j = i + 1; j < type_unions.size(); ++j)
            if (!type_unions[i].disjoint_from(type_unions[j])) report.t3 = false;

    report.coverage =
        static_cast<double>(union_size(t.by_type)) / static_cast<double>(A.size());
    report.t4 = report.coverage >= (1.0 - 2.0 * eps) - 1e-12;
    return report;
}

SubadditivityCheck tiling_subadditivity_check(const QuasiTiling& t, const WeightFunction& w,
                                              const HullPoint& x, double eta, double theta) {
    SubadditivityCheck check;
    const double volume = static_cast<double>(t.region.size());
    auto total = w(t.region, x);
    if (!total)
        throw DomainError("tiling_subadditivity_check: weight not evaluable on the region");
    check.region_average = *total / volume;
    double tile_sum = 0.0;
    for (const auto& per_type : t.by_type) {
        for (const auto& placed : per_type) {
            auto v = w(placed.tile, x);
            if (!v)
                throw DomainError("tiling_subadditivity_check: weight not evaluable on a tile");
            tile_sum += *v;
        }
    }
    check.tile_sum_average = tile_sum / volume;
    check.residual = check.region_average - check.tile_sum_average;
    check.bound = (8.0 * eta + 2.0 * theta) * t.epsilon;
    check.ok = check.residual <= check.bound + 1e-12;
    return check;
}

} // namespace aperiodic

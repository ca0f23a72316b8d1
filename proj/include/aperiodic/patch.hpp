#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"

namespace aperiodic {

/// A finite support region with weighted points (absent entry = no point)
/// and an anchor recording where the patch was cut out.
struct Patch {
    Region support;
    std::vector<std::pair<Elem, double>> points; // sorted by element
    Elem anchor{};

    double total_mass() const;
    std::optional<double> weight_at(const Elem& e) const;
};

/// Translate a patch: g.p = (g_* mu, gS). The anchor moves along.
Patch translate_patch(const Group& g, const Elem& x, const Patch& p);

/// Canonical translate class of a patch: the representative whose anchor is
/// the identity. Equality of canonical forms is a complete invariant for the
/// anchored harvests used here (both supported groups are torsion-free, so
/// word balls have trivial set stabilizer).
struct Pattern {
    Patch canonical;

    /// Deterministic byte key for dedup / hashing.
    std::string key() const;
};

Pattern make_pattern(const Group& g, const Patch& p);

/// Restriction of the Dirac comb of a coloring to S. Throws if S escapes the
/// window, listing the missing elements.
Patch patch_extract(const Coloring& c, const Region& S);

/// Patch of the translate hull point on support S (same window rules).
Patch patch_extract(const HullPoint& x, const Region& S, const Elem& anchor = Elem{});

/// The patch discrepancy of two patches over a common support, i.e. the
/// infimum of delta > 0 with |mu(B_delta(y)) - nu(B_delta(y))| < delta for
/// all y in S meeting either support. For integer word metrics the open ball
/// B_delta with delta in (k, k+1] equals the closed radius-k ball, so the
/// infimum is min over k >= 0 with g_k < k+1 of max(k, g_k), where
/// g_k = max_y |mu(closed ball k at y) - nu(...)|. Supports must coincide
/// after anchor alignment. Returns +infinity only if the mass bound fails,
/// which cannot happen for patches of valid colorings.
double patch_distance(const Group& g, const Patch& p, const Patch& q);

/// Witness x with x S_p = S_q and patch_distance(x.p, q) < delta, or nullopt.
/// delta = 0 asks for exact equivalence. Throws if the supports are not
/// translates of each other.
std::optional<Elem> delta_similar(const Group& g, const Patch& p, const Patch& q, double delta);

/// All witnesses x with x S subset of T and the pattern delta-similar to the
/// coloring's patch there; sorted canonically. T must lie inside the window.
std::vector<Elem> delta_occurs(const Pattern& pat, const Region& T, const Coloring& c,
                               double delta);

/// Distinct patterns of radius-r patches centered at window points whose full
/// ball lies inside the window.
std::vector<Pattern> flc_census(const Coloring& c, std::int64_t r);

} // namespace aperiodic

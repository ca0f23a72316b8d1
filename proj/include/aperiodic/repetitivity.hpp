#pragma once

#include <optional>
#include <vector>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"

namespace aperiodic {

/// Ratio threshold below which a repetitivity-portion run stops counting as
/// evidence of tempered repetitivity.
inline constexpr double kTemperedRatioThreshold = 0.1;

/// Growth slack for the "bounded c" verdict of a linear fit: the max of
/// R(delta,r)/r over the upper half of the radius range may exceed the lower
/// half's max by at most this factor.
inline constexpr double kBoundedGrowthFactor = 1.25;

struct RepetitivityEntry {
    std::size_t m = 0;
    std::optional<std::size_t> index; // R(delta, m); nullopt = UNCERTIFIED
    double ratio = 0.0;               // |T_m| / |T_R|, valid when certified
    bool certified = false;
};

struct RepetitivityReport {
    double delta = 0.0;
    std::vector<RepetitivityEntry> entries;
    double zeta = 0.0; // inf of certified ratios; 0 when nothing certified
    bool tempered_evidence = false;
    std::size_t window_size = 0;
};

/// Smallest n such that every pattern of size T_m^{-1} harvested from the
/// window delta-occurs in every translate h T_n^{-1} that lies fully inside
/// the window. Entries are certified only when that quantifier was fully
/// checked in-window; nullopt (UNCERTIFIED) when every admissible n runs out
/// of in-window translates first. Throws when the window cannot even hold a
/// single T_m^{-1} patch.
std::optional<std::size_t> repetitivity_index(const Coloring& c, const FolnerSchedule& sched,
                                              double delta, std::size_t m);

/// R(delta, m) table for m <= m_max plus the portion zeta(delta) =
/// inf_m |T_m| / |T_{R(delta,m)}| over certified entries.
RepetitivityReport repetitivity_portion(const Coloring& c, const FolnerSchedule& sched,
                                        double delta, std::size_t m_max);

struct LinearFitEntry {
    std::int64_t r = 0;
    std::optional<std::size_t> index;
    double ratio = 0.0; // R(delta, r) / r
    bool certified = false;
};

struct LinearFit {
    double delta = 0.0;
    double c_estimate = 0.0; // max certified ratio
    std::int64_t r_lo = 0;
    std::int64_t r_hi = 0;
    std::vector<LinearFitEntry> entries;
    bool c_bounded = false; // upper-half max within kBoundedGrowthFactor of lower-half max
};

/// Linear-repetitivity fit with word balls as the patterns of size B_r.
LinearFit linear_repetitivity_fit(const Coloring& c, double delta, std::int64_t r_max);

struct TempLrCrossCheck {
    RepetitivityReport portion; // via balls as a Folner sequence
    LinearFit fit;
    bool zeta_positive = false;
    bool consistent = false; // zeta_positive == fit.c_bounded
};

/// Side-by-side tempered-repetitivity vs linear-repetitivity diagnostic.
TempLrCrossCheck temp_lr_crosscheck(const Coloring& c, double delta, std::size_t m_max);

} // namespace aperiodic

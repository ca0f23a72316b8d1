#pragma once

#include <cstdint>
#include <vector>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"
#include "aperiodic/patch.hpp"
#include "aperiodic/weights.hpp"

namespace aperiodic {

/// Birkhoff-style envelope of a weight function: sup and inf of
/// w(Tg, x) / |T| over all right translates g for which the finite window
/// can evaluate w. `translates` records how many translates entered.
struct Envelope {
    double sup = 0.0;
    double inf = 0.0;
    std::size_t translates = 0;
    double spread() const { return sup - inf; }
};

Envelope envelope_sweep(const WeightFunction& w, const Region& T, const HullPoint& x);

struct ConvergenceRow {
    std::size_t m = 0;
    double sup = 0.0;
    double inf = 0.0;
    double spread = 0.0;
    std::size_t translates = 0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double i_w = 0.0;      // midpoint of [inf, sup] at the largest m
    double error_bar = 0.0; // half spread at the largest m
    bool cauchy = false;    // spreads contract along the schedule
};

/// Envelope rows per Folner index; the limit estimate is the midpoint at the
/// largest index with the spread as its error bar.
ConvergenceReport convergence_experiment(const WeightFunction& w, const HullPoint& x,
                                         const FolnerSchedule& sched, std::size_t m_max);

/// Occurrence frequency of the pattern of E in the canonical (lex-least)
/// translate of T_m^{-1} inside the window, counted at delta = 0 and divided
/// by |T_m|.
double pattern_frequency(const Coloring& c, const Patch& E, const FolnerSchedule& sched,
                         std::size_t m);

struct DensityRow {
    std::size_t m = 0;
    double upper = 0.0;
    double lower = 0.0;
    std::size_t translates = 0;
    double gap() const { return upper - lower; }
};

/// Upper and lower Banach density rows: sup and inf over window translates g
/// of the iota-mass of g T_m^{-1} divided by |T_m|.
std::vector<DensityRow> banach_density(const Coloring& c, const FolnerSchedule& sched,
                                       std::size_t m_max);

} // namespace aperiodic

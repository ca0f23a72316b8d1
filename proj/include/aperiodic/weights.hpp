#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"
#include "aperiodic/patch.hpp"

namespace aperiodic {

/// Declared axiom constants of a weight function (Def-style W1-W4 data).
/// Boundary reference sets J, B, I are empty unless stated.
struct WeightConstants {
    double eta = 0.0;
    double theta = 0.0;
    double vartheta = 0.0;
    Region J, B, I;
};

enum class WeightKind { LocalSum, CountingMass, Custom };

/// A local observable evaluated on hull points: reads the translate through
/// a finite template anchored at the identity. Returns nullopt outside the
/// window-readable part of the hull surrogate.
struct LocalFunction {
    std::string name;
    Region support;      // cells the evaluation reads
    double sup_norm = 1.0;
    std::function<std::optional<double>(const HullPoint&)> eval;
};

/// Indicator of a single letter at the identity.
LocalFunction letter_indicator(const Coloring& reference, const std::string& symbol);

/// Indicator of a colored patch template (delta-tolerant when delta > 0).
LocalFunction pattern_indicator(const Coloring& reference, const Patch& templ, double delta = 0.0);

/// Almost sub-additive weight function over the hull surrogate. Evaluation
/// returns nullopt when the finite window cannot decide the value.
struct WeightFunction {
    std::string name;
    WeightKind kind = WeightKind::Custom;
    WeightConstants declared;
    std::shared_ptr<LocalFunction> local; // set for LocalSum
    std::function<std::optional<double>(const Region&, const HullPoint&)> eval;

    std::optional<double> operator()(const Region& r, const HullPoint& x) const {
        return eval(r, x);
    }
};

/// w_f(T, x) = sum over g in T of f(g.x); declared constants eta = ||f||_inf,
/// theta = vartheta = 0 with empty J, B, I.
WeightFunction weight_wf(LocalFunction f);

/// w(K, x) = total iota-mass of x on K^{-1} (additive). Declared constants:
/// eta = sigma with J = {e}, theta = vartheta = 0.
WeightFunction weight_count(const Coloring& reference);

struct AxiomRow {
    std::string axiom;      // "W1".."W5"
    std::size_t trials = 0;
    double measured = 0.0;  // smallest constant making the axiom hold
    double declared = 0.0;
    bool pass = false;
};

struct AxiomReport {
    std::vector<AxiomRow> rows;
    bool all_passed() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Randomized axiom battery: nested pairs K subset L, disjoint families,
/// translates h, and delta-close hull pairs produced by weight perturbation.
/// Violations are report rows, never exceptions.
AxiomReport test_axioms(const WeightFunction& w, const Coloring& c, std::size_t trials,
                        std::uint64_t seed);

} // namespace aperiodic

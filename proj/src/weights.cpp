#include "aperiodic/weights.hpp"

#include <algorithm>
#include <cmath>

#include "aperiodic/rng.hpp"

namespace aperiodic {

LocalFunction letter_indicator(const Coloring& reference, const std::string& symbol) {
    LocalFunction f;
    f.name = "letter:" + symbol;
    f.support = Region({Elem{}});
    f.sup_norm = 1.0;
    const int sym = reference.symbol_index(symbol);
    f.eval = [sym](const HullPoint& x) -> std::optional<double> {
        auto s = x.symbol_at(Elem{});
        if (!s) return std::nullopt;
        return *s == sym ? 1.0 : 0.0;
    };
    return f;
}

LocalFunction pattern_indicator(const Coloring& reference, const Patch& templ, double delta) {
    LocalFunction f;
    const Group g = reference.group();
    Patch canon = translate_patch(g, g.inv(templ.anchor), templ);
    f.name = "pattern[" + std::to_string(canon.support.size()) + "]";
    f.support = canon.support;
    f.sup_norm = 1.0;
    f.eval = [g, canon, delta](const HullPoint& x) -> std::optional<double> {
        Patch site;
        site.support = canon.support;
        site.points.reserve(canon.support.size());
        for (const auto& e : canon.support.elems()) {
            auto w = x.weight_at(e);
            if (!w) return std::nullopt;
            site.points.emplace_back(e, *w);
        }
        if (delta == 0.0) return site.points == canon.points ? 1.0 : 0.0;
        return patch_distance(g, canon, site) < delta ? 1.0 : 0.0;
    };
    return f;
}

WeightFunction weight_wf(LocalFunction f) {
    WeightFunction w;
    w.name = "wf:" + f.name;
    w.kind = WeightKind::LocalSum;
    w.declared.eta = f.sup_norm;
    w.declared.theta = 0.0;
    w.declared.vartheta = 0.0;
    w.local = std::make_shared<LocalFunction>(std::move(f));
    auto local = w.local;
    w.eval = [local](const Region& T, const HullPoint& x) -> std::optional<double> {
        double sum = 0.0;
        for (const auto& g : T.elems()) {
            auto v = local->eval(x.translated(g));
            if (!v) return std::nullopt;
            sum += *v;
        }
        return sum;
    };
    return w;
}

WeightFunction weight_count(const Coloring& reference) {
    WeightFunction w;
    w.name = "count";
    w.kind = WeightKind::CountingMass;
    w.declared.eta = reference.sigma();
    w.declared.theta = 0.0;
    w.declared.vartheta = 0.0;
    w.declared.J = Region({Elem{}});
    w.eval = [](const Region& K, const HullPoint& x) -> std::optional<double> {
        const Group& g = x.base->group();
        double mass = 0.0;
        for (const auto& e : K.elems()) {
            auto v = x.weight_at(g.inv(e));
            if (!v) return std::nullopt;
            mass += *v;
        }
        return mass;
    };
    return w;
}

namespace {

// Random subregion machinery for the axiom battery. Regions are drawn from
// the inverse window, which is where the built-in weights can evaluate.
struct AxiomSampler {
    const Coloring& c;
    SplitMix64 rng;
    Region domain;
    std::uint64_t counter = 0;

    AxiomSampler(const Coloring& coloring, SplitMix64 generator)
        : c(coloring), rng(generator), domain(coloring.group().inverse(coloring.window())) {}

    double real(double lo, double hi) { return rng.uniform(counter++, lo, hi); }
    std::uint64_t below(std::uint64_t n) { return rng.below(counter++, n); }

    Elem window_element() {
        return c.window().elems()[static_cast<std::size_t>(below(c.window().size()))];
    }

    // Random ball-shaped subregion of the evaluable domain.
    Region region(std::int64_t max_radius) {
        const Elem center = domain.elems()[static_cast<std::size_t>(below(domain.size()))];
        const auto r = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(max_radius) + 1));
        return c.group().word_ball(r, center).set_intersection(domain);
    }
};

} // namespace

AxiomReport test_axioms(const WeightFunction& w, const Coloring& c, std::size_t trials,
                        std::uint64_t seed) {
    AxiomReport report;
    const Group& g = c.group();
    AxiomSampler sampler{c, SplitMix64{seed}};
    const HullPoint base{&c, g.identity()};

    const std::int64_t max_radius =
        g.kind() == GroupKind::ZD && g.dim() == 1
            ? std::min<std::int64_t>(24, (static_cast<std::int64_t>(c.window().size()) - 1) / 4)
            : 3;

    // W1: w(empty, x) = 0, exactly.
    {
        AxiomRow row{"W1", 1, 0.0, 0.0, false};
        auto v = w(Region{}, base);
        row.measured = v ? std::fabs(*v) : std::numeric_limits<double>::infinity();
        row.pass = v.has_value() && *v == 0.0;
        report.rows.push_back(row);
    }

    // W2: |w(L,x) - w(K,x)| <= eta (|L \ K| + |bd_J(L)| + |bd_J(K)|), K subset L.
    {
        AxiomRow row{"W2", 0, 0.0, w.declared.eta, false};
        for (std::size_t t = 0; t < trials; ++t) {
            Region L = sampler.region(max_radius);
            Region K = L.set_intersection(sampler.region(max_radius));
            if (L.empty()) continue;
            auto wl = w(L, base);
            auto wk = w(K, base);
            if (!wl || !wk) continue;
            double denom = static_cast<double>(L.set_difference(K).size());
            if (!w.declared.J.empty()) {
                denom += static_cast<double>(left_boundary(g, w.declared.J, L).size()) +
                         static_cast<double>(left_boundary(g, w.declared.J, K).size());
            }
            const double num = std::fabs(*wl - *wk);
            if (denom == 0.0) {
                if (num > 0.0) row.measured = std::numeric_limits<double>::infinity();
            } else {
                row.measured = std::max(row.measured, num / denom);
            }
            ++row.trials;
        }
        row.pass = row.trials > 0 && row.measured <= row.declared + 1e-12;
        report.rows.push_back(row);
    }

    // W3: w(disjoint union) <= sum w(K_i) + theta * sum |bd_B(K_i)|.
    {
        AxiomRow row{"W3", 0, 0.0, w.declared.theta, false};
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t parts = 2 + sampler.below(3);
            std::vector<Region> pieces;
            Region whole;
            for (std::size_t i = 0; i < parts; ++i) {
                Region piece = sampler.region(max_radius).set_difference(whole);
                if (piece.empty()) continue;
                whole = whole.set_union(piece);
                pieces.push_back(std::move(piece));
            }
            if (pieces.size() < 2) continue;
            auto total = w(whole, base);
            if (!total) continue;
            double sum = 0.0;
            double denom = 0.0;
            bool ok = true;
            for (const auto& piece : pieces) {
                auto v = w(piece, base);
                if (!v) {
                    ok = false;
                    break;
                }
                sum += *v;
                if (!w.declared.B.empty())
                    denom += static_cast<double>(left_boundary(g, w.declared.B, piece).size());
            }
            if (!ok) continue;
            const double excess = *total - sum;
            if (denom == 0.0) {
                if (excess > 1e-12) row.measured = std::numeric_limits<double>::infinity();
                else row.measured = std::max(row.measured, 0.0);
            } else {
                row.measured = std::max(row.measured, std::max(excess, 0.0) / denom);
            }
            ++row.trials;
        }
        row.pass = row.trials > 0 && row.measured <= row.declared + 1e-12;
        report.rows.push_back(row);
    }

    // W4: |w(K,x) - w(K h^{-1}, h.x)| <= vartheta * |bd_I(K)|.
    {
        AxiomRow row{"W4", 0, 0.0, w.declared.vartheta, false};
        for (std::size_t t = 0; t < trials; ++t) {
            Region K = sampler.region(max_radius);
            if (K.empty()) continue;
            const Elem h = sampler.window_element();
            auto a = w(K, base);
            auto b = w(g.translate_right(K, g.inv(h)), base.translated(h));
            if (!a || !b) continue;
            const double num = std::fabs(*a - *b);
            double denom = 0.0;
            if (!w.declared.I.empty())
                denom = static_cast<double>(left_boundary(g, w.declared.I, K).size());
            if (denom == 0.0) {
                if (num > 1e-12) row.measured = std::numeric_limits<double>::infinity();
            } else {
                row.measured = std::max(row.measured, num / denom);
            }
            ++row.trials;
        }
        row.pass = row.trials > 0 && row.measured <= row.declared + 1e-12;
        report.rows.push_back(row);
    }

    // W5 probe: delta-close hull pairs from weight perturbation within
    // delta/2; requires |w(T,Phi) - w(T,Pi)| <= delta * |T| as the epsilon
    // budget (reported as the measured per-volume discrepancy).
    {
        AxiomRow row{"W5", 0, 0.0, 0.0, false};
        const double delta = 0.2 / c.sigma();
        row.declared = delta;
        std::vector<double> iota = c.iota();
        for (auto& v : iota) v += sampler.real(-delta / 2.0, delta / 2.0) * 0.999;
        const Coloring perturbed = c.with_iota(iota);
        const HullPoint other{&perturbed, g.identity()};
        for (std::size_t t = 0; t < trials; ++t) {
            Region T = sampler.region(max_radius);
            if (T.empty()) continue;
            auto a = w(T, base);
            auto b = w(T, other);
            if (!a || !b) continue;
            row.measured =
                std::max(row.measured, std::fabs(*a - *b) / static_cast<double>(T.size()));
            ++row.trials;
        }
        row.pass = row.trials > 0 && row.measured <= row.declared + 1e-12;
        report.rows.push_back(row);
    }

    return report;
}

} // namespace aperiodic

#include "aperiodic/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aperiodic {

namespace {

std::optional<std::pair<std::int64_t, std::int64_t>> as_z_interval(const Group& g,
                                                                   const Region& r) {
    if (g.kind() != GroupKind::ZD || g.dim() != 1 || r.empty()) return std::nullopt;
    const std::int64_t lo = r.elems().front().c[0];
    const std::int64_t hi = r.elems().back().c[0];
    if (static_cast<std::int64_t>(r.size()) != hi - lo + 1) return std::nullopt;
    return std::make_pair(lo, hi);
}

// Z fast path: per-site values phi(u) = contribution of site u to w(T, x)
// with w(T, x) = sum over u in T of phi(u); valid on a contiguous domain.
struct SiteValues {
    std::int64_t lo = 0;
    std::vector<double> prefix; // prefix[i] = sum of phi over [lo, lo+i)
    bool usable = false;
};

SiteValues site_values_z(const WeightFunction& w, const HullPoint& x) {
    SiteValues sv;
    const Group& g = x.base->group();
    if (w.kind == WeightKind::Custom) return sv;
    auto win = as_z_interval(g, x.base->window());
    if (!win) return sv;

    // Reads happen at u^{-1} (letter/count) or u^{-1} s for template cells s;
    // the readable translate domain is an interval computed from the window.
    std::int64_t lo, hi;
    const Elem tr = x.translator;
    const std::int64_t shift = tr.c[0];
    if (w.kind == WeightKind::CountingMass) {
        // u^{-1} in tr.window  <=>  -u in [win.lo + shift, win.hi + shift]
        lo = -(win->second + shift);
        hi = -(win->first + shift);
    } else {
        auto sup = as_z_interval(g, w.local->support);
        if (!sup) return sv;
        // u^{-1} s in tr.window for all s in support.
        lo = -(win->second + shift) + sup->second;
        hi = -(win->first + shift) + sup->first;
        if (lo > hi) return sv;
    }
    sv.lo = lo;
    sv.prefix.assign(static_cast<std::size_t>(hi - lo + 2), 0.0);
    for (std::int64_t u = lo; u <= hi; ++u) {
        double phi;
        if (w.kind == WeightKind::CountingMass) {
            auto v = x.weight_at(elem(-u));
            if (!v) return sv; // should not happen on contiguous windows
            phi = *v;
        } else {
            auto v = w.local->eval(x.translated(elem(u)));
            if (!v) return sv;
            phi = *v;
        }
        sv.prefix[static_cast<std::size_t>(u - lo + 1)] =
            sv.prefix[static_cast<std::size_t>(u - lo)] + phi;
    }
    sv.usable = true;
    return sv;
}

} // namespace

Envelope envelope_sweep(const WeightFunction& w, const Region& T, const HullPoint& x) {
    Envelope env;
    env.sup = -std::numeric_limits<double>::infinity();
    env.inf = std::numeric_limits<double>::infinity();
    if (T.empty()) throw DomainError("envelope_sweep: empty Folner set");
    const Group& g = x.base->group();
    const double volume = static_cast<double>(T.size());

    const auto t_int = as_z_interval(g, T);
    if (t_int) {
        const SiteValues sv = site_values_z(w, x);
        if (sv.usable) {
            const std::int64_t d_lo = sv.lo;
            const std::int64_t d_hi = sv.lo + static_cast<std::int64_t>(sv.prefix.size()) - 2;
            // T g = [t_lo + g, t_hi + g] must sit inside [d_lo, d_hi].
            for (std::int64_t sh = d_lo - t_int->first; sh + t_int->second <= d_hi; ++sh) {
                const std::int64_t a = t_int->first + sh - sv.lo;
                const std::int64_t b = t_int->second + sh - sv.lo + 1;
                const double val = (sv.prefix[static_cast<std::size_t>(b)] -
                                    sv.prefix[static_cast<std::size_t>(a)]) /
                                   volume;
                env.sup = std::max(env.sup, val);
                env.inf = std::min(env.inf, val);
                ++env.translates;
            }
            if (env.translates == 0) throw DomainError("envelope_sweep: no valid translate");
            return env;
        }
    }

    // Generic path: superset of candidates from one anchor cell, evaluation
    // decides validity.
    Region domain = g.inverse(g.translate_left(x.translator, x.base->window()));
    if (w.kind == WeightKind::LocalSum && !w.local->support.empty())
        domain = g.product(Region({w.local->support.elems().front()}), domain);
    const Region candidates = g.product(Region({g.inv(T.elems().front())}), domain);
    for (const auto& sh : candidates.elems()) {
        auto v = w(g.translate_right(T, sh), x);
        if (!v) continue;
        const double val = *v / volume;
        env.sup = std::max(env.sup, val);
        env.inf = std::min(env.inf, val);
        ++env.translates;
    }
    if (env.translates == 0) throw DomainError("envelope_sweep: no valid translate");
    return env;
}

ConvergenceReport convergence_experiment(const WeightFunction& w, const HullPoint& x,
                                         const FolnerSchedule& sched, std::size_t m_max) {
    ConvergenceReport report;
    const std::size_t last = std::min(m_max, sched.length());
    if (last == 0) throw DomainError("convergence_experiment: empty schedule");
    for (std::size_t m = 1; m <= last; ++m) {
        const Envelope env = envelope_sweep(w, sched.set(m), x);
        report.rows.push_back({m, env.sup, env.inf, env.spread(), env.translates});
    }
    const auto& tail = report.rows.back();
    report.i_w = 0.5 * (tail.sup + tail.inf);
    report.error_bar = 0.5 * tail.spread;

    // Absolute slack keeps ulp-level noise in exact-by-construction spreads
    // (e.g. constant colorings under prefix-sum evaluation) from mattering.
    const double slack = 1e-11;
    bool non_increasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        if (report.rows[i].spread > report.rows[i - 1].spread * 1.05 + slack)
            non_increasing = false;
    const double first = report.rows.front().spread;
    report.cauchy = non_increasing && tail.spread <= 0.5 * first + slack;
    return report;
}

double pattern_frequency(const Coloring& c, const Patch& E, const FolnerSchedule& sched,
                         std::size_t m) {
    const Group& g = c.group();
    const Region T_inv = g.inverse(sched.set(m));

    // Lex-least translate of T^{-1} inside the window.
    std::optional<Elem> h0;
    const auto t_int = as_z_interval(g, T_inv);
    const auto w_int = as_z_interval(g, c.window());
    if (t_int && w_int) {
        if (t_int->second - t_int->first <= w_int->second - w_int->first)
            h0 = elem(w_int->first - t_int->first);
    } else {
        Region cands = g.product(c.window(), Region({g.inv(T_inv.elems().front())}));
        for (std::size_t i = 1; i < T_inv.size() && !cands.empty(); ++i)
            cands = cands.set_intersection(
                g.product(c.window(), Region({g.inv(T_inv.elems()[i])})));
        if (!cands.empty()) h0 = cands.elems().front();
    }
    if (!h0) throw DomainError("pattern_frequency: window cannot hold T_m^{-1}");

    const Region site = g.translate_left(*h0, T_inv);
    const Pattern pat = make_pattern(g, E);
    const auto count = delta_occurs(pat, site, c, 0.0).size();
    return static_cast<double>(count) / static_cast<double>(sched.set(m).size());
}

std::vector<DensityRow> banach_density(const Coloring& c, const FolnerSchedule& sched,
                                       std::size_t m_max) {
    std::vector<DensityRow> rows;
    const Group& g = c.group();
    const auto w_int = as_z_interval(g, c.window());

    for (std::size_t m = 1; m <= std::min(m_max, sched.length()); ++m) {
        const Region T_inv = g.inverse(sched.set(m));
        const double volume = static_cast<double>(sched.set(m).size());
        DensityRow row;
        row.m = m;
        row.upper = -std::numeric_limits<double>::infinity();
        row.lower = std::numeric_limits<double>::infinity();

        const auto t_int = as_z_interval(g, T_inv);
        if (t_int && w_int) {
            // Sliding weighted sums over the contiguous window.
            const std::int64_t len = t_int->second - t_int->first + 1;
            const std::int64_t wlen = w_int->second - w_int->first + 1;
            if (len <= wlen) {
                std::vector<double> prefix(static_cast<std::size_t>(wlen) + 1, 0.0);
                for (std::int64_t i = 0; i < wlen; ++i)
                    prefix[static_cast<std::size_t>(i + 1)] =
                        prefix[static_cast<std::size_t>(i)] +
                        *c.weight_at(elem(w_int->first + i));
                for (std::int64_t a = 0; a + len <= wlen; ++a) {
                    const double mass = prefix[static_cast<std::size_t>(a + len)] -
                                        prefix[static_cast<std::size_t>(a)];
                    row.upper = std::max(row.upper, mass / volume);
                    row.lower = std::min(row.lower, mass / volume);
                    ++row.translates;
                }
            }
        } else {
            Region cands = g.product(c.window(), Region({g.inv(T_inv.elems().front())}));
            for (std::size_t i = 1; i < T_inv.size() && !cands.empty(); ++i)
                cands = cands.set_intersection(
                    g.product(c.window(), Region({g.inv(T_inv.elems()[i])})));
            for (const auto& h : cands.elems()) {
                double mass = 0.0;
                bool ok = true;
                for (const auto& t : T_inv.elems()) {
                    auto v = c.weight_at(g.mul(h, t));
                    if (!v) {
                        ok = false;
                        break;
                    }
                    mass += *v;
                }
                if (!ok) continue;
                row.upper = std::max(row.upper, mass / volume);
                row.lower = std::min(row.lower, mass / volume);
                ++row.translates;
            }
        }
        if (row.translates == 0)
            throw DomainError("banach_density: window cannot hold T_m^{-1}");
        rows.push_back(row);
    }
    return rows;
}

} // namespace aperiodic

#include "aperiodic/repetitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "aperiodic/patch.hpp"

namespace aperiodic {

namespace {

// Contiguous Z interval [lo, hi], if the region is one.
std::optional<std::pair<std::int64_t, std::int64_t>> as_z_interval(const Group& g,
                                                                   const Region& r) {
    if (g.kind() != GroupKind::ZD || g.dim() != 1 || r.empty()) return std::nullopt;
    const std::int64_t lo = r.elems().front().c[0];
    const std::int64_t hi = r.elems().back().c[0];
    if (static_cast<std::int64_t>(r.size()) != hi - lo + 1) return std::nullopt;
    return std::make_pair(lo, hi);
}

// All p with p.S inside the window.
Region placements_inside(const Group& g, const Region& S, const Region& window) {
    if (S.empty() || window.empty()) return Region{};
    Region cands = g.product(window, Region({g.inv(S.elems().front())}));
    for (std::size_t i = 1; i < S.size() && !cands.empty(); ++i)
        cands = cands.set_intersection(g.product(window, Region({g.inv(S.elems()[i])})));
    return cands;
}

struct ZFastContext {
    bool usable = false;
    std::int64_t w_lo = 0, w_hi = 0;
    std::vector<int> weight_class; // per window cell, dedup of iota values
};

ZFastContext make_fast_context(const Coloring& c) {
    ZFastContext ctx;
    auto win = as_z_interval(c.group(), c.window());
    if (!win) return ctx;
    ctx.usable = true;
    ctx.w_lo = win->first;
    ctx.w_hi = win->second;
    // Weight classes: symbols with identical iota weights are the same point
    // mass, hence the same patch content.
    const auto& iota = c.iota();
    std::vector<int> cls(iota.size(), 0);
    for (std::size_t i = 0; i < iota.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (iota[j] == iota[i]) {
                cls[i] = cls[j];
                goto assigned;
            }
        }
        cls[i] = static_cast<int>(i);
    assigned:;
    }
    ctx.weight_class.reserve(c.window().size());
    for (const auto& e : c.window().elems())
        ctx.weight_class.push_back(cls[static_cast<std::size_t>(*c.symbol_at(e))]);
    return ctx;
}

// Smallest contiguous placement-range length such that every pattern id
// appears in every range of that length; exactly the in-window quantifier.
std::int64_t required_range_length(const std::vector<std::int32_t>& ids) {
    const auto P = static_cast<std::int64_t>(ids.size());
    std::unordered_map<std::int32_t, std::int64_t> last, need;
    for (std::int64_t p = 0; p < P; ++p) {
        auto it = last.find(ids[p]);
        const std::int64_t gap = it == last.end() ? p + 1 : p - it->second;
        auto& req = need[ids[p]];
        req = std::max(req, gap);
        last[ids[p]] = p;
    }
    std::int64_t out = 0;
    for (auto& [id, q] : last) {
        const std::int64_t tail = (P - 1) - q + 1;
        out = std::max(out, std::max(need[id], tail));
    }
    return out;
}

// Z fast path for delta = 0 on contiguous windows/schedules; returns nullopt
// when not applicable.
std::optional<std::optional<std::size_t>> index_z_fast(const FolnerSchedule& sched,
                                                       std::size_t m, const ZFastContext& ctx) {
    auto Sm = sched.z_interval_of(m);
    if (!Sm) return std::nullopt;
    // S = T_m^{-1} = [-hi, -lo]
    const std::int64_t s_len = Sm->second - Sm->first + 1;
    const std::int64_t W = ctx.w_hi - ctx.w_lo + 1;
    const std::int64_t P = W - s_len + 1;
    if (P < 1) throw DomainError("repetitivity_index: window too small for the m-patterns");

    // Pattern ids of the weight-class words of length s_len, via rolling dedup.
    std::vector<std::int32_t> ids(static_cast<std::size_t>(P));
    {
        std::unordered_map<std::string, std::int32_t> seen;
        std::string key(static_cast<std::size_t>(s_len), '\0');
        for (std::int64_t p = 0; p < P; ++p) {
            for (std::int64_t i = 0; i < s_len; ++i)
                key[static_cast<std::size_t>(i)] =
                    static_cast<char>(ctx.weight_class[static_cast<std::size_t>(p + i)]);
            auto [it, fresh] = seen.emplace(key, static_cast<std::int32_t>(seen.size()));
            ids[static_cast<std::size_t>(p)] = it->second;
        }
    }
    const std::int64_t l_req = required_range_length(ids);

    for (std::size_t n = m; n <= sched.length(); ++n) {
        auto Tn = sched.z_interval_of(n);
        if (!Tn) return std::nullopt; // fall back to the generic path
        const std::int64_t t_len = Tn->second - Tn->first + 1;
        if (t_len > W) return std::optional<std::optional<std::size_t>>{std::optional<std::size_t>{}};
        const std::int64_t l_n = t_len - s_len + 1;
        if (l_n >= l_req) return std::optional<std::optional<std::size_t>>{n};
    }
    return std::optional<std::optional<std::size_t>>{std::optional<std::size_t>{}};
}

std::optional<std::size_t> index_generic(const Coloring& c, const FolnerSchedule& sched,
                                         double delta, std::size_t m) {
    const Group& g = c.group();
    const Region S = g.inverse(sched.set(m));
    const Region placements = placements_inside(g, S, c.window());
    if (placements.empty())
        throw DomainError("repetitivity_index: window too small for the m-patterns");

    // Harvest: pattern id per placement, one representative patch per id.
    std::unordered_map<std::string, std::int32_t> key_to_id;
    std::unordered_map<Elem, std::int32_t, ElemHash> id_at;
    std::vector<Patch> reps;
    for (const auto& p : placements.elems()) {
        Patch patch = patch_extract(c, g.translate_left(p, S));
        patch.anchor = p;
        Pattern pat = make_pattern(g, patch);
        auto [it, fresh] = key_to_id.emplace(pat.key(), static_cast<std::int32_t>(reps.size()));
        if (fresh) reps.push_back(pat.canonical);
        id_at.emplace(p, it->second);
    }
    const auto n_patterns = static_cast<std::int32_t>(reps.size());

    for (std::size_t n = m; n <= sched.length(); ++n) {
        const Region Tn_inv = g.inverse(sched.set(n));
        const Region H = placements_inside(g, Tn_inv, c.window());
        if (H.empty()) return std::nullopt; // larger n only shrinks H
        const Region inner = placements_inside(g, S, Tn_inv); // u with uS inside T_n^{-1}
        bool all_ok = true;
        for (const auto& h : H.elems()) {
            if (delta == 0.0) {
                std::vector<char> seen(static_cast<std::size_t>(n_patterns), 0);
                std::int32_t remaining = n_patterns;
                for (const auto& u : inner.elems()) {
                    auto it = id_at.find(g.mul(h, u));
                    if (it == id_at.end()) continue; // placement escapes the window
                    if (!seen[static_cast<std::size_t>(it->second)]) {
                        seen[static_cast<std::size_t>(it->second)] = 1;
                        if (--remaining == 0) break;
                    }
                }
                if (remaining != 0) {
                    all_ok = false;
                    break;
                }
            } else {
                for (const auto& rep : reps) {
                    bool found = false;
                    for (const auto& u : inner.elems()) {
                        const Elem site_pos = g.mul(h, u);
                        const Region placed = g.translate_left(site_pos, S);
                        if (!placed.is_subset_of(c.window())) continue;
                        Patch site = patch_extract(c, placed);
                        site.anchor = site_pos;
                        Patch rep_anchor = rep;
                        if (delta_similar(g, rep_anchor, site, delta)) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        all_ok = false;
                        break;
                    }
                }
                if (!all_ok) break;
            }
        }
        if (all_ok) return n;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::size_t> repetitivity_index(const Coloring& c, const FolnerSchedule& sched,
                                              double delta, std::size_t m) {
    if (m < 1 || m > sched.length()) throw DomainError("repetitivity_index: m out of range");
    if (delta == 0.0) {
        const ZFastContext ctx = make_fast_context(c);
        if (ctx.usable) {
            if (auto fast = index_z_fast(sched, m, ctx)) return *fast;
        }
    }
    return index_generic(c, sched, delta, m);
}

RepetitivityReport repetitivity_portion(const Coloring& c, const FolnerSchedule& sched,
                                        double delta, std::size_t m_max) {
    RepetitivityReport report;
    report.delta = delta;
    report.window_size = c.window().size();
    double zeta = std::numeric_limits<double>::infinity();
    bool any_certified = false;
    bool any_uncertified = false;
    for (std::size_t m = 1; m <= std::min(m_max, sched.length()); ++m) {
        RepetitivityEntry entry;
        entry.m = m;
        entry.index = repetitivity_index(c, sched, delta, m);
        entry.certified = entry.index.has_value();
        if (entry.certified) {
            entry.ratio = static_cast<double>(sched.measure(m)) /
                          static_cast<double>(sched.measure(*entry.index));
            zeta = std::min(zeta, entry.ratio);
            any_certified = true;
        } else {
            any_uncertified = true;
        }
        report.entries.push_back(entry);
    }
    report.zeta = any_certified ? zeta : 0.0;
    report.tempered_evidence =
        any_certified && !any_uncertified && report.zeta >= kTemperedRatioThreshold;
    return report;
}

LinearFit linear_repetitivity_fit(const Coloring& c, double delta, std::int64_t r_max) {
    if (r_max < 1) throw DomainError("linear_repetitivity_fit: r_max must be positive");
    LinearFit fit;
    fit.delta = delta;
    fit.r_lo = 1;
    fit.r_hi = r_max;

    // Schedule of word balls long enough for the index search to resolve;
    // lazy materialization keeps window-length schedules on Z affordable.
    std::int64_t len = 8 * r_max + 16;
    if (c.group().kind() == GroupKind::ZD && c.group().dim() == 1)
        len = std::max(len, (static_cast<std::int64_t>(c.window().size()) - 1) / 2);
    std::vector<std::int64_t> radii;
    for (std::int64_t r = 1; r <= std::max(len, r_max); ++r) radii.push_back(r);
    const FolnerSchedule sched = FolnerSchedule::word_balls(c.group(), radii);

    double lower_max = 0.0, upper_max = 0.0;
    bool saturated = false;
    for (std::int64_t r = 1; r <= r_max; ++r) {
        LinearFitEntry entry;
        entry.r = r;
        entry.index = repetitivity_index(c, sched, delta, static_cast<std::size_t>(r));
        entry.certified = entry.index.has_value();
        if (entry.certified) {
            entry.ratio = static_cast<double>(*entry.index) / static_cast<double>(r);
            fit.c_estimate = std::max(fit.c_estimate, entry.ratio);
            double& half = r <= r_max / 2 ? lower_max : upper_max;
            half = std::max(half, entry.ratio);
            // A fit that needs half the window has no head-room left; such
            // certificates are forced by the window edge, not by linearity.
            if (2 * sched.measure(*entry.index) >= c.window().size()) saturated = true;
        }
        fit.entries.push_back(entry);
    }
    bool all_certified = true;
    for (const auto& e : fit.entries)
        if (!e.certified) all_certified = false;
    fit.c_bounded = all_certified && !saturated && lower_max > 0.0 &&
                    upper_max <= kBoundedGrowthFactor * lower_max;
    return fit;
}

TempLrCrossCheck temp_lr_crosscheck(const Coloring& c, double delta, std::size_t m_max) {
    TempLrCrossCheck out;
    std::vector<std::int64_t> radii;
    for (std::int64_t r = 1; r <= static_cast<std::int64_t>(m_max) * 8 + 16; ++r)
        radii.push_back(r);
    if (c.group().kind() == GroupKind::ZD && c.group().dim() == 1) {
        const auto max_r = (static_cast<std::int64_t>(c.window().size()) - 1) / 2;
        while (!radii.empty() && radii.back() > max_r) radii.pop_back();
    }
    const FolnerSchedule sched = FolnerSchedule::word_balls(c.group(), radii);
    out.portion = repetitivity_portion(c, sched, delta, m_max);
    out.fit = linear_repetitivity_fit(c, delta, static_cast<std::int64_t>(m_max));
    out.zeta_positive = out.portion.zeta >= kTemperedRatioThreshold;
    out.consistent = out.zeta_positive == out.fit.c_bounded;
    return out;
}

} // namespace aperiodic

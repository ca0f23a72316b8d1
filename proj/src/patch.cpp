#include "aperiodic/patch.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>
#include <unordered_set>

namespace aperiodic {

double Patch::total_mass() const {
    double m = 0.0;
    for (const auto& [e, w] : points) m += w;
    return m;
}

std::optional<double> Patch::weight_at(const Elem& e) const {
    auto it = std::lower_bound(points.begin(), points.end(), e,
                               [](const auto& p, const Elem& x) { return p.first < x; });
    if (it == points.end() || !(it->first == e)) return std::nullopt;
    return it->second;
}

Patch translate_patch(const Group& g, const Elem& x, const Patch& p) {
    Patch out;
    out.support = g.translate_left(x, p.support);
    out.points.reserve(p.points.size());
    for (const auto& [e, w] : p.points) out.points.emplace_back(g.mul(x, e), w);
    std::sort(out.points.begin(), out.points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.anchor = g.mul(x, p.anchor);
    return out;
}

std::string Pattern::key() const {
    std::string k;
    k.reserve(canonical.support.size() * 24 + canonical.points.size() * 32);
    auto push_i64 = [&k](std::int64_t v) {
        char buf[sizeof v];
        std::memcpy(buf, &v, sizeof v);
        k.append(buf, sizeof v);
    };
    auto push_f64 = [&k](double v) {
        char buf[sizeof v];
        std::memcpy(buf, &v, sizeof v);
        k.append(buf, sizeof v);
    };
    for (const auto& e : canonical.support.elems())
        for (auto c : e.c) push_i64(c);
    k.push_back('|');
    for (const auto& [e, w] : canonical.points) {
        for (auto c : e.c) push_i64(c);
        push_f64(w);
    }
    return k;
}

Pattern make_pattern(const Group& g, const Patch& p) {
    return Pattern{translate_patch(g, g.inv(p.anchor), p)};
}

Patch patch_extract(const Coloring& c, const Region& S) {
    Patch p;
    p.support = S;
    p.points.reserve(S.size());
    std::vector<Elem> missing;
    for (const auto& e : S.elems()) {
        auto w = c.weight_at(e);
        if (!w) {
            missing.push_back(e);
            continue;
        }
        p.points.emplace_back(e, *w);
    }
    if (!missing.empty()) {
        std::string msg = "patch_extract: support escapes window at";
        std::size_t shown = 0;
        for (const auto& e : missing) {
            msg += " (" + std::to_string(e.c[0]) + "," + std::to_string(e.c[1]) + "," +
                   std::to_string(e.c[2]) + ")";
            if (++shown == 8) {
                msg += " ...";
                break;
            }
        }
        throw DomainError(msg);
    }
    return p;
}

Patch patch_extract(const HullPoint& x, const Region& S, const Elem& anchor) {
    Patch p;
    p.support = S;
    p.anchor = anchor;
    p.points.reserve(S.size());
    for (const auto& e : S.elems()) {
        auto w = x.weight_at(e);
        if (!w) throw DomainError("patch_extract: hull point not readable on the support");
        p.points.emplace_back(e, *w);
    }
    return p;
}

double patch_distance(const Group& g, const Patch& p_in, const Patch& q_in) {
    const Patch p = translate_patch(g, g.inv(p_in.anchor), p_in);
    const Patch q = translate_patch(g, g.inv(q_in.anchor), q_in);
    if (!(p.support == q.support))
        throw DomainError("patch_distance: supports differ after anchor alignment");

    // Evaluation points: support elements carrying a point of either patch.
    std::vector<Elem> eval;
    {
        std::set<Elem> s;
        for (const auto& [e, w] : p.points) s.insert(e);
        for (const auto& [e, w] : q.points) s.insert(e);
        eval.assign(s.begin(), s.end());
    }
    if (eval.empty()) return 0.0;

    const double mass = p.total_mass() + q.total_mass();
    const auto k_max = static_cast<std::int64_t>(std::ceil(mass)) + 1;

    // Signed point masses mu - nu, bucketed per evaluation point by word
    // distance; g_k at y is then |cumulative sum up to distance k|.
    std::vector<std::vector<double>> bucket(eval.size(),
                                            std::vector<double>(static_cast<std::size_t>(k_max) + 2, 0.0));
    auto add_points = [&](const std::vector<std::pair<Elem, double>>& pts, double sign) {
        for (const auto& [x, w] : pts) {
            for (std::size_t yi = 0; yi < eval.size(); ++yi) {
                const std::int64_t d = g.word_distance(eval[yi], x);
                if (d <= k_max + 1) bucket[yi][static_cast<std::size_t>(std::min(d, k_max + 1))] += sign * w;
            }
        }
    };
    add_points(p.points, 1.0);
    add_points(q.points, -1.0);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> cums(eval.size(), 0.0);
    for (std::int64_t k = 0; k <= k_max; ++k) {
        double gk = 0.0;
        for (std::size_t yi = 0; yi < eval.size(); ++yi) {
            cums[yi] += bucket[yi][static_cast<std::size_t>(k)];
            gk = std::max(gk, std::fabs(cums[yi]));
        }
        if (gk < static_cast<double>(k + 1))
            best = std::min(best, std::max(static_cast<double>(k), gk));
    }
    return best;
}

namespace {

std::vector<Elem> support_translators(const Group& g, const Region& from, const Region& to) {
    std::vector<Elem> out;
    if (from.size() != to.size() || from.empty()) return out;
    const Elem t0 = to.elems().front();
    std::unordered_set<Elem, ElemHash> seen;
    for (const auto& s : from.elems()) {
        const Elem cand = g.mul(t0, g.inv(s));
        if (!seen.insert(cand).second) continue;
        if (g.translate_left(cand, from) == to) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::optional<Elem> delta_similar(const Group& g, const Patch& p, const Patch& q, double delta) {
    const auto translators = support_translators(g, p.support, q.support);
    if (translators.empty())
        throw DomainError("delta_similar: supports are not translates of each other");
    for (const auto& x : translators) {
        Patch moved = translate_patch(g, x, p);
        moved.anchor = q.anchor; // align anchors so the distance sees equal supports
        moved.support = q.support;
        if (delta == 0.0) {
            if (moved.points == q.points) return x;
        } else if (patch_distance(g, moved, q) < delta) {
            return x;
        }
    }
    return std::nullopt;
}

std::vector<Elem> delta_occurs(const Pattern& pat, const Region& T, const Coloring& c,
                               double delta) {
    const Group& g = c.group();
    const Region& S = pat.canonical.support;
    std::vector<Elem> witnesses;
    if (S.empty() || T.empty()) return witnesses;
    if (!T.is_subset_of(c.window()))
        throw DomainError("delta_occurs: region escapes the coloring window");

    // Candidate placements: intersection of T s^{-1} over the support.
    Region candidates = g.product(T, Region({g.inv(S.elems().front())}));
    for (std::size_t i = 1; i < S.size() && !candidates.empty(); ++i) {
        candidates =
            candidates.set_intersection(g.product(T, Region({g.inv(S.elems()[i])})));
    }

    for (const auto& x : candidates.elems()) {
        const Region placed = g.translate_left(x, S);
        Patch site = patch_extract(c, placed);
        site.anchor = x;
        bool hit = false;
        if (delta == 0.0) {
            Patch moved = translate_patch(g, x, pat.canonical);
            if (moved.points == site.points) {
                hit = true;
            } else {
                // Other support symmetries, if any.
                for (const auto& y : support_translators(g, S, placed)) {
                    if (y == x) continue;
                    if (translate_patch(g, y, pat.canonical).points == site.points) {
                        hit = true;
                        break;
                    }
                }
            }
        } else {
            hit = delta_similar(g, pat.canonical, site, delta).has_value();
        }
        if (hit) witnesses.push_back(x);
    }
    return witnesses;
}

std::vector<Pattern> flc_census(const Coloring& c, std::int64_t r) {
    const Group& g = c.group();
    const Region shape = g.word_ball(r);
    std::vector<Pattern> out;
    std::unordered_set<std::string> seen;
    for (const auto& h : c.window().elems()) {
        const Region placed = g.translate_left(h, shape);
        if (!placed.is_subset_of(c.window())) continue;
        Patch p = patch_extract(c, placed);
        p.anchor = h;
        Pattern pat = make_pattern(g, p);
        if (seen.insert(pat.key()).second) out.push_back(std::move(pat));
    }
    return out;
}

} // namespace aperiodic

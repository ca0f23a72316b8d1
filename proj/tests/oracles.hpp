// Independent brute-force oracles used by the unit and acceptance suites.
// Everything here recomputes expected values from definitions, staying off
// the library's optimized code paths.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aperiodic/group.hpp"
#include "aperiodic/patch.hpp"

namespace oracles {

using aperiodic::Elem;
using aperiodic::Group;
using aperiodic::Patch;
using aperiodic::Region;

/// Delta-grid scan of the patch-discrepancy definition: walk delta upward in
/// grid steps and return the first value where every evaluation point passes
/// the strict open-ball comparison.
inline double grid_scan_patch_distance(const Group& g, const Patch& p, const Patch& q,
                                       double grid = 1e-4) {
    std::vector<Elem> eval;
    for (const auto& [e, w] : p.points) eval.push_back(e);
    for (const auto& [e, w] : q.points) eval.push_back(e);
    std::sort(eval.begin(), eval.end());
    eval.erase(std::unique(eval.begin(), eval.end()), eval.end());
    if (eval.empty()) return 0.0;

    double mass = 0.0;
    for (const auto& [e, w] : p.points) mass += w;
    for (const auto& [e, w] : q.points) mass += w;
    const auto r_max = static_cast<std::int64_t>(std::ceil(mass)) + 2;

    // Cumulative signed masses per evaluation point by integer radius.
    std::vector<std::vector<double>> cum(eval.size(),
                                         std::vector<double>(static_cast<std::size_t>(r_max) + 1, 0.0));
    for (std::size_t yi = 0; yi < eval.size(); ++yi) {
        for (const auto& [x, w] : p.points) {
            const auto d = g.word_distance(eval[yi], x);
            for (std::int64_t r = std::min(d, r_max); r <= r_max; ++r)
                cum[yi][static_cast<std::size_t>(r)] += w;
        }
        for (const auto& [x, w] : q.points) {
            const auto d = g.word_distance(eval[yi], x);
            for (std::int64_t r = std::min(d, r_max); r <= r_max; ++r)
                cum[yi][static_cast<std::size_t>(r)] -= w;
        }
    }

    for (std::int64_t step = 1;; ++step) {
        const double delta = static_cast<double>(step) * grid;
        // Open ball of radius delta = closed ball of integer radius:
        const double ceilv = std::ceil(delta);
        const auto radius = static_cast<std::int64_t>(
            ceilv == delta ? static_cast<std::int64_t>(delta) - 1 : static_cast<std::int64_t>(std::floor(delta)));
        const auto r = static_cast<std::size_t>(std::min(radius, r_max));
        bool ok = true;
        for (std::size_t yi = 0; yi < eval.size(); ++yi) {
            if (!(std::fabs(cum[yi][r]) < delta)) {
                ok = false;
                break;
            }
        }
        if (ok) return delta;
        if (delta > mass + 2.0) return delta; // unreachable for valid patches
    }
}

/// Fibonacci word prefix as a string of 'a'/'b'.
inline std::string fibonacci_string(std::size_t length) {
    std::string w = "a";
    while (w.size() < length) {
        std::string next;
        next.reserve(2 * w.size());
        for (char ch : w) next += (ch == 'a') ? "ab" : "a";
        w = std::move(next);
    }
    w.resize(length);
    return w;
}

inline std::size_t count_occurrences(const std::string& text, const std::string& word) {
    if (word.empty() || word.size() > text.size()) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + word.size() <= text.size(); ++i)
        if (text.compare(i, word.size(), word) == 0) ++count;
    return count;
}

/// Naive repetitivity-index oracle on a string with an interval-length
/// schedule: the smallest schedule entry t with every factor of length s
/// occurring in every length-t window of the text, or -1 if the text runs
/// out first.
inline std::int64_t string_repetitivity_index(const std::string& text, std::size_t s,
                                              const std::vector<std::size_t>& t_schedule,
                                              std::size_t start_index) {
    std::map<std::string, char> factors;
    for (std::size_t i = 0; i + s <= text.size(); ++i) factors[text.substr(i, s)] = 1;
    for (std::size_t ni = start_index; ni < t_schedule.size(); ++ni) {
        const std::size_t t = t_schedule[ni];
        if (t > text.size()) return -1;
        bool all_windows_ok = true;
        for (std::size_t h = 0; h + t <= text.size() && all_windows_ok; ++h) {
            const std::string window = text.substr(h, t);
            for (const auto& [f, unused] : factors) {
                if (window.find(f) == std::string::npos) {
                    all_windows_ok = false;
                    break;
                }
            }
        }
        if (all_windows_ok) return static_cast<std::int64_t>(ni) + 1; // 1-based
    }
    return -1;
}

/// Eigenvalue count below E via tridiagonalization plus a Sturm-sequence
/// pivot count (Sylvester inertia route; no eigenvalue extraction).
inline int inertia_count_below(const Eigen::MatrixXd& A, double E) {
    Eigen::Tridiagonalization<Eigen::MatrixXd> tri(A);
    const Eigen::VectorXd d = tri.diagonal();
    const Eigen::VectorXd e = tri.subDiagonal();
    const auto n = d.size();
    int count = 0;
    double q = d[0] - E;
    if (q < 0.0) ++count;
    for (Eigen::Index i = 1; i < n; ++i) {
        double denom = q;
        if (denom == 0.0) denom = 1e-300;
        q = (d[i] - E) - e[i - 1] * e[i - 1] / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

/// Path-graph spectrum: eigenvalues 2 cos(k pi / (n+1)), k = 1..n.
inline std::vector<double> path_graph_spectrum(std::size_t n) {
    std::vector<double> ev;
    ev.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        ev.push_back(2.0 * std::cos(static_cast<double>(k) * M_PI / (static_cast<double>(n) + 1.0)));
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace oracles

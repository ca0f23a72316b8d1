#include "aperiodic/heisenberg.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "aperiodic/errors.hpp"

namespace aperiodic {

CHPoint heis_multiply(const CHPoint& p, const CHPoint& q) {
    // Im(conj(z) w) = zx*wy - zy*wx
    const double im = p.zx * q.zy - p.zy * q.zx;
    return CHPoint{p.zx + q.zx, p.zy + q.zy, p.t + q.t + 0.5 * im};
}

CHPoint heis_inverse(const CHPoint& p) { return CHPoint{-p.zx, -p.zy, -p.t}; }

double ck_norm(const CHPoint& p) {
    const double z2 = p.zx * p.zx + p.zy * p.zy;
    return std::pow(z2 * z2 + 16.0 * p.t * p.t, 0.25);
}

double exact_ball_volume(double radius) {
    if (radius < 0.0) throw DomainError("exact_ball_volume: negative radius");
    const double r2 = radius * radius;
    return M_PI * M_PI / 8.0 * r2 * r2;
}

double growth_ratio(double radius, double increment) {
    if (radius <= 0.0) throw DomainError("growth_ratio: radius must be positive");
    if (increment < 0.0) throw DomainError("growth_ratio: negative increment");
    const double q = (radius + increment) / radius;
    return q * q * q * q;
}

McVolumeResult mc_ball_volume(double radius, std::uint64_t samples, std::uint64_t seed,
                              int threads) {
    McVolumeResult res;
    res.radius = radius;
    res.samples = samples;
    res.rng_algorithm = SplitMix64::algorithm;
    if (radius == 0.0) return res;
    if (radius < 0.0) throw DomainError("mc_ball_volume: negative radius");
    if (samples < 1000) throw DomainError("mc_ball_volume: need at least 1000 samples");

    const SplitMix64 rng{seed};
    const double r2 = radius * radius;
    const double r4 = r2 * r2;
    const double box_volume = 2.0 * r4; // (2R)^2 * (R^2/2)

    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const double zx = rng.uniform(3 * i, -radius, radius);
            const double zy = rng.uniform(3 * i + 1, -radius, radius);
            const double t = rng.uniform(3 * i + 2, -r2 / 4.0, r2 / 4.0);
            const double z2 = zx * zx + zy * zy;
            if (z2 * z2 + 16.0 * t * t <= r4) ++hits;
        }
        return hits;
    };

    std::uint64_t accepted = 0;
    if (threads <= 1) {
        accepted = count_range(0, samples);
    } else {
        const auto n = static_cast<std::uint64_t>(threads);
        std::vector<std::uint64_t> partial(n, 0);
        std::vector<std::thread> workers;
        for (std::uint64_t w = 0; w < n; ++w) {
            const std::uint64_t begin = samples * w / n;
            const std::uint64_t end = samples * (w + 1) / n;
            workers.emplace_back([&, w, begin, end] { partial[w] = count_range(begin, end); });
        }
        for (auto& t : workers) t.join();
        for (auto p : partial) accepted += p;
    }

    res.accepted = accepted;
    const double p = static_cast<double>(accepted) / static_cast<double>(samples);
    res.estimate = box_volume * p;
    res.standard_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return res;
}

} // namespace aperiodic

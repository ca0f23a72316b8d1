#pragma once

#include <cstdint>
#include <string>

#include "aperiodic/rng.hpp"

namespace aperiodic {

/// Point of the continuous 3-dimensional Heisenberg group C x R.
struct CHPoint {
    double zx = 0.0;
    double zy = 0.0;
    double t = 0.0;
};

/// Group law (z,t)(w,s) = (z + w, t + s + Im(conj(z) w) / 2).
CHPoint heis_multiply(const CHPoint& p, const CHPoint& q);

/// (z,t)^{-1} = (-z, -t).
CHPoint heis_inverse(const CHPoint& p);

/// Cygan-Koranyi norm (|z|^4 + 16 t^2)^{1/4}.
double ck_norm(const CHPoint& p);

/// Haar (= Lebesgue) volume of the Cygan-Koranyi ball: pi^2/8 * R^4.
double exact_ball_volume(double radius);

/// Volume ratio m(B_{R+r}) / m(B_R) = ((R+r)/R)^4, the exact-growth witness.
double growth_ratio(double radius, double increment);

struct McVolumeResult {
    double radius = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t accepted = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
    std::string rng_algorithm;
};

/// Rejection sampling over the bounding box [-R,R]^2 x [-R^2/4, R^2/4].
/// Deterministic given the seed and independent of the worker partition
/// (counter-based RNG keyed by sample index). Requires samples >= 1000
/// unless radius == 0, which degenerately returns 0.
McVolumeResult mc_ball_volume(double radius, std::uint64_t samples, std::uint64_t seed,
                              int threads = 1);

} // namespace aperiodic

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "aperiodic/errors.hpp"
#include "aperiodic/heisenberg.hpp"
#include "aperiodic/rng.hpp"

using namespace aperiodic;

namespace {

CHPoint random_point(const SplitMix64& rng, std::uint64_t& ctr, double span) {
    return CHPoint{rng.uniform(ctr++, -span, span), rng.uniform(ctr++, -span, span),
                   rng.uniform(ctr++, -span, span)};
}

} // namespace

TEST_CASE("heisenberg multiplication follows the group law") {
    const CHPoint p{0.0, 1.0, 0.0}; // z = i
    const CHPoint q{1.0, 0.0, 0.0}; // z = 1
    const CHPoint r = heis_multiply(p, q);
    CHECK(r.zx == doctest::Approx(1.0));
    CHECK(r.zy == doctest::Approx(1.0));
    CHECK(r.t == doctest::Approx(-0.5)); // Im(conj(i) * 1) = -1

    const CHPoint s = heis_multiply(CHPoint{1, 0, 0}, CHPoint{1, 0, 0});
    CHECK(s.zx == doctest::Approx(2.0));
    CHECK(s.t == doctest::Approx(0.0));

    const SplitMix64 rng{2};
    std::uint64_t ctr = 0;
    for (int i = 0; i < 1000; ++i) {
        const CHPoint a = random_point(rng, ctr, 5.0);
        const CHPoint b = heis_multiply(a, heis_inverse(a));
        CHECK(std::fabs(b.zx) < 1e-12);
        CHECK(std::fabs(b.zy) < 1e-12);
        CHECK(std::fabs(b.t) < 1e-12);
    }
}

TEST_CASE("cygan-koranyi norm values and properties") {
    CHECK(ck_norm(CHPoint{}) == 0.0);
    CHECK(ck_norm(CHPoint{1, 0, 0}) == doctest::Approx(1.0));
    CHECK(ck_norm(CHPoint{0, 0, 1}) == doctest::Approx(2.0)); // 16^(1/4)

    const SplitMix64 rng{17};
    std::uint64_t ctr = 0;
    for (int i = 0; i < 100000; ++i) {
        const CHPoint p = random_point(rng, ctr, 3.0);
        const CHPoint q = random_point(rng, ctr, 3.0);
        CHECK(ck_norm(heis_multiply(p, q)) <= ck_norm(p) + ck_norm(q) + 1e-12);
        CHECK(ck_norm(heis_inverse(p)) == doctest::Approx(ck_norm(p)));
    }
}

TEST_CASE("exact ball volume") {
    CHECK(exact_ball_volume(0.0) == 0.0);
    CHECK(exact_ball_volume(1.0) == doctest::Approx(M_PI * M_PI / 8.0));
    CHECK(exact_ball_volume(2.0) == doctest::Approx(2.0 * M_PI * M_PI));
    CHECK(exact_ball_volume(1e-6) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("growth ratio witnesses exact polynomial growth") {
    CHECK(growth_ratio(5.0, 0.0) == doctest::Approx(1.0));
    CHECK(growth_ratio(10.0, 1.0) == doctest::Approx(1.4641));
    CHECK(std::fabs(growth_ratio(1000.0, 1.0) - 1.0) < 0.005);
    // Monotone decrease toward 1 in the radius for fixed increment.
    double prev = growth_ratio(1.0, 1.0);
    for (double r = 2.0; r <= 64.0; r *= 2.0) {
        const double cur = growth_ratio(r, 1.0);
        CHECK(cur < prev);
        CHECK(cur > 1.0);
        prev = cur;
    }
}

TEST_CASE("monte carlo volume matches the closed form") {
    const auto res = mc_ball_volume(1.0, 200000, 42);
    const double exact = exact_ball_volume(1.0);
    CHECK(std::fabs(res.estimate - exact) < 4.0 * res.standard_error + 1e-9);
    CHECK(res.rng_algorithm == std::string("splitmix64-counter"));

    // Determinism and thread-count independence.
    const auto again = mc_ball_volume(1.0, 200000, 42);
    CHECK(again.accepted == res.accepted);
    const auto threaded = mc_ball_volume(1.0, 200000, 42, 4);
    CHECK(threaded.accepted == res.accepted);

    CHECK(mc_ball_volume(0.0, 10, 1).estimate == 0.0);
    CHECK_THROWS_AS(mc_ball_volume(1.0, 10, 1), DomainError);
}

TEST_CASE("monte carlo standard error scales like n^{-1/2}") {
    double prev_se = -1.0;
    for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL}) {
        const auto res = mc_ball_volume(1.0, n, 9);
        if (prev_se > 0.0) {
            const double ratio = prev_se / res.standard_error;
            CHECK(ratio > std::sqrt(10.0) / 2.0);
            CHECK(ratio < std::sqrt(10.0) * 2.0);
        }
        prev_se = res.standard_error;
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include "aperiodic/group.hpp"
#include "aperiodic/rng.hpp"

using namespace aperiodic;

namespace {

Region z_interval(std::int64_t lo, std::int64_t hi) {
    std::vector<Elem> elems;
    for (std::int64_t i = lo; i <= hi; ++i) elems.push_back(elem(i));
    return Region(std::move(elems));
}

// Independent BFS ball oracle: plain frontier expansion over the generator
// set, no shared code with Group::word_ball's closed forms.
std::size_t bfs_ball_size(const Group& g, std::int64_t n) {
    std::unordered_set<Elem, ElemHash> seen{g.identity()};
    std::vector<Elem> frontier{g.identity()};
    for (std::int64_t depth = 0; depth < n; ++depth) {
        std::vector<Elem> next;
        for (const auto& e : frontier)
            for (const auto& s : g.generators()) {
                Elem f = g.mul(e, s);
                if (seen.insert(f).second) next.push_back(f);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

Elem random_elem(const SplitMix64& rng, std::uint64_t& ctr, std::int64_t span) {
    const auto pick = [&] {
        return static_cast<std::int64_t>(rng.below(ctr++, static_cast<std::uint64_t>(2 * span + 1))) - span;
    };
    return elem(pick(), pick(), pick());
}

} // namespace

TEST_CASE("heisenberg group axioms hold for the discrete model") {
    const Group h = Group::heis3z();
    const SplitMix64 rng{7};
    std::uint64_t ctr = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Elem a = random_elem(rng, ctr, 6);
        const Elem b = random_elem(rng, ctr, 6);
        const Elem c = random_elem(rng, ctr, 6);
        CHECK(h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c)));
        CHECK(h.mul(a, h.identity()) == a);
        CHECK(h.mul(h.identity(), a) == a);
        CHECK(h.mul(a, h.inv(a)) == h.identity());
        CHECK(h.mul(h.inv(a), a) == h.identity());
    }
    // Non-commutativity witness: a b != b a.
    CHECK(h.mul(elem(1, 0, 0), elem(0, 1, 0)) != h.mul(elem(0, 1, 0), elem(1, 0, 0)));
}

TEST_CASE("generator sets are symmetric and exclude the identity") {
    for (const Group& g : {Group::zd(1), Group::zd(2), Group::heis3z()}) {
        for (const auto& s : g.generators()) {
            CHECK(s != g.identity());
            CHECK(std::find(g.generators().begin(), g.generators().end(), g.inv(s)) !=
                  g.generators().end());
        }
    }
}

TEST_CASE("word balls: Z interval, Z2 diamond, H3 BFS oracle") {
    const Group z = Group::zd(1);
    CHECK(z.word_ball(2) == z_interval(-2, 2));
    CHECK(z.word_ball(2).size() == 5);

    const Group z2 = Group::zd(2);
    CHECK(z2.word_ball(1).size() == 5); // diamond

    const Group h = Group::heis3z();
    CHECK(h.word_ball(0).size() == 1);
    CHECK(h.word_ball(1).size() == 5);
    for (std::int64_t n : {2, 3, 4, 6}) {
        CHECK(h.word_ball(n).size() == bfs_ball_size(h, n));
    }
    // Strict growth in the radius.
    for (std::int64_t n = 0; n < 6; ++n)
        CHECK(h.word_ball(n).size() < h.word_ball(n + 1).size());
}

TEST_CASE("word ball respects the element cap") {
    const Group h = Group::heis3z();
    CHECK_THROWS_AS(h.word_ball(50, h.identity(), 1000), ResourceError);
}

TEST_CASE("left boundary on Z matches the enumerated example") {
    const Group z = Group::zd(1);
    const Region T = z_interval(0, 9);
    const Region K = z_interval(-1, 1);
    CHECK(left_boundary(z, K, T) == Region({elem(-1), elem(0), elem(9), elem(10)}));
    CHECK(right_boundary(z, K, T) == Region({elem(-1), elem(0), elem(9), elem(10)}));

    CHECK(left_boundary(z, K, Region{}).empty());
    CHECK(left_boundary(z, Region({elem(0)}), T).empty());
    CHECK(right_boundary(z, Region({elem(0)}), T).empty());
}

TEST_CASE("left boundary agrees with the Minkowski-identity route") {
    // Definition scan vs K^{-1}T minus the core of g with Kg inside T.
    const SplitMix64 rng{11};
    std::uint64_t ctr = 0;
    for (const Group& g : {Group::zd(1), Group::zd(2)}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Elem> telems, kelems;
            const std::size_t tn = 4 + rng.below(ctr++, 20);
            const std::size_t kn = 1 + rng.below(ctr++, 4);
            for (std::size_t i = 0; i < tn; ++i) telems.push_back(random_elem(rng, ctr, 6));
            for (std::size_t i = 0; i < kn; ++i) kelems.push_back(random_elem(rng, ctr, 2));
            if (g.dim() == 1)
                for (auto* v : {&telems, &kelems})
                    for (auto& e : *v) e = elem(e.c[0]);
            else
                for (auto* v : {&telems, &kelems})
                    for (auto& e : *v) e = elem(e.c[0], e.c[1]);
            const Region T(telems), K(kelems);
            if (T.empty() || K.empty()) continue;

            Region cand = g.product(g.inverse(K), T);
            Region core = cand;
            for (const auto& k : K.elems()) {
                std::vector<Elem> shifted;
                for (const auto& t : T.elems()) shifted.push_back(g.mul(g.inv(k), t));
                core = core.set_intersection(Region(std::move(shifted)));
            }
            CHECK(left_boundary(g, K, T) == cand.set_difference(core));
        }
    }
}

TEST_CASE("boundary translation invariance under right translates") {
    const Group z2 = Group::zd(2);
    const Region T = z2.word_ball(4);
    const Region K = z2.word_ball(1);
    const SplitMix64 rng{3};
    std::uint64_t ctr = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const Elem g = random_elem(rng, ctr, 10);
        const Elem g2 = elem(g.c[0], g.c[1]);
        CHECK(left_boundary(z2, K, z2.translate_right(T, g2)).size() ==
              left_boundary(z2, K, T).size());
    }
}

TEST_CASE("right boundary clauses on random instances") {
    const Group z2 = Group::zd(2);
    const SplitMix64 rng{5};
    std::uint64_t ctr = 0;
    auto random_region = [&](int count, std::int64_t span) {
        std::vector<Elem> elems;
        for (int i = 0; i < count; ++i) {
            const Elem e = random_elem(rng, ctr, span);
            elems.push_back(elem(e.c[0], e.c[1]));
        }
        return Region(std::move(elems));
    };
    for (int trial = 0; trial < 15; ++trial) {
        const Region S = random_region(20, 5);
        const Region T = random_region(25, 5);
        const Region K = z2.word_ball(1);
        const Region L = z2.word_ball(2);

        // (a) boundary of a union is covered by the separate boundaries.
        CHECK(right_boundary(z2, K, S.set_union(T))
                  .is_subset_of(right_boundary(z2, K, S).set_union(right_boundary(z2, K, T))));
        // (b) same for set differences.
        CHECK(right_boundary(z2, K, S.set_difference(T))
                  .is_subset_of(right_boundary(z2, K, S).set_union(right_boundary(z2, K, T))));
        // (c) monotone in the probe set.
        CHECK(right_boundary(z2, K, T).is_subset_of(right_boundary(z2, L, T)));
        // (d) composition lands in the product boundary.
        const Region inner = right_boundary(z2, L, T);
        if (!inner.empty())
            CHECK(right_boundary(z2, K, inner)
                      .is_subset_of(right_boundary(z2, z2.product(K, L), T)));
        // (e) with e in K, xK stays inside T union its K^{-1}-boundary.
        for (const auto& x : T.elems()) {
            const Region star = z2.translate_left(x, K);
            CHECK(star.is_subset_of(T.set_union(right_boundary(z2, z2.inverse(K), T))));
        }
    }
}

TEST_CASE("folner defect on Z balls is 4/(2n+1)") {
    const Group z = Group::zd(1);
    const Region K = z_interval(-1, 1);
    for (std::int64_t n : {1, 2, 5, 10, 40}) {
        CHECK(folner_defect(z, K, z.word_ball(n), BoundarySide::Left) ==
              doctest::Approx(4.0 / (2.0 * static_cast<double>(n) + 1.0)));
    }
    CHECK(folner_defect(z, Region({elem(0)}), z.word_ball(5), BoundarySide::Left) == 0.0);
    CHECK(folner_defect(z, K, z.word_ball(10), BoundarySide::Right) ==
          doctest::Approx(4.0 / 21.0));
    CHECK_THROWS_AS(folner_defect(z, K, Region{}, BoundarySide::Left), DomainError);
}

TEST_CASE("H3 ball defect decreases over radii 4..12") {
    const Group h = Group::heis3z();
    const Region K = h.word_ball(1);
    double prev = 1e9;
    for (std::int64_t n = 4; n <= 12; n += 2) {
        const double d = folner_defect(h, K, h.word_ball(n), BoundarySide::Left);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("unimodularity at desk scale: |T| = |T^{-1}|") {
    const SplitMix64 rng{13};
    std::uint64_t ctr = 0;
    for (const Group& g : {Group::zd(2), Group::heis3z()}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Elem> elems;
            for (int i = 0; i < 30; ++i) elems.push_back(random_elem(rng, ctr, 8));
            const Region T(elems);
            CHECK(T.size() == g.inverse(T).size());
        }
    }
}

TEST_CASE("word-ball schedules with increasing radii are strong exhaustions") {
    const Group z = Group::zd(1);
    CHECK(FolnerSchedule::word_balls(z, {1, 2, 3, 4}).is_strong_exhaustion());
    CHECK(FolnerSchedule::word_balls(z, {1, 2, 4, 16}).is_strong_exhaustion());
    CHECK_FALSE(FolnerSchedule::word_balls(z, {3, 3}).is_strong_exhaustion());
    const Group h = Group::heis3z();
    CHECK(FolnerSchedule::word_balls(h, {1, 2, 3}).is_strong_exhaustion());

    const auto intervals = FolnerSchedule::centered_intervals(z, {1, 2, 3, 8});
    CHECK(intervals.is_strong_exhaustion());
    CHECK(intervals.set(4).size() == 8);

    const auto prefixes = FolnerSchedule::prefix_intervals(z, {1, 3, 7});
    CHECK(prefixes.is_strong_exhaustion());
    CHECK(prefixes.set(3).contains(elem(-6)));
    CHECK(prefixes.set(3).contains(elem(0)));
    CHECK(z.inverse(prefixes.set(2)) == Region({elem(0), elem(1), elem(2)}));
}

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "aperiodic/errors.hpp"

namespace aperiodic {

/// Group element as an integer coordinate tuple. Z^d uses the first d slots,
/// H3(Z) uses all three as (x, y, z). Unused slots stay zero so that ordering
/// and hashing are uniform.
struct Elem {
    std::array<std::int64_t, 3> c{0, 0, 0};

    friend bool operator==(const Elem& a, const Elem& b) { return a.c == b.c; }
    friend bool operator!=(const Elem& a, const Elem& b) { return a.c != b.c; }
    friend bool operator<(const Elem& a, const Elem& b) { return a.c < b.c; }
};

inline Elem elem(std::int64_t x, std::int64_t y = 0, std::int64_t z = 0) {
    return Elem{{x, y, z}};
}

struct ElemHash {
    std::size_t operator()(const Elem& e) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto v : e.c) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Finite subset of the group, stored sorted and duplicate-free. All set
/// operations are exact.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<Elem> elems);

    static Region from_sorted_unique(std::vector<Elem> elems);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(const Elem& e) const;
    const std::vector<Elem>& elems() const { return elems_; }

    friend bool operator==(const Region& a, const Region& b) { return a.elems_ == b.elems_; }
    friend bool operator!=(const Region& a, const Region& b) { return !(a == b); }

    Region set_union(const Region& other) const;
    Region set_difference(const Region& other) const;
    Region set_intersection(const Region& other) const;
    bool is_subset_of(const Region& other) const;
    bool disjoint_from(const Region& other) const;

private:
    std::vector<Elem> elems_;
};

enum class GroupKind { ZD, Heis3Z };

/// One of the two supported discrete groups with exact arithmetic, a fixed
/// symmetric generator set, the induced word metric and counting measure.
/// The enumeration is closed on purpose: BFS and hashing stay exact.
class Group {
public:
    /// Default global cap on enumerated elements (guards BFS blowup in H3(Z)).
    static constexpr std::size_t kDefaultElementCap = 5'000'000;

    static Group zd(int dim);
    static Group heis3z();

    GroupKind kind() const { return kind_; }
    int dim() const { return dim_; }
    std::string name() const;

    Elem identity() const { return Elem{}; }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    const std::vector<Elem>& generators() const { return gens_; }

    /// Word length |g| w.r.t. the generator set (BFS-backed for H3(Z),
    /// closed form for Z^d). Throws ResourceError past the element cap.
    std::int64_t word_length(const Elem& g, std::size_t cap = kDefaultElementCap) const;

    /// d_S(g, h) = |g^{-1} h|.
    std::int64_t word_distance(const Elem& g, const Elem& h,
                               std::size_t cap = kDefaultElementCap) const;

    /// Closed ball {h : d_S(center, h) <= n}, enumerated by BFS.
    Region word_ball(std::int64_t n, const Elem& center = Elem{},
                     std::size_t cap = kDefaultElementCap) const;

    Region translate_left(const Elem& g, const Region& r) const;
    Region translate_right(const Region& r, const Elem& g) const;
    Region inverse(const Region& r) const;
    /// Minkowski product {ab : a in A, b in B}.
    Region product(const Region& a, const Region& b) const;

private:
    Group(GroupKind kind, int dim);

    GroupKind kind_ = GroupKind::ZD;
    int dim_ = 1;
    std::vector<Elem> gens_;

    // BFS word-length cache for H3(Z); grown on demand.
    struct LengthCache {
        std::mutex mu;
        std::unordered_map<Elem, std::int64_t, ElemHash> dist;
        std::vector<Elem> frontier;
        std::int64_t radius = -1;
    };
    std::shared_ptr<LengthCache> cache_;
};

/// L-boundary of T: all g such that Kg meets both T and its complement.
Region left_boundary(const Group& g, const Region& K, const Region& T);

/// Right K-boundary of T: TK^{-1} intersected with (G \ T)K^{-1}.
Region right_boundary(const Group& g, const Region& K, const Region& T);

enum class BoundarySide { Left, Right };

/// |boundary| / |T|; throws DomainError for empty T.
double folner_defect(const Group& g, const Region& K, const Region& T, BoundarySide side);

/// Folner sequence descriptor: word-ball radius schedule or explicit regions.
/// Ball schedules materialize their sets lazily (and cache them), so long
/// radius schedules cost nothing until a set is actually touched.
class FolnerSchedule {
public:
    static FolnerSchedule word_balls(const Group& g, std::vector<std::int64_t> radii,
                                     std::size_t cap = Group::kDefaultElementCap);
    static FolnerSchedule explicit_regions(const Group& g, std::vector<Region> regions);

    /// Nested intervals of exactly the given sizes around the identity (Z only).
    static FolnerSchedule centered_intervals(const Group& g, std::vector<std::int64_t> sizes);

    /// Intervals [-(s-1), 0] of the given sizes, whose inverses are the
    /// prefixes [0, s-1]; the natural schedule for one-sided windows (Z only).
    static FolnerSchedule prefix_intervals(const Group& g, std::vector<std::int64_t> sizes);

    const Group& group() const { return group_; }
    std::size_t length() const { return is_word_balls_ ? radii_.size() : regions_.size(); }
    /// 1-based, matching the m-indexing used throughout.
    const Region& set(std::size_t m) const;
    bool is_word_balls() const { return is_word_balls_; }
    std::int64_t radius(std::size_t m) const;

    /// Counting measure |T_m|, computed without materializing when possible.
    std::size_t measure(std::size_t m) const;

    /// The set as a contiguous Z interval [lo, hi], when it is one; avoids
    /// materialization for ball schedules over Z.
    std::optional<std::pair<std::int64_t, std::int64_t>> z_interval_of(std::size_t m) const;

    /// Strong-exhaustion check at desk scale: e in T_1 and T_m strictly
    /// nested in T_{m+1} for all listed m (discrete interior = set itself).
    bool is_strong_exhaustion() const;

private:
    FolnerSchedule(Group g, std::vector<Region> regions, std::vector<std::int64_t> radii, bool balls);

    Group group_;
    std::vector<Region> regions_;
    std::vector<std::int64_t> radii_;
    bool is_word_balls_ = false;
    std::size_t cap_ = Group::kDefaultElementCap;
    mutable std::shared_ptr<std::unordered_map<std::size_t, Region>> ball_cache_;
    mutable std::shared_ptr<std::mutex> cache_mu_;
};

} // namespace aperiodic

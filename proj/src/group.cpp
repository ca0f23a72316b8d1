#include "aperiodic/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

namespace aperiodic {

Region::Region(std::vector<Elem> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

Region Region::from_sorted_unique(std::vector<Elem> elems) {
    Region r;
    r.elems_ = std::move(elems);
    return r;
}

bool Region::contains(const Elem& e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

Region Region::set_union(const Region& other) const {
    std::vector<Elem> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(out));
    return Region::from_sorted_unique(std::move(out));
}

Region Region::set_difference(const Region& other) const {
    std::vector<Elem> out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(out));
    return Region::from_sorted_unique(std::move(out));
}

Region Region::set_intersection(const Region& other) const {
    std::vector<Elem> out;
    std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                          std::back_inserter(out));
    return Region::from_sorted_unique(std::move(out));
}

bool Region::is_subset_of(const Region& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

bool Region::disjoint_from(const Region& other) const {
    auto a = elems_.begin();
    auto b = other.elems_.begin();
    while (a != elems_.end() && b != other.elems_.end()) {
        if (*a < *b) {
            ++a;
        } else if (*b < *a) {
            ++b;
        } else {
            return false;
        }
    }
    return true;
}

Group::Group(GroupKind kind, int dim)
    : kind_(kind), dim_(dim), cache_(std::make_shared<LengthCache>()) {
    if (kind_ == GroupKind::ZD) {
        for (int i = 0; i < dim_; ++i) {
            Elem g{};
            g.c[static_cast<std::size_t>(i)] = 1;
            gens_.push_back(g);
            g.c[static_cast<std::size_t>(i)] = -1;
            gens_.push_back(g);
        }
    } else {
        gens_ = {elem(1, 0, 0), elem(-1, 0, 0), elem(0, 1, 0), elem(0, -1, 0)};
    }
    std::sort(gens_.begin(), gens_.end());
}

Group Group::zd(int dim) {
    if (dim < 1 || dim > 3) throw DomainError("Z^d supports d in {1,2,3}");
    return Group(GroupKind::ZD, dim);
}

Group Group::heis3z() { return Group(GroupKind::Heis3Z, 3); }

std::string Group::name() const {
    if (kind_ == GroupKind::Heis3Z) return "heis3z";
    return "z" + std::to_string(dim_);
}

Elem Group::mul(const Elem& a, const Elem& b) const {
    if (kind_ == GroupKind::ZD) {
        return Elem{{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
    }
    // H3(Z): (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
    return Elem{{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2] + a.c[0] * b.c[1]}};
}

Elem Group::inv(const Elem& a) const {
    if (kind_ == GroupKind::ZD) {
        return Elem{{-a.c[0], -a.c[1], -a.c[2]}};
    }
    // (x,y,z)^{-1} = (-x, -y, -z + x*y)
    return Elem{{-a.c[0], -a.c[1], -a.c[2] + a.c[0] * a.c[1]}};
}

std::int64_t Group::word_length(const Elem& g, std::size_t cap) const {
    if (kind_ == GroupKind::ZD) {
        std::int64_t n = 0;
        for (int i = 0; i < dim_; ++i) n += std::llabs(g.c[static_cast<std::size_t>(i)]);
        return n;
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& cache = *cache_;
    if (cache.radius < 0) {
        cache.dist[identity()] = 0;
        cache.frontier = {identity()};
        cache.radius = 0;
    }
    for (;;) {
        auto it = cache.dist.find(g);
        if (it != cache.dist.end()) return it->second;
        if (cache.frontier.empty()) throw DomainError("word_length: BFS exhausted");
        std::vector<Elem> next;
        for (const auto& e : cache.frontier) {
            for (const auto& s : gens_) {
                Elem f = mul(e, s);
                if (cache.dist.emplace(f, cache.radius + 1).second) next.push_back(f);
            }
        }
        cache.frontier = std::move(next);
        ++cache.radius;
        if (cache.dist.size() > cap) {
            throw ResourceError("word_length: element cap exceeded at radius " +
                                std::to_string(cache.radius));
        }
    }
}

std::int64_t Group::word_distance(const Elem& g, const Elem& h, std::size_t cap) const {
    return word_length(mul(inv(g), h), cap);
}

Region Group::word_ball(std::int64_t n, const Elem& center, std::size_t cap) const {
    if (n < 0) throw DomainError("word_ball: negative radius");
    if (kind_ == GroupKind::ZD) {
        // Enumerate the l^1 ball directly.
        std::vector<Elem> out;
        if (dim_ == 1) {
            out.reserve(static_cast<std::size_t>(2 * n + 1));
            for (std::int64_t x = -n; x <= n; ++x) out.push_back(mul(center, elem(x)));
        } else if (dim_ == 2) {
            for (std::int64_t x = -n; x <= n; ++x)
                for (std::int64_t y = -(n - std::llabs(x)); y <= n - std::llabs(x); ++y)
                    out.push_back(mul(center, elem(x, y)));
        } else {
            for (std::int64_t x = -n; x <= n; ++x)
                for (std::int64_t y = -(n - std::llabs(x)); y <= n - std::llabs(x); ++y) {
                    std::int64_t r = n - std::llabs(x) - std::llabs(y);
                    for (std::int64_t z = -r; z <= r; ++z) out.push_back(mul(center, elem(x, y, z)));
                }
        }
        if (out.size() > cap) throw ResourceError("word_ball: element cap exceeded");
        return Region(std::move(out));
    }
    // H3(Z): plain BFS from the center, multiplying generators on the right
    // (balls are left translates of the ball at the identity).
    std::unordered_set<Elem, ElemHash> seen;
    std::vector<Elem> frontier{center};
    seen.insert(center);
    for (std::int64_t depth = 0; depth < n; ++depth) {
        std::vector<Elem> next;
        for (const auto& e : frontier) {
            for (const auto& s : gens_) {
                Elem f = mul(e, s);
                if (seen.insert(f).second) next.push_back(f);
            }
        }
        if (seen.size() > cap) throw ResourceError("word_ball: element cap exceeded");
        frontier = std::move(next);
    }
    std::vector<Elem> out(seen.begin(), seen.end());
    return Region(std::move(out));
}

Region Group::translate_left(const Elem& g, const Region& r) const {
    std::vector<Elem> out;
    out.reserve(r.size());
    for (const auto& e : r.elems()) out.push_back(mul(g, e));
    return Region(std::move(out));
}

Region Group::translate_right(const Region& r, const Elem& g) const {
    std::vector<Elem> out;
    out.reserve(r.size());
    for (const auto& e : r.elems()) out.push_back(mul(e, g));
    return Region(std::move(out));
}

Region Group::inverse(const Region& r) const {
    std::vector<Elem> out;
    out.reserve(r.size());
    for (const auto& e : r.elems()) out.push_back(inv(e));
    return Region(std::move(out));
}

Region Group::product(const Region& a, const Region& b) const {
    std::vector<Elem> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.elems())
        for (const auto& y : b.elems()) out.push_back(mul(x, y));
    return Region(std::move(out));
}

Region left_boundary(const Group& g, const Region& K, const Region& T) {
    if (K.empty() || T.empty()) return Region{};
    // Candidates: K^{-1} T covers every g with Kg meeting T; keep those whose
    // star Kg also escapes T.
    Region candidates = g.product(g.inverse(K), T);
    std::vector<Elem> out;
    for (const auto& cand : candidates.elems()) {
        bool escapes = false;
        for (const auto& k : K.elems()) {
            if (!T.contains(g.mul(k, cand))) {
                escapes = true;
                break;
            }
        }
        if (escapes) out.push_back(cand);
    }
    return Region(std::move(out));
}

Region right_boundary(const Group& g, const Region& K, const Region& T) {
    if (K.empty() || T.empty()) return Region{};
    Region candidates = g.product(T, g.inverse(K));
    std::vector<Elem> out;
    for (const auto& cand : candidates.elems()) {
        bool escapes = false;
        for (const auto& k : K.elems()) {
            if (!T.contains(g.mul(cand, k))) {
                escapes = true;
                break;
            }
        }
        if (escapes) out.push_back(cand);
    }
    return Region(std::move(out));
}

double folner_defect(const Group& g, const Region& K, const Region& T, BoundarySide side) {
    if (T.empty()) throw DomainError("folner_defect: empty region");
    const Region b = side == BoundarySide::Left ? left_boundary(g, K, T) : right_boundary(g, K, T);
    return static_cast<double>(b.size()) / static_cast<double>(T.size());
}

FolnerSchedule::FolnerSchedule(Group g, std::vector<Region> regions, std::vector<std::int64_t> radii,
                               bool balls)
    : group_(std::move(g)), regions_(std::move(regions)), radii_(std::move(radii)),
      is_word_balls_(balls), ball_cache_(std::make_shared<std::unordered_map<std::size_t, Region>>()),
      cache_mu_(std::make_shared<std::mutex>()) {}

FolnerSchedule FolnerSchedule::word_balls(const Group& g, std::vector<std::int64_t> radii,
                                          std::size_t cap) {
    for (auto r : radii)
        if (r < 0) throw DomainError("word_balls: negative radius");
    FolnerSchedule sched(g, {}, std::move(radii), true);
    sched.cap_ = cap;
    return sched;
}

FolnerSchedule FolnerSchedule::explicit_regions(const Group& g, std::vector<Region> regions) {
    return FolnerSchedule(g, std::move(regions), {}, false);
}

FolnerSchedule FolnerSchedule::centered_intervals(const Group& g, std::vector<std::int64_t> sizes) {
    if (g.kind() != GroupKind::ZD || g.dim() != 1)
        throw DomainError("centered_intervals: Z only");
    std::vector<Region> regions;
    regions.reserve(sizes.size());
    for (auto n : sizes) {
        if (n < 1) throw DomainError("centered_intervals: size must be positive");
        std::vector<Elem> elems;
        std::int64_t lo = -(n - 1) / 2;
        for (std::int64_t i = 0; i < n; ++i) elems.push_back(elem(lo + i));
        regions.push_back(Region(std::move(elems)));
    }
    return FolnerSchedule(g, std::move(regions), {}, false);
}

FolnerSchedule FolnerSchedule::prefix_intervals(const Group& g, std::vector<std::int64_t> sizes) {
    if (g.kind() != GroupKind::ZD || g.dim() != 1)
        throw DomainError("prefix_intervals: Z only");
    std::vector<Region> regions;
    regions.reserve(sizes.size());
    for (auto n : sizes) {
        if (n < 1) throw DomainError("prefix_intervals: size must be positive");
        std::vector<Elem> elems;
        for (std::int64_t i = -(n - 1); i <= 0; ++i) elems.push_back(elem(i));
        regions.push_back(Region(std::move(elems)));
    }
    return FolnerSchedule(g, std::move(regions), {}, false);
}

const Region& FolnerSchedule::set(std::size_t m) const {
    if (m < 1 || m > length()) throw DomainError("FolnerSchedule: index out of range");
    if (!is_word_balls_) return regions_[m - 1];
    std::lock_guard<std::mutex> lock(*cache_mu_);
    auto it = ball_cache_->find(m);
    if (it == ball_cache_->end())
        it = ball_cache_->emplace(m, group_.word_ball(radii_[m - 1], group_.identity(), cap_)).first;
    return it->second;
}

std::int64_t FolnerSchedule::radius(std::size_t m) const {
    if (!is_word_balls_) throw DomainError("FolnerSchedule: not a ball schedule");
    if (m < 1 || m > radii_.size()) throw DomainError("FolnerSchedule: index out of range");
    return radii_[m - 1];
}

std::size_t FolnerSchedule::measure(std::size_t m) const {
    if (is_word_balls_ && group_.kind() == GroupKind::ZD) {
        const auto r = static_cast<std::uint64_t>(radius(m));
        if (group_.dim() == 1) return static_cast<std::size_t>(2 * r + 1);
        if (group_.dim() == 2) return static_cast<std::size_t>(2 * r * r + 2 * r + 1);
    }
    return set(m).size();
}

std::optional<std::pair<std::int64_t, std::int64_t>> FolnerSchedule::z_interval_of(
    std::size_t m) const {
    if (group_.kind() != GroupKind::ZD || group_.dim() != 1) return std::nullopt;
    if (is_word_balls_) {
        const std::int64_t r = radius(m);
        return std::make_pair(-r, r);
    }
    const Region& region = set(m);
    if (region.empty()) return std::nullopt;
    const std::int64_t lo = region.elems().front().c[0];
    const std::int64_t hi = region.elems().back().c[0];
    if (static_cast<std::int64_t>(region.size()) != hi - lo + 1) return std::nullopt;
    return std::make_pair(lo, hi);
}

bool FolnerSchedule::is_strong_exhaustion() const {
    if (length() == 0) return false;
    if (is_word_balls_) {
        for (std::size_t i = 0; i + 1 < radii_.size(); ++i)
            if (radii_[i] >= radii_[i + 1]) return false;
        return true; // balls contain e and are strictly nested in the radius
    }
    if (!regions_.front().contains(group_.identity())) return false;
    for (std::size_t i = 0; i + 1 < regions_.size(); ++i) {
        if (!regions_[i].is_subset_of(regions_[i + 1])) return false;
        if (regions_[i].size() >= regions_[i + 1].size()) return false;
    }
    return true;
}

} // namespace aperiodic

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aperiodic/group.hpp"

namespace aperiodic {

/// A coloring of a finite sample window of the group by a finite alphabet,
/// together with a weight map iota into [1/sigma, sigma]. Identified with the
/// weighted Delone set (Dirac comb) sum of iota(color(x)) * delta_x over the
/// window. Every hull-related quantity downstream is computed on translates
/// that stay inside the window.
class Coloring {
public:
    Coloring(Group group, Region window, std::vector<int> symbol_of_cell,
             std::vector<std::string> alphabet, std::vector<double> iota,
             std::string generator_spec);

    const Group& group() const { return group_; }
    const Region& window() const { return window_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<double>& iota() const { return iota_; }
    double sigma() const { return sigma_; }
    const std::string& generator_spec() const { return generator_spec_; }

    std::optional<int> symbol_at(const Elem& x) const;
    std::optional<double> weight_at(const Elem& x) const;
    int symbol_index(const std::string& name) const;

    /// Copy with per-symbol weights replaced (used for delta-close hull pairs).
    Coloring with_iota(std::vector<double> iota) const;

private:
    Group group_;
    Region window_;
    std::vector<int> symbol_of_cell_; // aligned to window_.elems()
    std::vector<std::string> alphabet_;
    std::vector<double> iota_;
    double sigma_ = 1.0;
    std::string generator_spec_;
    std::unordered_map<Elem, std::size_t, ElemHash> index_;
};

/// Fibonacci substitution word a -> ab, b -> a iterated from "a"; prefix of
/// the given length, encoded as symbol indices (0 = a, 1 = b).
std::vector<int> fibonacci_word(std::size_t length);

/// Thue-Morse word (0 -> 01, 1 -> 10 from 0).
std::vector<int> thue_morse_word(std::size_t length);

Coloring make_constant_coloring(const Group& g, const Region& window,
                                std::vector<std::string> alphabet, std::vector<double> iota,
                                int symbol = 0);

/// Periodic coloring on Z^d: symbol at x determined by x mod periods,
/// reading the pattern row-major. For Z with word "ab": color(n) = a iff n even.
Coloring make_periodic_coloring(const Group& g, const Region& window,
                                std::vector<std::int64_t> periods, std::vector<int> pattern,
                                std::vector<std::string> alphabet, std::vector<double> iota);

/// Fibonacci prefix on the window [0, length) of Z.
Coloring make_fibonacci_coloring(std::size_t length, std::vector<double> iota = {1.0, 2.0});

Coloring make_thue_morse_coloring(std::size_t length, std::vector<double> iota = {1.0, 2.0});

/// Seeded i.i.d. coloring (uniform over the alphabet); non-repetitive control.
Coloring make_iid_coloring(const Group& g, const Region& window,
                           std::vector<std::string> alphabet, std::vector<double> iota,
                           std::uint64_t seed);

Coloring make_explicit_coloring(const Group& g, std::vector<std::pair<Elem, int>> cells,
                                std::vector<std::string> alphabet, std::vector<double> iota);

/// A point of the hull surrogate: the translate g.Lambda of a base coloring.
/// Reads outside the translated window are rejected (nullopt), which is how
/// every consumer learns the validity radius of a finite-window computation.
struct HullPoint {
    const Coloring* base = nullptr;
    Elem translator{};

    /// (g.Lambda)(y) = Lambda(g^{-1} y).
    std::optional<int> symbol_at(const Elem& y) const {
        return base->symbol_at(base->group().mul(base->group().inv(translator), y));
    }
    std::optional<double> weight_at(const Elem& y) const {
        return base->weight_at(base->group().mul(base->group().inv(translator), y));
    }
    /// h.(g.Lambda) = (hg).Lambda.
    HullPoint translated(const Elem& h) const {
        return HullPoint{base, base->group().mul(h, translator)};
    }
};

} // namespace aperiodic

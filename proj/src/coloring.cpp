#include "aperiodic/coloring.hpp"

#include <algorithm>
#include <cmath>

#include "aperiodic/rng.hpp"

namespace aperiodic {

namespace {

double sigma_for(const std::vector<double>& iota) {
    double sigma = 1.0;
    for (double w : iota) {
        if (w <= 0.0) throw DomainError("iota weights must be positive");
        sigma = std::max({sigma, w, 1.0 / w});
    }
    return sigma;
}

} // namespace

Coloring::Coloring(Group group, Region window, std::vector<int> symbol_of_cell,
                   std::vector<std::string> alphabet, std::vector<double> iota,
                   std::string generator_spec)
    : group_(std::move(group)), window_(std::move(window)),
      symbol_of_cell_(std::move(symbol_of_cell)), alphabet_(std::move(alphabet)),
      iota_(std::move(iota)), generator_spec_(std::move(generator_spec)) {
    if (symbol_of_cell_.size() != window_.size())
        throw DomainError("Coloring: one symbol per window element required");
    if (alphabet_.size() != iota_.size())
        throw DomainError("Coloring: iota must cover the alphabet");
    for (int s : symbol_of_cell_) {
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet_.size())
            throw DomainError("Coloring: symbol index out of range");
    }
    sigma_ = sigma_for(iota_);
    index_.reserve(window_.size());
    for (std::size_t i = 0; i < window_.size(); ++i) index_.emplace(window_.elems()[i], i);
}

std::optional<int> Coloring::symbol_at(const Elem& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return symbol_of_cell_[it->second];
}

std::optional<double> Coloring::weight_at(const Elem& x) const {
    auto s = symbol_at(x);
    if (!s) return std::nullopt;
    return iota_[static_cast<std::size_t>(*s)];
}

int Coloring::symbol_index(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name) return static_cast<int>(i);
    throw DomainError("Coloring: unknown symbol '" + name + "'");
}

Coloring Coloring::with_iota(std::vector<double> iota) const {
    return Coloring(group_, window_, symbol_of_cell_, alphabet_, std::move(iota),
                    generator_spec_);
}

std::vector<int> fibonacci_word(std::size_t length) {
    std::vector<int> word{0};
    while (word.size() < length) {
        std::vector<int> next;
        next.reserve(2 * word.size());
        for (int s : word) {
            if (s == 0) {
                next.push_back(0);
                next.push_back(1);
            } else {
                next.push_back(0);
            }
        }
        word = std::move(next);
    }
    word.resize(length);
    return word;
}

std::vector<int> thue_morse_word(std::size_t length) {
    std::vector<int> word(length);
    for (std::size_t n = 0; n < length; ++n)
        word[n] = __builtin_popcountll(static_cast<unsigned long long>(n)) & 1;
    return word;
}

Coloring make_constant_coloring(const Group& g, const Region& window,
                                std::vector<std::string> alphabet, std::vector<double> iota,
                                int symbol) {
    std::vector<int> cells(window.size(), symbol);
    return Coloring(g, window, std::move(cells), std::move(alphabet), std::move(iota),
                    "constant");
}

Coloring make_periodic_coloring(const Group& g, const Region& window,
                                std::vector<std::int64_t> periods, std::vector<int> pattern,
                                std::vector<std::string> alphabet, std::vector<double> iota) {
    if (g.kind() != GroupKind::ZD) throw DomainError("periodic coloring: Z^d only");
    if (periods.size() != static_cast<std::size_t>(g.dim()))
        throw DomainError("periodic coloring: one period per coordinate");
    std::int64_t cells_per_period = 1;
    for (auto p : periods) {
        if (p < 1) throw DomainError("periodic coloring: periods must be positive");
        cells_per_period *= p;
    }
    if (static_cast<std::int64_t>(pattern.size()) != cells_per_period)
        throw DomainError("periodic coloring: pattern size must match the period cell count");
    std::vector<int> cells;
    cells.reserve(window.size());
    for (const auto& e : window.elems()) {
        std::int64_t idx = 0;
        for (int i = 0; i < g.dim(); ++i) {
            const std::int64_t p = periods[static_cast<std::size_t>(i)];
            const std::int64_t r = ((e.c[static_cast<std::size_t>(i)] % p) + p) % p;
            idx = idx * p + r;
        }
        cells.push_back(pattern[static_cast<std::size_t>(idx)]);
    }
    return Coloring(g, window, std::move(cells), std::move(alphabet), std::move(iota),
                    "periodic");
}

namespace {

Region z_interval(std::int64_t lo, std::int64_t hi_exclusive) {
    std::vector<Elem> elems;
    elems.reserve(static_cast<std::size_t>(hi_exclusive - lo));
    for (std::int64_t i = lo; i < hi_exclusive; ++i) elems.push_back(elem(i));
    return Region::from_sorted_unique(std::move(elems));
}

} // namespace

Coloring make_fibonacci_coloring(std::size_t length, std::vector<double> iota) {
    Group z = Group::zd(1);
    return Coloring(z, z_interval(0, static_cast<std::int64_t>(length)),
                    fibonacci_word(length), {"a", "b"}, std::move(iota), "fibonacci");
}

Coloring make_thue_morse_coloring(std::size_t length, std::vector<double> iota) {
    Group z = Group::zd(1);
    return Coloring(z, z_interval(0, static_cast<std::int64_t>(length)),
                    thue_morse_word(length), {"a", "b"}, std::move(iota), "thue_morse");
}

Coloring make_iid_coloring(const Group& g, const Region& window,
                           std::vector<std::string> alphabet, std::vector<double> iota,
                           std::uint64_t seed) {
    const SplitMix64 rng{seed};
    std::vector<int> cells;
    cells.reserve(window.size());
    for (std::size_t i = 0; i < window.size(); ++i)
        cells.push_back(static_cast<int>(rng.below(i, alphabet.size())));
    return Coloring(g, window, std::move(cells), std::move(alphabet), std::move(iota),
                    "iid_random");
}

Coloring make_explicit_coloring(const Group& g, std::vector<std::pair<Elem, int>> cells,
                                std::vector<std::string> alphabet, std::vector<double> iota) {
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Elem> elems;
    std::vector<int> symbols;
    elems.reserve(cells.size());
    symbols.reserve(cells.size());
    for (const auto& [e, s] : cells) {
        if (!elems.empty() && elems.back() == e)
            throw DomainError("explicit coloring: duplicate cell");
        elems.push_back(e);
        symbols.push_back(s);
    }
    return Coloring(g, Region::from_sorted_unique(std::move(elems)), std::move(symbols),
                    std::move(alphabet), std::move(iota), "explicit");
}

} // namespace aperiodic

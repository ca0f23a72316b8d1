#include "aperiodic/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace aperiodic {

HoppingOperator make_adjacency_operator(const Group& g, double t) {
    HoppingOperator H;
    H.name = "adjacency";
    H.hop_range = 2;
    H.invariance_radius = 1;
    H.fiber_dim = 1;
    H.kernel = [g, t](const HullPoint&, const Elem& a, const Elem& b,
                      Eigen::Ref<Eigen::MatrixXd> block) {
        block(0, 0) = g.word_distance(a, b) == 1 ? t : 0.0;
    };
    return H;
}

HoppingOperator make_potential_operator(const Group&, double coupling) {
    HoppingOperator H;
    H.name = "potential";
    H.hop_range = 1;
    H.invariance_radius = 1;
    H.fiber_dim = 1;
    H.kernel = [coupling](const HullPoint& x, const Elem& a, const Elem& b,
                          Eigen::Ref<Eigen::MatrixXd> block) {
        if (a == b) {
            auto v = x.weight_at(a);
            if (!v) throw DomainError("potential kernel: site not readable");
            block(0, 0) = coupling * *v;
        } else {
            block(0, 0) = 0.0;
        }
    };
    return H;
}

HoppingOperator make_schrodinger_operator(const Group& g, double hopping, double coupling) {
    HoppingOperator H;
    H.name = "schrodinger";
    H.hop_range = 2;
    H.invariance_radius = 1;
    H.fiber_dim = 1;
    H.kernel = [g, hopping, coupling](const HullPoint& x, const Elem& a, const Elem& b,
                                      Eigen::Ref<Eigen::MatrixXd> block) {
        if (a == b) {
            auto v = x.weight_at(a);
            if (!v) throw DomainError("schrodinger kernel: site not readable");
            block(0, 0) = coupling * *v;
        } else {
            block(0, 0) = g.word_distance(a, b) == 1 ? hopping : 0.0;
        }
    };
    return H;
}

HoppingOperator make_table_operator(const Group& g, int hop_range, int invariance_radius,
                                    int fiber_dim, std::vector<TableKernelEntry> entries) {
    if (hop_range < 1 || invariance_radius < 1 || fiber_dim < 1)
        throw DomainError("table operator: M, N and the fiber dimension must be positive");
    const Region neighborhood = g.word_ball(invariance_radius - 1);
    const auto fiber = static_cast<std::size_t>(fiber_dim);
    for (const auto& e : entries) {
        if (e.colors_g.size() != neighborhood.size() || e.colors_h.size() != neighborhood.size())
            throw DomainError("table operator: color words must cover the N-neighborhood");
        if (e.block.size() != fiber * fiber)
            throw DomainError("table operator: block size must be fiber_dim^2");
        if (g.word_length(e.rel) >= hop_range)
            throw DomainError("table operator: entry outside the hopping range");
    }

    auto key_of = [](const Elem& rel, const std::vector<int>& cg, const std::vector<int>& ch) {
        std::string key;
        key.reserve(24 + cg.size() + ch.size() + 1);
        for (auto v : rel.c) key.append(reinterpret_cast<const char*>(&v), sizeof v);
        for (int v : cg) key.push_back(static_cast<char>(v));
        key.push_back('|');
        for (int v : ch) key.push_back(static_cast<char>(v));
        return key;
    };
    auto table = std::make_shared<std::unordered_map<std::string, std::vector<double>>>();
    for (auto& e : entries) table->emplace(key_of(e.rel, e.colors_g, e.colors_h), e.block);

    HoppingOperator H;
    H.name = "table";
    H.hop_range = hop_range;
    H.invariance_radius = invariance_radius;
    H.fiber_dim = fiber_dim;
    H.kernel = [g, neighborhood, table, key_of, fiber](const HullPoint& x, const Elem& a,
                                                       const Elem& b,
                                                       Eigen::Ref<Eigen::MatrixXd> block) {
        block.setZero();
        auto read_colors = [&](const Elem& site, std::vector<int>& out) {
            out.clear();
            for (const auto& n : neighborhood.elems()) {
                auto s = x.symbol_at(g.mul(site, n));
                if (!s) throw DomainError("table kernel: neighborhood not readable");
                out.push_back(*s);
            }
        };
        std::vector<int> ca, cb;
        read_colors(a, ca);
        read_colors(b, cb);
        const Elem rel = g.mul(g.inv(a), b);
        auto it = table->find(key_of(rel, ca, cb));
        if (it != table->end()) {
            for (std::size_t i = 0; i < fiber; ++i)
                for (std::size_t j = 0; j < fiber; ++j)
                    block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        it->second[i * fiber + j];
            return;
        }
        it = table->find(key_of(g.inv(rel), cb, ca));
        if (it != table->end()) {
            for (std::size_t i = 0; i < fiber; ++i)
                for (std::size_t j = 0; j < fiber; ++j)
                    block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        it->second[j * fiber + i];
        }
    };
    return H;
}

Region interior(const Group& g, const Region& F, int R) {
    if (R < 0) throw DomainError("interior: negative range");
    if (R == 0) return F;
    const Region ball = g.word_ball(R);
    std::vector<Elem> out;
    for (const auto& x : F.elems()) {
        if (g.translate_left(x, ball).is_subset_of(F)) out.push_back(x);
    }
    return Region(std::move(out));
}

RestrictedOperator restrict_operator(const HoppingOperator& H, const Coloring& c,
                                     const Region& F) {
    if (!F.is_subset_of(c.window()))
        throw DomainError("restrict_operator: region escapes coloring window");
    RestrictedOperator out;
    out.fiber_dim = H.fiber_dim;
    const Region core = interior(c.group(), F, H.overall_range());
    out.index = core.elems();
    const auto n = out.index.size();
    const auto dim = static_cast<Eigen::Index>(n * static_cast<std::size_t>(H.fiber_dim));
    if (n * static_cast<std::size_t>(H.fiber_dim) > kMaxEigenDim)
        throw ResourceError("restrict_operator: matrix dimension exceeds the dense cap");
    out.matrix = Eigen::MatrixXd::Zero(dim, dim);

    const HullPoint x{&c, c.group().identity()};
    Eigen::MatrixXd block(H.fiber_dim, H.fiber_dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (c.group().word_distance(out.index[i], out.index[j]) >= H.hop_range) continue;
            H.kernel(x, out.index[i], out.index[j], block);
            const auto bi = static_cast<Eigen::Index>(i) * H.fiber_dim;
            const auto bj = static_cast<Eigen::Index>(j) * H.fiber_dim;
            out.matrix.block(bi, bj, H.fiber_dim, H.fiber_dim) = block;
            if (i != j) out.matrix.block(bj, bi, H.fiber_dim, H.fiber_dim) = block.transpose();
        }
    }

    const double scale = std::max(1.0, out.matrix.norm());
    if ((out.matrix - out.matrix.transpose()).norm() > 1e-12 * scale)
        throw VerificationError("restrict_operator: kernel produced a non-symmetric matrix");
    return out;
}

int eigenvalue_counting(const Eigen::MatrixXd& A, double E) {
    if (A.rows() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] <= E) ++count;
    return count;
}

StepFunction::StepFunction(std::vector<double> xs, std::vector<double> cum)
    : xs_(std::move(xs)), cum_(std::move(cum)) {
    if (xs_.size() != cum_.size()) throw DomainError("StepFunction: jump/value mismatch");
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (xs_[i - 1] >= xs_[i]) throw DomainError("StepFunction: jumps must increase");
        if (cum_[i - 1] > cum_[i]) throw DomainError("StepFunction: must be nondecreasing");
    }
    if (!cum_.empty() && (cum_.front() < 0.0 || cum_.back() > 1.0 + 1e-12))
        throw DomainError("StepFunction: range must lie in [0, 1]");
}

StepFunction StepFunction::from_eigenvalues(const std::vector<double>& eigenvalues,
                                            double normalizer) {
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> xs, cum;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!xs.empty() && sorted[i] == xs.back()) {
            cum.back() += 1.0 / normalizer;
        } else {
            xs.push_back(sorted[i]);
            cum.push_back((cum.empty() ? 0.0 : cum.back()) + 1.0 / normalizer);
        }
    }
    return StepFunction(std::move(xs), std::move(cum));
}

double StepFunction::value(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - xs_.begin()) - 1];
}

double StepFunction::value_left(double x) const {
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - xs_.begin()) - 1];
}

StepFunction empirical_distribution(const HoppingOperator& H, const Coloring& c,
                                    const Region& F) {
    const RestrictedOperator R = restrict_operator(H, c, F);
    const double normalizer =
        static_cast<double>(F.size()) * static_cast<double>(H.fiber_dim);
    if (R.matrix.rows() == 0) return StepFunction{};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R.matrix, Eigen::EigenvaluesOnly);
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    return StepFunction::from_eigenvalues(ev, normalizer);
}

double sup_distance(const StepFunction& a, const StepFunction& b) {
    std::vector<double> grid = a.jumps();
    grid.insert(grid.end(), b.jumps().begin(), b.jumps().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double best = 0.0;
    for (double x : grid) {
        best = std::max(best, std::fabs(a.value(x) - b.value(x)));
        best = std::max(best, std::fabs(a.value_left(x) - b.value_left(x)));
    }
    return best;
}

double sup_distance(const StepFunction& a, const std::function<double(double)>& oracle) {
    double best = 0.0;
    for (double x : a.jumps()) {
        const double o = oracle(x);
        best = std::max(best, std::fabs(a.value(x) - o));
        best = std::max(best, std::fabs(a.value_left(x) - o));
    }
    // The oracle may keep climbing past the last jump.
    if (!a.jumps().empty()) {
        const double tail = oracle(a.jumps().back() + 1.0);
        best = std::max(best, std::fabs(a.terminal() - tail));
    }
    return best;
}

IdsReport ids_convergence(const HoppingOperator& H, const Coloring& c,
                          const FolnerSchedule& sched, const std::vector<std::size_t>& m_list,
                          const std::function<double(double)>* oracle, int threads) {
    IdsReport report;
    std::vector<StepFunction> dists(m_list.size());
    std::vector<std::size_t> f_sizes(m_list.size()), core_sizes(m_list.size());

    auto compute = [&](std::size_t i) {
        const std::size_t m = m_list[i];
        const Region F = c.group().inverse(sched.set(m));
        f_sizes[i] = F.size();
        core_sizes[i] = interior(c.group(), F, H.overall_range()).size();
        dists[i] = empirical_distribution(H, c, F);
    };

    if (threads > 1 && m_list.size() > 1) {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), m_list.size());
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= m_list.size()) return;
                    compute(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < m_list.size(); ++i) compute(i);
    }

    for (std::size_t i = 0; i < m_list.size(); ++i) {
        IdsRow row;
        row.m = m_list[i];
        row.f_size = f_sizes[i];
        row.interior_size = core_sizes[i];
        row.dist_prev = i == 0 ? 0.0 : sup_distance(dists[i - 1], dists[i]);
        if (oracle) row.dist_oracle = sup_distance(dists[i], *oracle);
        report.rows.push_back(row);
    }
    return report;
}

double z_adjacency_ids(double E) {
    if (E <= -2.0) return 0.0;
    if (E >= 2.0) return 1.0;
    return std::acos(-E / 2.0) / M_PI;
}

} // namespace aperiodic

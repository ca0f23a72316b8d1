#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aperiodic/coloring.hpp"
#include "aperiodic/group.hpp"

namespace aperiodic {

/// Desk-scale cap on |F^R| * dim(S) for dense eigensolves.
inline constexpr std::size_t kMaxEigenDim = 4000;

/// Pattern-equivariant finite-hopping-range operator on the colored Cayley
/// graph. The kernel writes the fiber x fiber block for a site pair; it must
/// vanish for word distance >= hop_range and may only read colors within
/// radius < invariance_radius of either site.
struct HoppingOperator {
    std::string name;
    int hop_range = 1;         // M
    int invariance_radius = 1; // N
    int fiber_dim = 1;
    std::function<void(const HullPoint&, const Elem& g, const Elem& h, Eigen::Ref<Eigen::MatrixXd>)>
        kernel;

    int overall_range() const { return std::max(hop_range, invariance_radius); }
};

/// H(g,h) = t for d_S(g,h) = 1, else 0 (free hopping).
HoppingOperator make_adjacency_operator(const Group& g, double t = 1.0);

/// Diagonal potential V(g) = iota(color(g)).
HoppingOperator make_potential_operator(const Group& g, double coupling = 1.0);

/// Adjacency plus diagonal iota-potential.
HoppingOperator make_schrodinger_operator(const Group& g, double hopping = 1.0,
                                          double coupling = 1.0);

/// One row of a declarative kernel table: the fiber block applies whenever
/// g^{-1}h equals `rel` and the colored balls of radius N-1 around both
/// sites match the stored words (ball elements in region order).
struct TableKernelEntry {
    Elem rel{};
    std::vector<int> colors_g;
    std::vector<int> colors_h;
    std::vector<double> block; // row-major fiber x fiber
};

/// Pattern-equivariant operator from a finite kernel table. Unmatched site
/// pairs get the zero block; a missing (rel, cg, ch) falls back to the
/// transpose of (rel^{-1}, ch, cg) so symmetric tables need each pair once.
HoppingOperator make_table_operator(const Group& g, int hop_range, int invariance_radius,
                                    int fiber_dim, std::vector<TableKernelEntry> entries);

/// F^R = {x in F : closed R-ball around x inside F} (the strict (R+1)-ball
/// of the word metric equals the closed R-ball).
Region interior(const Group& g, const Region& F, int R);

struct RestrictedOperator {
    std::vector<Elem> index; // ordered F^R
    int fiber_dim = 1;
    Eigen::MatrixXd matrix;
};

/// Dense symmetric restriction H[F^R]; F must lie inside the coloring window.
RestrictedOperator restrict_operator(const HoppingOperator& H, const Coloring& c,
                                     const Region& F);

/// Eigenvalues <= E, counted with multiplicity via a full symmetric solve.
int eigenvalue_counting(const Eigen::MatrixXd& A, double E);

/// Right-continuous nondecreasing step function with range in [0, 1].
class StepFunction {
public:
    StepFunction() = default;
    /// Jump locations with cumulative values attained from the right.
    StepFunction(std::vector<double> xs, std::vector<double> cum);

    static StepFunction from_eigenvalues(const std::vector<double>& eigenvalues,
                                         double normalizer);

    double value(double x) const;      // right-continuous evaluation
    double value_left(double x) const; // left limit
    const std::vector<double>& jumps() const { return xs_; }
    double terminal() const { return cum_.empty() ? 0.0 : cum_.back(); }

private:
    std::vector<double> xs_;
    std::vector<double> cum_;
};

/// Empirical eigenvalue distribution N_H(F): jumps at the spectrum of H_F,
/// normalized by |F| * dim(S) (so the terminal value is |F^R| / |F| <= 1).
StepFunction empirical_distribution(const HoppingOperator& H, const Coloring& c,
                                    const Region& F);

/// Exact sup distance over the merged jump set, including left limits.
double sup_distance(const StepFunction& a, const StepFunction& b);

/// Sup distance against a continuous nondecreasing oracle.
double sup_distance(const StepFunction& a, const std::function<double(double)>& oracle);

struct IdsRow {
    std::size_t m = 0;
    std::size_t f_size = 0;
    std::size_t interior_size = 0;
    double dist_prev = 0.0;   // sup distance to the previous row's N_{H_m}
    std::optional<double> dist_oracle;
};

struct IdsReport {
    std::vector<IdsRow> rows;
};

/// Finite-volume IDS approximants N_{H_m} for F_m = T_m^{-1}, with pairwise
/// sup distances between successive m and an optional closed-form oracle
/// column. Independent m values run in parallel when threads > 1.
IdsReport ids_convergence(const HoppingOperator& H, const Coloring& c,
                          const FolnerSchedule& sched, const std::vector<std::size_t>& m_list,
                          const std::function<double(double)>* oracle = nullptr,
                          int threads = 1);

/// Closed-form IDS of the free Z adjacency operator: arccos(-E/2) / pi on
/// [-2, 2], clamped outside.
double z_adjacency_ids(double E);

} // namespace aperiodic

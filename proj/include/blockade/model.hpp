#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "blockade/fock.hpp"

namespace blockade {

/// Rotating-frame coefficients of the driven three-mode four-wave-mixing
/// model. Every quantity is expressed in units of the reference decay rate
/// kappa, which is fixed at 1.
struct SystemParams
{
    double delta_a = 0.0;
    double delta_b = 0.0;
    double delta_c = 0.0;
    double g = 0.0;
    double f_a = 0.0;
    double kappa_a = 1.0;
    double kappa_b = 1.0;
    double kappa_c = 1.0;

    // Fixes delta_c so that delta_b + delta_c = 2 delta_a.
    static SystemParams constrained(double delta_a, double delta_b, double g, double f_a,
                                    double kappa_a = 1.0, double kappa_b = 1.0,
                                    double kappa_c = 1.0);

    double delta(Mode mode) const noexcept;
    double kappa(Mode mode) const noexcept;

    // Throws InvalidParameters unless all decay rates are positive, the drive
    // is non-negative and every value is finite.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;

struct StateDiagnostics
{
    double hermiticity_error = 0.0; // max |rho - rho^dagger| entry
    double trace_error = 0.0;       // |Tr rho - 1|
    double min_eigenvalue = 0.0;    // of the Hermitian part

    bool valid() const noexcept
    {
        return hermiticity_error <= kHermiticityTolerance && trace_error <= kTraceTolerance
               && min_eigenvalue >= -kPositivityTolerance;
    }
};

StateDiagnostics diagnose_state(const Eigen::MatrixXcd& rho);

/// Hermitian, positive, unit-trace state. Construction validates the
/// invariants and throws InvariantViolation when they do not hold.
class DensityMatrix
{
public:
    explicit DensityMatrix(Eigen::MatrixXcd matrix);

    static DensityMatrix pure(const FockSpace& space, const FockState& state);
    // |psi><psi| / <psi|psi>
    static DensityMatrix from_state_vector(const Eigen::VectorXcd& psi);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_matrix.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_matrix; }

    StateDiagnostics diagnostics() const { return diagnose_state(m_matrix); }

private:
    Eigen::MatrixXcd m_matrix;
};

// 1/2 Tr|rho1 - rho2|
double trace_distance(const DensityMatrix& lhs, const DensityMatrix& rhs);

using SparseMatrixXc = Eigen::SparseMatrix<Complex>;

// Column-major (column-stacking) vectorization: vec(X)[j*dim + i] = X(i, j).
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& x);
Eigen::MatrixXcd matricize(const Eigen::VectorXcd& v, std::size_t dim);

/// Linear map on column-vectorized dim x dim matrices.
class Superoperator
{
public:
    Superoperator(std::size_t dim, SparseMatrixXc matrix);

    std::size_t dim() const noexcept { return m_dim; }
    std::size_t dim2() const noexcept { return m_dim * m_dim; }
    const SparseMatrixXc& matrix() const noexcept { return m_matrix; }

    // Matricized L(x).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& x) const;

private:
    std::size_t m_dim;
    SparseMatrixXc m_matrix;
};

/// H = da n_a + db n_b + dc n_c + g (a^2 b^dag c^dag + a^dag^2 b c) + F_a (a^dag + a)
Operator build_h_eff(const SystemParams& params, const FockSpace& space);

/// H_eff - i sum_o (kappa_o / 2) n_o
Operator build_non_hermitian(const SystemParams& params, const FockSpace& space);

/// dρ/dt = -i[H, ρ] + sum_o kappa_o (o ρ o^dag - 1/2 {o^dag o, ρ}), o in {a, b, c}.
Superoperator build_liouvillian(const SystemParams& params, const FockSpace& space);

/// Vectorized indices connected to the populations rho(i, i) through the
/// sparsity pattern of L, in ascending order.
std::vector<Eigen::Index> population_block(const SparseMatrixXc& l, std::size_t dim);

/// Unique fixed point of L with unit trace.
///
/// Solves L vec(ρ) = 0 with the first equation replaced by Tr ρ = 1 using a
/// sparse LU factorization, restricted to population_block(L). Throws DegenerateSteadyState when the system is
/// singular or the solution misses the residual bound.
DensityMatrix steady_state(const Superoperator& liouvillian);

inline constexpr double kSteadyStateResidualTolerance = 1e-10;
inline constexpr double kDefaultMaxStep = 0.01;

/// Integrates dρ/dt = L(ρ) with fixed-step classical RK4 up to t_final,
/// using the largest step not exceeding max_step that divides t_final evenly.
DensityMatrix evolve(const Superoperator& liouvillian, const DensityMatrix& rho0,
                     double t_final, double max_step = kDefaultMaxStep);

} // namespace blockade

#include "blockade/model.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#ifdef BLOCKADE_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif
#include <unsupported/Eigen/KroneckerProduct>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

constexpr Complex kI{0.0, 1.0};

bool all_finite(const Eigen::VectorXcd& v)
{
    return v.allFinite();
}

SparseMatrixXc sparse_of(const Operator& op)
{
    return op.matrix().sparseView();
}

SparseMatrixXc kron(const SparseMatrixXc& lhs, const SparseMatrixXc& rhs)
{
    SparseMatrixXc out = Eigen::kroneckerProduct(lhs, rhs);
    return out;
}

} // namespace

SystemParams SystemParams::constrained(double delta_a, double delta_b, double g, double f_a,
                                       double kappa_a, double kappa_b, double kappa_c)
{
    SystemParams p;
    p.delta_a = delta_a;
    p.delta_b = delta_b;
    p.delta_c = 2.0 * delta_a - delta_b;
    p.g = g;
    p.f_a = f_a;
    p.kappa_a = kappa_a;
    p.kappa_b = kappa_b;
    p.kappa_c = kappa_c;
    return p;
}

double SystemParams::delta(Mode mode) const noexcept
{
    switch (mode) {
    case Mode::a:
        return delta_a;
    case Mode::b:
        return delta_b;
    case Mode::c:
        return delta_c;
    }
    return 0.0;
}

double SystemParams::kappa(Mode mode) const noexcept
{
    switch (mode) {
    case Mode::a:
        return kappa_a;
    case Mode::b:
        return kappa_b;
    case Mode::c:
        return kappa_c;
    }
    return 0.0;
}

void SystemParams::validate() const
{
    for (double v : {delta_a, delta_b, delta_c, g, f_a, kappa_a, kappa_b, kappa_c}) {
        if (!std::isfinite(v))
            throw InvalidParameters("model parameters must be finite");
    }
    for (Mode mode : all_modes) {
        if (!(kappa(mode) > 0.0)) {
            throw InvalidParameters("kappa_" + std::string(mode_name(mode))
                                    + " must be positive");
        }
    }
    if (f_a < 0.0)
        throw InvalidParameters("drive amplitude f_a must be non-negative");
}

StateDiagnostics diagnose_state(const Eigen::MatrixXcd& rho)
{
    StateDiagnostics d;
    if (rho.size() == 0 || rho.rows() != rho.cols() || !rho.allFinite()) {
        d.hermiticity_error = std::numeric_limits<double>::infinity();
        d.trace_error = std::numeric_limits<double>::infinity();
        d.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return d;
    }
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : m_matrix(std::move(matrix))
{
    const StateDiagnostics d = diagnose_state(m_matrix);
    if (!d.valid()) {
        throw InvariantViolation("not a density matrix: hermiticity error "
                                 + std::to_string(d.hermiticity_error) + ", trace error "
                                 + std::to_string(d.trace_error) + ", min eigenvalue "
                                 + std::to_string(d.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::pure(const FockSpace& space, const FockState& state)
{
    return from_state_vector(space.basis_vector(state));
}

DensityMatrix DensityMatrix::from_state_vector(const Eigen::VectorXcd& psi)
{
    const double norm2 = psi.squaredNorm();
    if (!(norm2 > 0.0))
        throw InvariantViolation("cannot build a state from a zero vector");
    return DensityMatrix(psi * psi.adjoint() / norm2);
}

double trace_distance(const DensityMatrix& lhs, const DensityMatrix& rhs)
{
    if (lhs.dim() != rhs.dim())
        throw InvalidParameters("trace distance between states of different dimension");
    const Eigen::MatrixXcd diff = lhs.matrix() - rhs.matrix();
    const Eigen::MatrixXcd herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& x)
{
    // Eigen storage is column-major, which is exactly column stacking.
    return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

Eigen::MatrixXcd matricize(const Eigen::VectorXcd& v, std::size_t dim)
{
    const auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d)
        throw InvalidParameters("vector length does not match dim^2");
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Superoperator::Superoperator(std::size_t dim, SparseMatrixXc matrix)
    : m_dim(dim), m_matrix(std::move(matrix))
{
    const auto d2 = static_cast<Eigen::Index>(dim * dim);
    if (m_matrix.rows() != d2 || m_matrix.cols() != d2)
        throw InvalidParameters("superoperator must be dim^2 x dim^2");
    m_matrix.makeCompressed();
}

Eigen::MatrixXcd Superoperator::apply(const Eigen::MatrixXcd& x) const
{
    const Eigen::VectorXcd out = m_matrix * vectorize(x);
    return matricize(out, m_dim);
}

Operator build_h_eff(const SystemParams& params, const FockSpace& space)
{
    const Operator a = lowering_op(space, Mode::a);
    const Operator b = lowering_op(space, Mode::b);
    const Operator c = lowering_op(space, Mode::c);
    const Operator ad = a.adjoint();

    Operator h = params.delta_a * number_op(space, Mode::a)
                 + params.delta_b * number_op(space, Mode::b)
                 + params.delta_c * number_op(space, Mode::c);

    // a^2 b^dag c^dag and its adjoint
    const Operator conversion = a * a * b.adjoint() * c.adjoint();
    h += params.g * (conversion + conversion.adjoint());
    h += params.f_a * (ad + a);
    return h;
}

Operator build_non_hermitian(const SystemParams& params, const FockSpace& space)
{
    Operator h = build_h_eff(params, space);
    for (Mode mode : all_modes)
        h -= Complex{0.0, 0.5 * params.kappa(mode)} * number_op(space, mode);
    return h;
}

Superoperator build_liouvillian(const SystemParams& params, const FockSpace& space)
{
    params.validate();

    const auto n = static_cast<Eigen::Index>(space.dim());
    SparseMatrixXc id(n, n);
    id.setIdentity();

    const SparseMatrixXc h = sparse_of(build_h_eff(params, space));
    const SparseMatrixXc h_t = h.transpose();
    SparseMatrixXc l = -kI * (kron(id, h) - kron(h_t, id));

    for (Mode mode : all_modes) {
        const SparseMatrixXc o = sparse_of(lowering_op(space, mode));
        const SparseMatrixXc num = sparse_of(number_op(space, mode));
        const SparseMatrixXc o_conj = o.conjugate();
        const SparseMatrixXc num_t = num.transpose();
        l += params.kappa(mode)
             * (kron(o_conj, o) - 0.5 * kron(id, num) - 0.5 * kron(num_t, id));
    }
    l.prune(Complex{0.0, 0.0});
    return Superoperator(space.dim(), std::move(l));
}

std::vector<Eigen::Index> population_block(const SparseMatrixXc& l, std::size_t dim)
{
    const Eigen::Index n2 = l.rows();
    // adjacency of the symmetrized sparsity pattern
    const SparseMatrixXc lt = l.transpose();
    std::vector<char> seen(static_cast<std::size_t>(n2), 0);
    std::vector<Eigen::Index> stack;
    const auto d = static_cast<Eigen::Index>(dim);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index diag = i * d + i;
        if (!seen[static_cast<std::size_t>(diag)]) {
            seen[static_cast<std::size_t>(diag)] = 1;
            stack.push_back(diag);
        }
    }
    while (!stack.empty()) {
        const Eigen::Index v = stack.back();
        stack.pop_back();
        for (const SparseMatrixXc* m : {&l, &lt}) {
            for (SparseMatrixXc::InnerIterator it(*m, v); it; ++it) {
                const auto u = static_cast<std::size_t>(it.row());
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(it.row());
                }
            }
        }
    }
    std::vector<Eigen::Index> block;
    for (Eigen::Index k = 0; k < n2; ++k) {
        if (seen[static_cast<std::size_t>(k)])
            block.push_back(k);
    }
    return block;
}

DensityMatrix steady_state(const Superoperator& liouvillian)
{
    const auto n = static_cast<Eigen::Index>(liouvillian.dim());
    const Eigen::Index n2 = n * n;
    const SparseMatrixXc& l = liouvillian.matrix();

    // Only the block coupled to the populations can carry the fixed point;
    // every other block is a decaying sector whose steady component is zero.
    const std::vector<Eigen::Index> block = population_block(l, liouvillian.dim());
    const auto m = static_cast<Eigen::Index>(block.size());
    std::vector<Eigen::Index> local(static_cast<std::size_t>(n2), -1);
    for (Eigen::Index k = 0; k < m; ++k)
        local[static_cast<std::size_t>(block[static_cast<std::size_t>(k)])] = k;

    // Replace the equation for rho(0,0) by the trace constraint. Trace
    // preservation makes that equation redundant.
    const Eigen::Index trace_row = local[0];
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(l.nonZeros() + n));
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index col = block[static_cast<std::size_t>(k)];
        for (SparseMatrixXc::InnerIterator it(l, col); it; ++it) {
            const Eigen::Index row = local[static_cast<std::size_t>(it.row())];
            if (row != trace_row)
                triplets.emplace_back(row, k, it.value());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        triplets.emplace_back(trace_row, local[static_cast<std::size_t>(i * n + i)], Complex{1.0, 0.0});

    SparseMatrixXc system(m, m);
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

#ifdef BLOCKADE_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrixXc> lu;
#else
    Eigen::SparseLU<SparseMatrixXc, Eigen::COLAMDOrdering<int>> lu;
#endif
    lu.compute(system);
    if (lu.info() != Eigen::Success)
        throw DegenerateSteadyState("steady-state system is singular");

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m);
    rhs(trace_row) = 1.0;
    Eigen::VectorXcd y = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !all_finite(y))
        throw DegenerateSteadyState("steady-state solve failed");
    // one round of iterative refinement
    const Eigen::VectorXcd residual = rhs - system * y;
    y += lu.solve(residual);
    if (!all_finite(y))
        throw DegenerateSteadyState("steady-state solve produced non-finite values");

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n2);
    for (Eigen::Index k = 0; k < m; ++k)
        x(block[static_cast<std::size_t>(k)]) = y(k);

    Eigen::MatrixXcd rho = matricize(x, liouvillian.dim());
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double lrho = (l * vectorize(rho)).norm();
    if (!(lrho < kSteadyStateResidualTolerance)) {
        throw DegenerateSteadyState("steady-state residual " + std::to_string(lrho)
                                    + " exceeds tolerance");
    }
    try {
        return DensityMatrix(std::move(rho));
    } catch (const InvariantViolation& e) {
        throw DegenerateSteadyState(std::string("steady-state solution is not a state: ")
                                    + e.what());
    }
}

DensityMatrix evolve(const Superoperator& liouvillian, const DensityMatrix& rho0,
                     double t_final, double max_step)
{
    if (!std::isfinite(t_final) || t_final < 0.0)
        throw InvalidParameters("t_final must be finite and non-negative");
    if (!(max_step > 0.0) || !std::isfinite(max_step))
        throw InvalidParameters("max_step must be positive");
    if (rho0.dim() != liouvillian.dim())
        throw InvalidParameters("initial state dimension does not match the Liouvillian");
    if (t_final == 0.0)
        return rho0;

    const auto steps = static_cast<long>(std::ceil(t_final / max_step - 1e-9));
    const double dt = t_final / static_cast<double>(steps);

    const Eigen::SparseMatrix<Complex, Eigen::RowMajor> l = liouvillian.matrix();
    const auto n = static_cast<Eigen::Index>(rho0.dim());

    Eigen::VectorXcd x = vectorize(rho0.matrix());
    Eigen::VectorXcd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    Eigen::VectorXcd tmp(x.size());

    constexpr long kCheckInterval = 500;
    constexpr double kDriftTolerance = 1e-8;
    for (long step = 1; step <= steps; ++step) {
        k1.noalias() = l * x;
        tmp = x + (0.5 * dt) * k1;
        k2.noalias() = l * tmp;
        tmp = x + (0.5 * dt) * k2;
        k3.noalias() = l * tmp;
        tmp = x + dt * k3;
        k4.noalias() = l * tmp;
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (step % kCheckInterval == 0 || step == steps) {
            Complex trace{0.0, 0.0};
            for (Eigen::Index i = 0; i < n; ++i)
                trace += x(i * n + i);
            // Frobenius norm of a density matrix never exceeds 1.
            if (!all_finite(x) || std::abs(trace - 1.0) > kDriftTolerance
                || x.norm() > 1.0 + kDriftTolerance) {
                throw StepSizeError("integration left the state space at t = "
                                    + std::to_string(static_cast<double>(step) * dt)
                                    + "; reduce max_step");
            }
        }
    }

    try {
        return DensityMatrix(matricize(x, rho0.dim()));
    } catch (const InvariantViolation& e) {
        throw StepSizeError(std::string("integrated state violates invariants: ") + e.what());
    }
}

} // namespace blockade

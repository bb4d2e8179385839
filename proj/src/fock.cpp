#include "blockade/fock.hpp"

#include <cmath>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

std::string_view mode_name(Mode mode) noexcept
{
    switch (mode) {
    case Mode::a:
        return "a";
    case Mode::b:
        return "b";
    case Mode::c:
        return "c";
    }
    return "?";
}

int FockTruncation::max(Mode mode) const noexcept
{
    switch (mode) {
    case Mode::a:
        return n_a_max;
    case Mode::b:
        return n_b_max;
    case Mode::c:
        return n_c_max;
    }
    return 0;
}

std::size_t FockTruncation::dim() const noexcept
{
    return static_cast<std::size_t>(n_a_max + 1) * static_cast<std::size_t>(n_b_max + 1)
           * static_cast<std::size_t>(n_c_max + 1);
}

int FockState::count(Mode mode) const noexcept
{
    switch (mode) {
    case Mode::a:
        return m;
    case Mode::b:
        return n;
    case Mode::c:
        return p;
    }
    return 0;
}

FockSpace::FockSpace(FockTruncation trunc) : m_trunc(trunc), m_dim(0)
{
    for (Mode mode : all_modes) {
        if (m_trunc.max(mode) < 1) {
            throw InvalidTruncation("photon cutoff of mode " + std::string(mode_name(mode))
                                    + " must be at least 1, got "
                                    + std::to_string(m_trunc.max(mode)));
        }
    }
    m_dim = m_trunc.dim();
}

bool FockSpace::contains(const FockState& s) const noexcept
{
    return s.m >= 0 && s.n >= 0 && s.p >= 0 && s.m <= m_trunc.n_a_max
           && s.n <= m_trunc.n_b_max && s.p <= m_trunc.n_c_max;
}

std::size_t FockSpace::index(const FockState& s) const
{
    if (!contains(s)) {
        throw InvalidTruncation("Fock state |" + std::to_string(s.m) + std::to_string(s.n)
                                + std::to_string(s.p) + "> lies outside the truncation");
    }
    const auto nb = static_cast<std::size_t>(m_trunc.n_b_max + 1);
    const auto nc = static_cast<std::size_t>(m_trunc.n_c_max + 1);
    return static_cast<std::size_t>(s.m) * nb * nc + static_cast<std::size_t>(s.n) * nc
           + static_cast<std::size_t>(s.p);
}

FockState FockSpace::state(std::size_t index) const
{
    if (index >= m_dim)
        throw InvalidTruncation("basis index " + std::to_string(index) + " out of range");
    const auto nb = static_cast<std::size_t>(m_trunc.n_b_max + 1);
    const auto nc = static_cast<std::size_t>(m_trunc.n_c_max + 1);
    return FockState{static_cast<int>(index / (nb * nc)), static_cast<int>((index / nc) % nb),
                     static_cast<int>(index % nc)};
}

Eigen::VectorXcd FockSpace::basis_vector(const FockState& s) const
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m_dim));
    v(static_cast<Eigen::Index>(index(s))) = 1.0;
    return v;
}

Operator::Operator(Eigen::MatrixXcd matrix) : m_matrix(std::move(matrix))
{
    if (m_matrix.rows() != m_matrix.cols())
        throw InvalidParameters("operator matrix must be square");
}

Operator Operator::zero(const FockSpace& space)
{
    const auto d = static_cast<Eigen::Index>(space.dim());
    return Operator(Eigen::MatrixXcd::Zero(d, d));
}

Operator Operator::identity(const FockSpace& space)
{
    const auto d = static_cast<Eigen::Index>(space.dim());
    return Operator(Eigen::MatrixXcd::Identity(d, d));
}

Complex Operator::element(const FockSpace& space, const FockState& row, const FockState& col) const
{
    return m_matrix(static_cast<Eigen::Index>(space.index(row)),
                    static_cast<Eigen::Index>(space.index(col)));
}

double Operator::hermiticity_error() const
{
    if (m_matrix.size() == 0)
        return 0.0;
    return (m_matrix - m_matrix.adjoint()).cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& rhs)
{
    if (dim() != rhs.dim())
        throw InvalidParameters("operator dimension mismatch");
    m_matrix += rhs.m_matrix;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs)
{
    if (dim() != rhs.dim())
        throw InvalidParameters("operator dimension mismatch");
    m_matrix -= rhs.m_matrix;
    return *this;
}

Operator& Operator::operator*=(Complex scale)
{
    m_matrix *= scale;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs)
{
    if (lhs.dim() != rhs.dim())
        throw InvalidParameters("operator dimension mismatch");
    return Operator(lhs.m_matrix * rhs.m_matrix);
}

Operator commutator(const Operator& lhs, const Operator& rhs)
{
    return lhs * rhs - rhs * lhs;
}

FockSpace build_space(const FockTruncation& trunc)
{
    return FockSpace(trunc);
}

Operator lowering_op(const FockSpace& space, Mode mode)
{
    Operator op = Operator::zero(space);
    Eigen::MatrixXcd m = op.matrix();
    for (std::size_t col = 0; col < space.dim(); ++col) {
        FockState s = space.state(col);
        const int k = s.count(mode);
        if (k == 0)
            continue;
        FockState lowered = s;
        switch (mode) {
        case Mode::a:
            --lowered.m;
            break;
        case Mode::b:
            --lowered.n;
            break;
        case Mode::c:
            --lowered.p;
            break;
        }
        m(static_cast<Eigen::Index>(space.index(lowered)), static_cast<Eigen::Index>(col)) =
            std::sqrt(static_cast<double>(k));
    }
    return Operator(std::move(m));
}

Operator raising_op(const FockSpace& space, Mode mode)
{
    return lowering_op(space, mode).adjoint();
}

Operator number_op(const FockSpace& space, Mode mode)
{
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < space.dim(); ++i)
        diag(static_cast<Eigen::Index>(i)) = static_cast<double>(space.state(i).count(mode));
    return Operator(diag.asDiagonal().toDenseMatrix());
}

} // namespace blockade

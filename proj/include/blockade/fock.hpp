#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace blockade {

using Complex = std::complex<double>;

enum class Mode { a, b, c };

inline constexpr std::array<Mode, 3> all_modes{Mode::a, Mode::b, Mode::c};

std::string_view mode_name(Mode mode) noexcept;

// Photon-number cutoffs per mode. Each maximum must be at least 1.
struct FockTruncation
{
    int n_a_max = 5;
    int n_b_max = 2;
    int n_c_max = 2;

    int max(Mode mode) const noexcept;
    std::size_t dim() const noexcept;

    friend bool operator==(const FockTruncation&, const FockTruncation&) = default;
};

// Occupation label |m n p> of the three modes.
struct FockState
{
    int m = 0;
    int n = 0;
    int p = 0;

    int count(Mode mode) const noexcept;

    friend bool operator==(const FockState&, const FockState&) = default;
};

/// Truncated three-mode Fock basis.
///
/// Basis ordering is fixed with mode a slowest and mode c fastest:
///   index(m, n, p) = m (n_b_max+1)(n_c_max+1) + n (n_c_max+1) + p.
/// Every matrix and vectorized density matrix in the library uses it.
class FockSpace
{
public:
    explicit FockSpace(FockTruncation trunc);

    const FockTruncation& truncation() const noexcept { return m_trunc; }
    std::size_t dim() const noexcept { return m_dim; }

    bool contains(const FockState& state) const noexcept;
    std::size_t index(const FockState& state) const;
    FockState state(std::size_t index) const;

    Eigen::VectorXcd basis_vector(const FockState& state) const;

    friend bool operator==(const FockSpace& lhs, const FockSpace& rhs) noexcept
    {
        return lhs.m_trunc == rhs.m_trunc;
    }

private:
    FockTruncation m_trunc;
    std::size_t m_dim;
};

/// Square complex matrix on a FockSpace.
class Operator
{
public:
    Operator() = default;
    explicit Operator(Eigen::MatrixXcd matrix);

    static Operator zero(const FockSpace& space);
    static Operator identity(const FockSpace& space);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_matrix.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_matrix; }

    Complex element(const FockSpace& space, const FockState& row, const FockState& col) const;

    Operator adjoint() const { return Operator(m_matrix.adjoint()); }

    // max |O - O^dagger| over all entries
    double hermiticity_error() const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex scale);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, Complex scale) { return lhs *= scale; }
    friend Operator operator*(Complex scale, Operator rhs) { return rhs *= scale; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

private:
    Eigen::MatrixXcd m_matrix;
};

// Commutator [lhs, rhs].
Operator commutator(const Operator& lhs, const Operator& rhs);

FockSpace build_space(const FockTruncation& trunc);

Operator lowering_op(const FockSpace& space, Mode mode);
Operator raising_op(const FockSpace& space, Mode mode);
Operator number_op(const FockSpace& space, Mode mode);

} // namespace blockade

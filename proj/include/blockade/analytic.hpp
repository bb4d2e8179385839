#pragma once

#include <vector>

#include <Eigen/Dense>

#include "blockade/model.hpp"

namespace blockade {

/// Weak-drive amplitudes of |000>, |100>, |200>, |011> with c000 = 1.
struct AmplitudeVector
{
    Complex c000{1.0, 0.0};
    Complex c100;
    Complex c200;
    Complex c011;
};

/// Hamiltonian restricted to the closed two-excitation manifold
/// {|200>, |011>} with the drive switched off.
struct ManifoldMatrix
{
    Eigen::Matrix2cd matrix;
};

struct ManifoldFrequencies
{
    double plus = 0.0;
    double minus = 0.0;

    double splitting() const noexcept { return plus - minus; }
};

// Largest drive for which the amplitude truncation is trusted.
inline constexpr double kWeakDriveLimit = 0.05;

ManifoldMatrix manifold_matrix(const SystemParams& params);

// Eigenvalues of manifold_matrix, plus >= minus.
ManifoldFrequencies manifold_eigenfrequencies(const SystemParams& params);

/// Steady-state solution of the amplitude equations obtained by projecting
/// i d|psi>/dt = H_nh |psi> on <100|, <200|, <011| with c000 = 1:
///
///   F + (da - i ka/2) c100 + sqrt2 F c200                  = 0
///   sqrt2 F c100 + (2 da - i ka) c200 + sqrt2 g c011        = 0
///   sqrt2 g c200 + (db + dc - i (kb + kc)/2) c011           = 0
///
/// Requires f_a > 0. Decay rates may be zero here; a singular system then
/// raises DegenerateParameters.
AmplitudeVector steady_amplitudes(const SystemParams& params);

/// 2 |c200|^2 / |c100|^4 from steady_amplitudes. Requires 0 < f_a <= kWeakDriveLimit.
double weak_drive_g2(const SystemParams& params);

/// start, start + step, ... up to stop (inclusive within half a step).
std::vector<double> detuning_grid(double start, double stop, double step);

/// Index of the smallest value. Exact ties go to the sample closest to zero,
/// then to the earliest sample.
std::size_t argmin_toward_zero(const std::vector<double>& grid, const std::vector<double>& values);

/// Scans delta_a over the grid and returns the sample minimizing
/// weak_drive_g2. The other parameters are taken from `params` and must
/// satisfy delta_b = -delta_c.
double optimal_detuning_scan(const SystemParams& params, double start, double stop, double step);

} // namespace blockade

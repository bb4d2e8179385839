#include "blockade/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void require_finite(const SystemParams& p)
{
    for (double v : {p.delta_a, p.delta_b, p.delta_c, p.g, p.f_a, p.kappa_a, p.kappa_b,
                     p.kappa_c}) {
        if (!std::isfinite(v))
            throw InvalidParameters("model parameters must be finite");
    }
}

} // namespace

ManifoldMatrix manifold_matrix(const SystemParams& params)
{
    require_finite(params);
    ManifoldMatrix m;
    m.matrix << 2.0 * params.delta_a, kSqrt2 * params.g,
                kSqrt2 * params.g, params.delta_b + params.delta_c;
    return m;
}

ManifoldFrequencies manifold_eigenfrequencies(const SystemParams& params)
{
    const Eigen::Matrix2d m = manifold_matrix(params).matrix.real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m, Eigen::EigenvaluesOnly);
    // ascending order
    return ManifoldFrequencies{es.eigenvalues()(1), es.eigenvalues()(0)};
}

AmplitudeVector steady_amplitudes(const SystemParams& params)
{
    require_finite(params);
    if (!(params.f_a > 0.0))
        throw InvalidParameters("amplitude equations need a positive drive f_a");
    for (Mode mode : all_modes) {
        if (params.kappa(mode) < 0.0)
            throw InvalidParameters("decay rates must be non-negative");
    }

    const Complex i{0.0, 1.0};
    const double f = params.f_a;
    Eigen::Matrix3cd m;
    m << params.delta_a - 0.5 * i * params.kappa_a, kSqrt2 * f, 0.0,
         kSqrt2 * f, 2.0 * params.delta_a - i * params.kappa_a, kSqrt2 * params.g,
         0.0, kSqrt2 * params.g,
         params.delta_b + params.delta_c - 0.5 * i * (params.kappa_b + params.kappa_c);
    const Eigen::Vector3cd rhs(-f, 0.0, 0.0);

    Eigen::FullPivLU<Eigen::Matrix3cd> lu(m);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible())
        throw DegenerateParameters("amplitude equations are singular at these parameters");
    const Eigen::Vector3cd x = lu.solve(rhs);
    if (!x.allFinite())
        throw DegenerateParameters("amplitude equations produced non-finite values");

    AmplitudeVector amp;
    amp.c100 = x(0);
    amp.c200 = x(1);
    amp.c011 = x(2);
    return amp;
}

double weak_drive_g2(const SystemParams& params)
{
    if (params.f_a > kWeakDriveLimit) {
        throw InvalidParameters("weak-drive estimate needs f_a <= " + std::to_string(kWeakDriveLimit)
                                + ", got " + std::to_string(params.f_a));
    }
    const AmplitudeVector amp = steady_amplitudes(params);
    const double p1 = std::norm(amp.c100);
    return 2.0 * std::norm(amp.c200) / (p1 * p1);
}

std::vector<double> detuning_grid(double start, double stop, double step)
{
    if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step))
        throw InvalidRange("detuning grid needs finite bounds and a positive step");
    if (!(start <= stop))
        throw InvalidRange("empty detuning range [" + std::to_string(start) + ", "
                           + std::to_string(stop) + "]");
    const auto intervals = static_cast<long>(std::floor((stop - start) / step + 0.5));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(intervals + 1));
    for (long k = 0; k <= intervals; ++k)
        grid.push_back(start + static_cast<double>(k) * step);
    return grid;
}

std::size_t argmin_toward_zero(const std::vector<double>& grid, const std::vector<double>& values)
{
    if (grid.empty() || grid.size() != values.size())
        throw InvalidRange("argmin needs a non-empty grid with one value per sample");
    std::size_t best = 0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] < values[best]
            || (values[k] == values[best] && std::abs(grid[k]) < std::abs(grid[best]))) {
            best = k;
        }
    }
    return best;
}

double optimal_detuning_scan(const SystemParams& params, double start, double stop, double step)
{
    if (params.delta_b != -params.delta_c)
        throw InvalidParameters("detuning scan expects delta_b = -delta_c");
    const std::vector<double> grid = detuning_grid(start, stop, step);
    std::vector<double> values;
    values.reserve(grid.size());
    SystemParams p = params;
    for (double delta_a : grid) {
        p.delta_a = delta_a;
        values.push_back(weak_drive_g2(p));
    }
    return grid[argmin_toward_zero(grid, values)];
}

} // namespace blockade

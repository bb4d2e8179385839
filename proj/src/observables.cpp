#include "blockade/observables.hpp"

#include <cmath>
#include <limits>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

constexpr double kImaginaryTolerance = 1e-10;

double real_expectation(const DensityMatrix& rho, const Operator& op, const char* what)
{
    const Complex value = (rho.matrix() * op.matrix()).trace();
    if (std::abs(value.imag()) > kImaginaryTolerance) {
        throw InvariantViolation(std::string(what) + " has imaginary part "
                                 + std::to_string(value.imag()));
    }
    return value.real();
}

void check_dims(const DensityMatrix& rho, const FockSpace& space)
{
    if (rho.dim() != space.dim())
        throw InvalidParameters("density matrix does not live on this Fock space");
}

} // namespace

double mean_occupation(const DensityMatrix& rho, const FockSpace& space, Mode mode)
{
    check_dims(rho, space);
    return real_expectation(rho, number_op(space, mode), "mean occupation");
}

double top_level_population(const DensityMatrix& rho, const FockSpace& space, Mode mode)
{
    check_dims(rho, space);
    const int top = space.truncation().max(mode);
    double population = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        if (space.state(i).count(mode) == top)
            population += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return population;
}

CorrelationEstimate g2_zero(const DensityMatrix& rho, const FockSpace& space, Mode mode)
{
    check_dims(rho, space);
    const Operator lower = lowering_op(space, mode);
    const Operator raise = lower.adjoint();

    const double occupation = real_expectation(rho, raise * lower, "mean occupation");
    if (!(occupation > kOccupationCutoff)) {
        throw UndefinedCorrelation("g2 undefined: mean occupation of mode "
                                   + std::string(mode_name(mode)) + " is "
                                   + std::to_string(occupation));
    }
    const double pairs = real_expectation(rho, raise * raise * lower * lower, "pair moment");

    CorrelationEstimate est;
    est.value = pairs / (occupation * occupation);
    est.top_level_population = top_level_population(rho, space, mode);
    est.truncation_warning = est.top_level_population > kTruncationLeakThreshold;
    return est;
}

ObservableRecord ObservableRecord::gap(double x, std::string reason)
{
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ObservableRecord r;
    r.x = x;
    r.g2_a = nan;
    r.n_a = nan;
    r.n_b = nan;
    r.n_c = nan;
    r.diagnostics = StateDiagnostics{nan, nan, nan};
    r.failure = std::move(reason);
    return r;
}

ObservableRecord evaluate_observables(double x, const DensityMatrix& rho, const FockSpace& space)
{
    ObservableRecord r;
    r.x = x;
    const CorrelationEstimate g2 = g2_zero(rho, space, Mode::a);
    r.g2_a = g2.value;
    r.truncation_warning = g2.truncation_warning;
    r.n_a = mean_occupation(rho, space, Mode::a);
    r.n_b = mean_occupation(rho, space, Mode::b);
    r.n_c = mean_occupation(rho, space, Mode::c);
    r.diagnostics = rho.diagnostics();
    return r;
}

} // namespace blockade

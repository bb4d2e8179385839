#include <doctest.h>

#include <random>

#include "blockade/errors.hpp"
#include "blockade/observables.hpp"
#include "oracles.hpp"

using namespace blockade;

namespace {

DensityMatrix solve(const SystemParams& p, const FockSpace& space)
{
    return steady_state(build_liouvillian(p, space));
}

SystemParams fig2_params()
{
    SystemParams p;
    p.f_a = 0.01;
    p.g = 3.0;
    p.delta_b = 1.0;
    p.delta_c = -1.0;
    return p;
}

} // namespace

TEST_CASE("mean occupation of basis states")
{
    const FockSpace space = build_space({5, 2, 2});
    const DensityMatrix vac = DensityMatrix::pure(space, {});
    for (Mode mode : all_modes)
        CHECK(mean_occupation(vac, space, mode) == 0.0);
    const DensityMatrix one = DensityMatrix::pure(space, {1, 0, 0});
    CHECK(mean_occupation(one, space, Mode::a) == 1.0);
    CHECK(mean_occupation(one, space, Mode::b) == 0.0);
    const DensityMatrix mixed = DensityMatrix::pure(space, {3, 1, 2});
    CHECK(mean_occupation(mixed, space, Mode::c) == 2.0);
}

TEST_CASE("mean occupation of the decoupled weak-drive steady state")
{
    const FockSpace space = build_space({5, 2, 2});
    SystemParams p;
    p.f_a = 0.01;
    const DensityMatrix rho = solve(p, space);
    CHECK(mean_occupation(rho, space, Mode::a) == doctest::Approx(4e-4).epsilon(1e-9));
    CHECK(std::abs(mean_occupation(rho, space, Mode::b)) < 1e-15);
}

TEST_CASE("g2 of simple states")
{
    const FockSpace space = build_space({5, 2, 2});
    CHECK(g2_zero(DensityMatrix::pure(space, {1, 0, 0}), space, Mode::a).value == 0.0);
    CHECK_THROWS_AS(g2_zero(DensityMatrix::pure(space, {}), space, Mode::a), UndefinedCorrelation);
    // |2> has <a^dag^2 a^2> = 2, <n> = 2
    CHECK(g2_zero(DensityMatrix::pure(space, {2, 0, 0}), space, Mode::a).value
          == doctest::Approx(0.5));
}

TEST_CASE("g2 of any vacuum / single-photon mixture is exactly zero")
{
    const FockSpace space = build_space({5, 2, 2});
    const auto i0 = static_cast<Eigen::Index>(space.index({0, 0, 0}));
    const auto i1 = static_cast<Eigen::Index>(space.index({1, 0, 0}));
    for (int k = 0; k < 100; ++k) {
        const double p = k / 100.0;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(54, 54);
        m(i0, i0) = p;
        m(i1, i1) = 1.0 - p;
        CHECK(g2_zero(DensityMatrix(m), space, Mode::a).value == 0.0);
    }
}

TEST_CASE("g2 of the decoupled weak-drive steady state is coherent")
{
    const FockSpace space = build_space({5, 2, 2});
    SystemParams p;
    p.f_a = 0.01;
    const CorrelationEstimate g2 = g2_zero(solve(p, space), space, Mode::a);
    CHECK(g2.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_FALSE(g2.truncation_warning);
}

TEST_CASE("normally ordered moment agrees with marginal summation")
{
    const FockSpace space = build_space({5, 2, 2});
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho(oracle::random_density(space.dim(), rng));
        CHECK(std::abs(g2_zero(rho, space, Mode::a).value - oracle::marginal_g2(rho.matrix(), space))
              < 1e-12);
    }
    for (double delta_a : {-1.0, 0.0, 2.0}) {
        SystemParams p = fig2_params();
        p.delta_a = delta_a;
        const DensityMatrix rho = solve(p, space);
        const double g2 = g2_zero(rho, space, Mode::a).value;
        CHECK(std::abs(g2 - oracle::marginal_g2(rho.matrix(), space)) < 1e-12 * std::max(1.0, g2));
    }
}

TEST_CASE("g2 sits on the weak-drive plateau at the reference parameters")
{
    const FockSpace space = build_space({5, 2, 2});
    SystemParams p = fig2_params();
    const double full = g2_zero(solve(p, space), space, Mode::a).value;
    p.f_a *= 0.5;
    const double half = g2_zero(solve(p, space), space, Mode::a).value;
    CHECK(std::abs(half - full) / full < 0.05);
}

TEST_CASE("truncation leak warning")
{
    const FockSpace space = build_space({2, 1, 1});
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(12, 12);
    const auto top = static_cast<Eigen::Index>(space.index({2, 0, 0}));
    const auto one = static_cast<Eigen::Index>(space.index({1, 0, 0}));
    m(one, one) = 1.0 - 1e-5;
    m(top, top) = 1e-5;
    const CorrelationEstimate est = g2_zero(DensityMatrix(m), space, Mode::a);
    CHECK(est.truncation_warning);
    CHECK(est.top_level_population == doctest::Approx(1e-5));

    m(one, one) = 1.0 - 1e-7;
    m(top, top) = 1e-7;
    CHECK_FALSE(g2_zero(DensityMatrix(m), space, Mode::a).truncation_warning);

    const FockSpace full = build_space({5, 2, 2});
    CHECK_FALSE(g2_zero(solve(fig2_params(), full), full, Mode::a).truncation_warning);
}

TEST_CASE("evaluate_observables fills a record")
{
    const FockSpace space = build_space({5, 2, 2});
    const DensityMatrix rho = solve(fig2_params(), space);
    const ObservableRecord r = evaluate_observables(0.0, rho, space);
    CHECK_FALSE(r.is_gap());
    CHECK(r.g2_a > 0.0);
    CHECK(r.n_a > 0.0);
    CHECK(r.n_b >= 0.0);
    CHECK(r.n_c >= 0.0);
    CHECK(r.diagnostics.valid());

    const ObservableRecord gap = ObservableRecord::gap(1.5, "boom");
    CHECK(gap.is_gap());
    CHECK(std::isnan(gap.g2_a));
    CHECK(gap.x == 1.5);
}

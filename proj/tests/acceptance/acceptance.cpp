// One line per acceptance criterion; exit status 1 if any of them fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "blockade/analytic.hpp"
#include "blockade/errors.hpp"
#include "blockade/model.hpp"
#include "blockade/observables.hpp"
#include "blockade/sweep.hpp"

using namespace blockade;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(bool ok, const char* name, const std::string& detail)
{
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned worker_count()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

// Every parameter point visited by the acceptance run, kept for the
// truncation-convergence and invariant checks at the end.
struct Visited
{
    SystemParams params;
    ObservableRecord record;
};

std::vector<Visited> g_visited;

void remember(const SweepSpec& spec, const SweepResult& result)
{
    for (const ObservableRecord& rec : result.records)
        g_visited.push_back({spec.params_at(rec.x), rec});
}

std::size_t argmin_g2(const std::vector<ObservableRecord>& rs)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < rs.size(); ++k)
        if (rs[k].g2_a < rs[best].g2_a)
            best = k;
    return best;
}

std::size_t nearest_to_zero(const std::vector<ObservableRecord>& rs)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < rs.size(); ++k)
        if (std::abs(rs[k].x) < std::abs(rs[best].x))
            best = k;
    return best;
}

bool any_gap(const SweepResult& r)
{
    return std::any_of(r.records.begin(), r.records.end(), [](auto& rec) { return rec.is_gap(); });
}

SweepSpec fig2_spec(double f_a)
{
    SweepSpec s;
    s.axis = SweepAxis::delta_a;
    s.start = -10.0;
    s.stop = 10.0;
    s.points = 401;
    s.base.g = 3.0;
    s.base.f_a = f_a;
    s.base.delta_b = 1.0;
    s.base.delta_c = -1.0;
    return s;
}

void manifold_splitting()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> coupling(0.0, 10.0);
    std::uniform_real_distribution<double> detuning(-5.0, 5.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        SystemParams p;
        p.g = coupling(rng);
        p.delta_b = detuning(rng);
        p.delta_c = -p.delta_b;
        const ManifoldFrequencies w = manifold_eigenfrequencies(p);
        const double root2g = std::sqrt(2.0) * p.g;
        const double scale = std::max(1.0, root2g);
        worst = std::max({worst, std::abs(w.plus - root2g) / scale, std::abs(w.minus + root2g) / scale,
                          std::abs(w.splitting() - 2.0 * root2g) / scale});
    }
    const double elapsed = seconds_since(t0);
    report(worst < 1e-14 && elapsed < 1.0, "manifold splitting",
           fmt("100 random g, max relative error %.3e, %.3f s", worst, elapsed));
}

void decoupled_cavity()
{
    const auto t0 = Clock::now();
    SystemParams p;
    p.f_a = 0.01;
    const FockSpace space{FockTruncation{}};
    const ObservableRecord rec = solve_point(p, space, 0.0);
    g_visited.push_back({p, rec});
    const double elapsed = seconds_since(t0);
    const bool ok = !rec.is_gap() && std::abs(rec.n_a / 4e-4 - 1.0) < 0.01 && std::abs(rec.g2_a - 1.0) < 1e-3;
    report(ok, "decoupled cavity", fmt("n_a = %.6e (4e-4 +- 1%%), g2 = %.6f (1 +- 1e-3), %.3f s", rec.n_a, rec.g2_a, elapsed));
}

void fig2()
{
    const SweepSpec spec = fig2_spec(0.01);
    auto t0 = Clock::now();
    const SweepResult r = run_sweep(spec, worker_count());
    const double elapsed = seconds_since(t0);
    remember(spec, r);

    const SweepSpec weak_spec = fig2_spec(0.001);
    t0 = Clock::now();
    const SweepResult weak = run_sweep(weak_spec, worker_count());
    const double weak_elapsed = seconds_since(t0);
    remember(weak_spec, weak);

    const double closed_form = 1.0 / std::pow(1.0 + 2.0 * 9.0, 2);
    const std::size_t centre = nearest_to_zero(r.records);
    const std::size_t dip = argmin_g2(r.records);
    const double ratio = r.records[dip].g2_a / closed_form;
    const std::size_t weak_dip = argmin_g2(weak.records);
    const double weak_ratio = weak.records[weak_dip].g2_a / closed_form;
    const bool ok = !any_gap(r) && !any_gap(weak) && r.records.size() == 401 && dip == centre
        && nearest_to_zero(weak.records) == weak_dip && ratio > 0.5 && ratio < 2.0
        && std::abs(weak_ratio - 1.0) < 0.1 && elapsed < 120.0 && weak_elapsed < 120.0;
    report(ok, "detuning sweep g2 dip",
           fmt("argmin at delta_a = %g, g2_min = %.6e vs %.6e (ratio %.4f, f=0.001 ratio %.4f), %.1f s / %.1f s",
               r.records[dip].x, r.records[dip].g2_a, closed_form, ratio, weak_ratio, elapsed, weak_elapsed));

    std::size_t peak = 0;
    for (std::size_t k = 1; k < r.records.size(); ++k)
        if (r.records[k].n_a > r.records[peak].n_a)
            peak = k;
    report(!any_gap(r) && peak == centre, "detuning sweep n_a peak",
           fmt("argmax at delta_a = %g, n_a_max = %.6e", r.records[peak].x, r.records[peak].n_a));
}

void fig3()
{
    SweepSpec spec;
    spec.axis = SweepAxis::g;
    spec.scale = GridScale::log;
    spec.start = 0.1;
    spec.stop = 10.0;
    spec.points = 200;
    spec.base.f_a = 0.01;
    spec.base.delta_b = 2.0;
    spec.base.delta_c = -2.0;
    const auto t0 = Clock::now();
    const SweepResult r = run_sweep(spec, worker_count());
    const double elapsed = seconds_since(t0);
    remember(spec, r);

    double largest = 0.0;
    bool decreasing = true;
    for (std::size_t k = 0; k < r.records.size(); ++k) {
        largest = std::max(largest, r.records[k].g2_a);
        if (k > 0 && !(r.records[k].g2_a < r.records[k - 1].g2_a))
            decreasing = false;
    }
    const bool ok = !any_gap(r) && r.records.size() == 200 && largest < 1.0 && decreasing && elapsed < 60.0;
    report(ok, "coupling sweep g2",
           fmt("max g2 = %.6f, strictly decreasing: %s, g2(10) = %.6e, %.1f s", largest,
               decreasing ? "yes" : "no", r.records.back().g2_a, elapsed));
}

void oracle_equivalence()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> detuning(-5.0, 5.0);
    std::uniform_real_distribution<double> coupling(0.0, 10.0);
    std::uniform_real_distribution<double> drive(0.001, 0.02);
    std::uniform_real_distribution<double> decay(0.5, 2.0);
    const FockSpace space{FockTruncation{}};
    const DensityMatrix vacuum = DensityMatrix::pure(space, FockState{0, 0, 0});

    const auto t0 = Clock::now();
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < 10; ++k) {
        SystemParams p;
        p.delta_a = detuning(rng);
        p.delta_b = detuning(rng);
        p.delta_c = detuning(rng);
        p.g = coupling(rng);
        p.f_a = drive(rng);
        p.kappa_a = decay(rng);
        p.kappa_b = decay(rng);
        p.kappa_c = decay(rng);
        try {
            const Superoperator l = build_liouvillian(p, space);
            const DensityMatrix solved = steady_state(l);
            const DensityMatrix evolved = evolve(l, vacuum, 100.0);
            worst = std::max(worst, trace_distance(solved, evolved));
            ObservableRecord rec = evaluate_observables(0.0, solved, space);
            rec.diagnostics = solved.diagnostics();
            g_visited.push_back({p, rec});
        } catch (const Error& e) {
            std::printf("  random point %d failed: %s\n", k, e.what());
            ok = false;
        }
    }
    report(ok && worst < 1e-6, "steady state vs time evolution",
           fmt("10 random points, max trace distance %.3e (< 1e-6), %.1f s", worst, seconds_since(t0)));
}

void analytic_agreement()
{
    SystemParams p = fig2_spec(0.01).base;
    const double step = 0.01;
    const std::vector<double> grid = detuning_grid(-10.0, 10.0, step);
    const double analytic_opt = optimal_detuning_scan(p, -10.0, 10.0, step);

    const auto t0 = Clock::now();
    const FockSpace space{FockTruncation{}};
    std::vector<double> values(grid.size());
    bool gaps = false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        p.delta_a = grid[k];
        const ObservableRecord rec = solve_point(p, space, grid[k]);
        g_visited.push_back({p, rec});
        gaps = gaps || rec.is_gap();
        values[k] = rec.g2_a;
    }
    const double numeric_opt = grid[argmin_toward_zero(grid, values)];
    const double slack = 1e-9;
    const bool ok = !gaps && std::abs(analytic_opt - numeric_opt) <= step + slack
        && std::abs(analytic_opt) <= step + slack && std::abs(numeric_opt) <= step + slack;
    report(ok, "optimal detuning",
           fmt("%zu-point grid, step %g: analytic %g, master equation %g, %.1f s", grid.size(), step,
               analytic_opt, numeric_opt, seconds_since(t0)));
}

void truncation_convergence()
{
    const FockTruncation doubled{10, 2, 2};
    const FockSpace space{doubled};
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::size_t failed = 0;
    std::size_t worst_at = 0;
    // Points are independent; hand them out like run_sweep does.
    std::vector<double> changes(g_visited.size(), 0.0);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < g_visited.size();) {
            const ObservableRecord fine = solve_point(g_visited[k].params, space, 0.0);
            const double coarse = g_visited[k].record.g2_a;
            changes[k] = fine.is_gap() ? INFINITY : std::abs(fine.g2_a - coarse) / std::abs(fine.g2_a);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < worker_count(); ++w)
            pool.emplace_back(work);
        work();
    }
    for (std::size_t k = 0; k < changes.size(); ++k) {
        if (!std::isfinite(changes[k]))
            ++failed;
        else if (changes[k] > worst) {
            worst = changes[k];
            worst_at = k;
        }
    }
    report(failed == 0 && worst < 0.01, "truncation convergence",
           fmt("%zu points at n_a_max 5 -> 10, max relative g2 change %.3e (at g=%g, delta_a=%g), %zu failed, %.1f s",
               g_visited.size(), worst, g_visited[worst_at].params.g, g_visited[worst_at].params.delta_a, failed,
               seconds_since(t0)));
}

void invariants()
{
    double herm = 0.0, trace = 0.0, min_eig = INFINITY;
    std::size_t bad = 0;
    for (const Visited& v : g_visited) {
        if (v.record.is_gap()) {
            ++bad;
            continue;
        }
        const StateDiagnostics& d = v.record.diagnostics;
        herm = std::max(herm, d.hermiticity_error);
        trace = std::max(trace, d.trace_error);
        min_eig = std::min(min_eig, d.min_eigenvalue);
        if (!(d.hermiticity_error <= kHermiticityTolerance && d.trace_error <= kTraceTolerance
              && d.min_eigenvalue >= -kPositivityTolerance))
            ++bad;
    }
    report(bad == 0, "density-matrix invariants",
           fmt("%zu steady states, max hermiticity error %.2e, max trace error %.2e, min eigenvalue %.2e, %zu violations",
               g_visited.size(), herm, trace, min_eig, bad));
}

} // namespace

int main()
{
    try {
        manifold_splitting();
        decoupled_cavity();
        fig2();
        fig3();
        oracle_equivalence();
        analytic_agreement();
        truncation_convergence();
        invariants();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance run aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d criteria failed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
    return g_failures == 0 ? 0 : 1;
}

// Command-line front end: single-point solves, config-driven sweeps and the
// weak-drive analytic estimates.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "blockade/analytic.hpp"
#include "blockade/config.hpp"
#include "blockade/errors.hpp"
#include "blockade/observables.hpp"
#include "blockade/sweep.hpp"

using namespace blockade;

namespace {

constexpr double kOracleTime = 100.0;

struct ParamFlags
{
    std::optional<double> delta_a, delta_b, delta_c, g, f_a, kappa_a, kappa_b, kappa_c;

    void attach(CLI::App* app)
    {
        app->add_option("--delta-a", delta_a, "detuning of mode a (units of kappa)");
        app->add_option("--delta-b", delta_b, "detuning of mode b");
        app->add_option("--delta-c", delta_c, "detuning of mode c");
        app->add_option("--g", g, "four-wave-mixing coupling");
        app->add_option("--f-a", f_a, "drive amplitude on mode a");
        app->add_option("--kappa-a", kappa_a, "decay rate of mode a");
        app->add_option("--kappa-b", kappa_b, "decay rate of mode b");
        app->add_option("--kappa-c", kappa_c, "decay rate of mode c");
    }

    void apply(SystemParams& p) const
    {
        p.delta_a = delta_a.value_or(p.delta_a);
        p.delta_b = delta_b.value_or(p.delta_b);
        p.delta_c = delta_c.value_or(p.delta_c);
        p.g = g.value_or(p.g);
        p.f_a = f_a.value_or(p.f_a);
        p.kappa_a = kappa_a.value_or(p.kappa_a);
        p.kappa_b = kappa_b.value_or(p.kappa_b);
        p.kappa_c = kappa_c.value_or(p.kappa_c);
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FockTruncation parse_trunc(const std::string& text)
{
    FockTruncation t;
    int values[3] = {0, 0, 0};
    std::string_view rest = text;
    for (int k = 0; k < 3; ++k) {
        const std::size_t comma = rest.find(',');
        if ((k < 2) == (comma == std::string_view::npos))
            throw InvalidTruncation("--trunc expects three comma-separated integers, got '" + text + "'");
        const std::string_view field = rest.substr(0, comma);
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), values[k]);
        if (ec != std::errc() || ptr != field.data() + field.size())
            throw InvalidTruncation("--trunc expects integers, got '" + text + "'");
        if (k < 2)
            rest = rest.substr(comma + 1);
    }
    t.n_a_max = values[0];
    t.n_b_max = values[1];
    t.n_c_max = values[2];
    FockSpace check(t); // validates
    return t;
}

void print_kv(std::ostream& out, std::string_view key, double value)
{
    out << key << " = " << format_value(value) << '\n';
}

void print_params(std::ostream& out, const SystemParams& p)
{
    print_kv(out, "delta_a", p.delta_a);
    print_kv(out, "delta_b", p.delta_b);
    print_kv(out, "delta_c", p.delta_c);
    print_kv(out, "g", p.g);
    print_kv(out, "f_a", p.f_a);
    print_kv(out, "kappa_a", p.kappa_a);
    print_kv(out, "kappa_b", p.kappa_b);
    print_kv(out, "kappa_c", p.kappa_c);
}

double oracle_distance(const SystemParams& p, const FockSpace& space, const DensityMatrix& rho)
{
    const Superoperator l = build_liouvillian(p, space);
    const DensityMatrix evolved = evolve(l, DensityMatrix::pure(space, FockState{}), kOracleTime);
    return trace_distance(evolved, rho);
}

int run_point(const std::optional<std::string>& config, const ParamFlags& flags,
              const std::optional<std::string>& trunc, bool oracle)
{
    SystemParams p = config ? parse_params(read_file(*config)) : SystemParams{};
    flags.apply(p);
    p.validate();
    const FockSpace space(trunc ? parse_trunc(*trunc) : FockTruncation{});

    const DensityMatrix rho = steady_state(build_liouvillian(p, space));
    const ObservableRecord r = evaluate_observables(0.0, rho, space);
    const CorrelationEstimate g2 = g2_zero(rho, space, Mode::a);

    print_params(std::cout, p);
    print_kv(std::cout, "g2_a", r.g2_a);
    print_kv(std::cout, "n_a", r.n_a);
    print_kv(std::cout, "n_b", r.n_b);
    print_kv(std::cout, "n_c", r.n_c);
    print_kv(std::cout, "top_level_population_a", g2.top_level_population);
    std::cout << "truncation_warning = " << (g2.truncation_warning ? "yes" : "no") << '\n';
    if (oracle)
        print_kv(std::cout, "oracle_trace_distance", oracle_distance(p, space, rho));
    if (g2.truncation_warning)
        std::cerr << "warning: top Fock level of mode a is populated; raise --trunc\n";
    return 0;
}

int run_sweep_cmd(const std::string& config, const std::optional<std::string>& out_path,
                  const std::optional<std::string>& trunc, unsigned threads, bool oracle)
{
    ParsedConfig cfg = parse_config(read_file(config));
    if (trunc)
        cfg.sweep.trunc = parse_trunc(*trunc);

    const SweepResult result = run_sweep(cfg.sweep, threads);
    const std::string csv = emit_csv(result);
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out)
            throw Error("cannot write '" + *out_path + "'");
        out << csv;
    } else {
        std::cout << csv;
    }

    std::size_t gaps = 0;
    std::size_t warnings = 0;
    for (const ObservableRecord& r : result.records) {
        if (r.is_gap()) {
            ++gaps;
            std::cerr << "gap at x = " << format_value(r.x) << ": " << *r.failure << '\n';
        }
        warnings += r.truncation_warning ? 1 : 0;
    }
    if (warnings > 0)
        std::cerr << "warning: " << warnings << " points populate the top Fock level of mode a\n";

    if (oracle) {
        const FockSpace space(cfg.sweep.trunc);
        double worst = 0.0;
        for (const ObservableRecord& r : result.records) {
            if (r.is_gap())
                continue;
            const SystemParams p = cfg.sweep.params_at(r.x);
            const DensityMatrix rho = steady_state(build_liouvillian(p, space));
            worst = std::max(worst, oracle_distance(p, space, rho));
        }
        std::cerr << "oracle_max_trace_distance = " << format_value(worst) << '\n';
    }
    return gaps == result.records.size() && !result.records.empty() ? 1 : 0;
}

int run_analytic(const std::optional<std::string>& config, const ParamFlags& flags,
                 double scan_start, double scan_stop, double scan_step)
{
    SystemParams p = config ? parse_params(read_file(*config)) : SystemParams{};
    flags.apply(p);

    const ManifoldFrequencies w = manifold_eigenfrequencies(p);
    const AmplitudeVector amp = steady_amplitudes(p);

    print_params(std::cout, p);
    print_kv(std::cout, "omega_plus", w.plus);
    print_kv(std::cout, "omega_minus", w.minus);
    print_kv(std::cout, "splitting", w.splitting());
    auto print_amp = [](std::string_view name, Complex c) {
        std::cout << name << " = " << format_value(c.real()) << ',' << format_value(c.imag())
                  << '\n';
        print_kv(std::cout, std::string(name) + "_abs", std::abs(c));
    };
    print_amp("c000", amp.c000);
    print_amp("c100", amp.c100);
    print_amp("c200", amp.c200);
    print_amp("c011", amp.c011);
    print_kv(std::cout, "weak_drive_g2", weak_drive_g2(p));
    if (p.delta_b == -p.delta_c)
        print_kv(std::cout, "optimal_delta_a", optimal_detuning_scan(p, scan_start, scan_stop, scan_step));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steady-state photon statistics of a driven three-mode four-wave-mixing system"};
    app.require_subcommand(1);

    std::optional<std::string> config;
    std::optional<std::string> out_path;
    std::optional<std::string> trunc;
    bool oracle = false;
    unsigned threads = 1;
    ParamFlags point_flags;
    ParamFlags analytic_flags;
    double scan_start = -10.0;
    double scan_stop = 10.0;
    double scan_step = 0.01;

    CLI::App* point = app.add_subcommand("point", "solve one parameter set and print observables");
    point->add_option("--config", config, "key = value file with model parameters");
    point->add_option("--trunc", trunc, "photon cutoffs a,b,c (default 5,2,2)");
    point->add_flag("--oracle", oracle, "also integrate to t = 100/kappa and report the trace distance");
    point_flags.attach(point);

    CLI::App* sweep = app.add_subcommand("sweep", "run a configured parameter sweep and write CSV");
    sweep->add_option("--config", config, "sweep configuration")->required();
    sweep->add_option("--out", out_path, "CSV destination (default: standard output)");
    sweep->add_option("--trunc", trunc, "photon cutoffs a,b,c (default 5,2,2)");
    sweep->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_flag("--oracle", oracle, "cross-check every point against time evolution");

    CLI::App* analytic = app.add_subcommand("analytic", "weak-drive amplitudes and manifold eigenfrequencies");
    analytic->add_option("--config", config, "key = value file with model parameters");
    analytic->add_option("--scan-start", scan_start, "lower end of the delta_a scan");
    analytic->add_option("--scan-stop", scan_stop, "upper end of the delta_a scan");
    analytic->add_option("--scan-step", scan_step, "delta_a scan step");
    analytic_flags.attach(analytic);

    CLI11_PARSE(app, argc, argv);

    try {
        if (point->parsed())
            return run_point(config, point_flags, trunc, oracle);
        if (sweep->parsed())
            return run_sweep_cmd(*config, out_path, trunc, threads, oracle);
        return run_analytic(config, analytic_flags, scan_start, scan_stop, scan_step);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

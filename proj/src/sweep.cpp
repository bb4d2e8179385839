#include "blockade/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "blockade/errors.hpp"

namespace blockade {

std::string_view axis_name(SweepAxis axis) noexcept
{
    return axis == SweepAxis::delta_a ? "delta_a" : "g";
}

std::string_view scale_name(GridScale scale) noexcept
{
    return scale == GridScale::linear ? "linear" : "log";
}

void SweepSpec::validate() const
{
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
        throw InvalidRange("sweep needs finite start < stop");
    if (points < 2)
        throw InvalidRange("sweep needs at least 2 points");
    if (scale == GridScale::log && !(start > 0.0))
        throw InvalidRange("log-spaced sweep needs start > 0");
    FockSpace check(trunc);
    (void)check;
    base.validate();
}

std::vector<double> SweepSpec::samples() const
{
    validate();
    std::vector<double> xs(points);
    const double last = static_cast<double>(points - 1);
    if (scale == GridScale::linear) {
        for (std::size_t k = 0; k < points; ++k)
            xs[k] = start + (stop - start) * static_cast<double>(k) / last;
    } else {
        const double lo = std::log(start);
        const double hi = std::log(stop);
        for (std::size_t k = 0; k < points; ++k)
            xs[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) / last);
    }
    xs.front() = start;
    xs.back() = stop;
    for (std::size_t k = 1; k < points; ++k) {
        if (!(xs[k] > xs[k - 1]))
            throw InvalidRange("sweep range too narrow for the requested point count");
    }
    return xs;
}

SystemParams SweepSpec::params_at(double x) const
{
    SystemParams p = base;
    if (axis == SweepAxis::delta_a)
        p.delta_a = x;
    else
        p.g = x;
    return p;
}

SweepResult SweepResult::without_gaps() const
{
    SweepResult out{spec, {}};
    std::copy_if(records.begin(), records.end(), std::back_inserter(out.records),
                 [](const ObservableRecord& r) { return !r.is_gap(); });
    return out;
}

ObservableRecord solve_point(const SystemParams& params, const FockSpace& space, double x)
{
    try {
        const Superoperator l = build_liouvillian(params, space);
        const DensityMatrix rho = steady_state(l);
        return evaluate_observables(x, rho, space);
    } catch (const Error& e) {
        return ObservableRecord::gap(x, e.what());
    }
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads)
{
    const std::vector<double> xs = spec.samples();
    const FockSpace space(spec.trunc);

    SweepResult result{spec, std::vector<ObservableRecord>(xs.size())};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < xs.size(); k = next++)
            result.records[k] = solve_point(spec.params_at(xs[k]), space, xs[k]);
    };

    const unsigned n_workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(xs.size()));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t)
            pool.emplace_back(worker);
    }
    return result;
}

std::string format_value(double value)
{
    if (std::isnan(value))
        return "nan";
    if (value == 0.0)
        value = 0.0; // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9e", value);
    return buf;
}

std::string emit_csv(const SweepResult& result)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const ObservableRecord& r : result.records) {
        out += format_value(r.x);
        for (double v : {r.g2_a, r.n_a, r.n_b, r.n_c}) {
            out += ',';
            out += r.is_gap() ? std::string("nan") : format_value(v);
        }
        out += '\n';
    }
    return out;
}

namespace {

double parse_csv_field(std::string_view field, std::size_t line)
{
    if (field == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError(line, "malformed CSV value '" + std::string(field) + "'");
    return v;
}

} // namespace

std::vector<CsvRow> parse_csv(std::string_view text)
{
    std::vector<CsvRow> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (!header_seen) {
            if (line != kCsvHeader)
                throw ParseError(line_no, "expected CSV header '" + std::string(kCsvHeader) + "'");
            header_seen = true;
            continue;
        }
        if (line.empty())
            throw ParseError(line_no, "empty CSV row");

        double fields[5];
        std::size_t count = 0;
        while (true) {
            const std::size_t comma = line.find(',');
            if (count == 5)
                throw ParseError(line_no, "too many CSV fields");
            fields[count++] = parse_csv_field(line.substr(0, comma), line_no);
            if (comma == std::string_view::npos)
                break;
            line = line.substr(comma + 1);
        }
        if (count != 5)
            throw ParseError(line_no, "expected 5 CSV fields");
        rows.push_back(CsvRow{fields[0], fields[1], fields[2], fields[3], fields[4]});
    }
    if (!header_seen)
        throw ParseError(0, "empty CSV document");
    return rows;
}

} // namespace blockade

#include "blockade/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

constexpr std::array<std::string_view, 13> kKnownKeys{
    "delta_a", "delta_b", "delta_c", "g",     "f_a",    "kappa_a", "kappa_b",
    "kappa_c", "axis",    "start",   "stop",  "points", "scale"};

struct Entry
{
    std::string value;
    std::size_t line = 0;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, Entry, std::less<>> tokenize(std::string_view text)
{
    std::map<std::string, Entry, std::less<>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(line_no, "expected 'key = value'");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        if (entries.contains(key))
            throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
        entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }
    return entries;
}

class Reader
{
public:
    explicit Reader(std::map<std::string, Entry, std::less<>> entries)
        : m_entries(std::move(entries))
    {
    }

    const Entry* find(std::string_view key) const
    {
        const auto it = m_entries.find(key);
        return it == m_entries.end() ? nullptr : &it->second;
    }

    std::size_t line_of(std::string_view key) const
    {
        const Entry* e = find(key);
        return e ? e->line : 0;
    }

    std::optional<double> real(std::string_view key) const
    {
        const Entry* e = find(key);
        if (!e)
            return std::nullopt;
        double v = 0.0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
            throw ParseError(e->line, "value of '" + std::string(key) + "' is not a finite number: '"
                                          + e->value + "'");
        }
        return v;
    }

    std::optional<long long> integer(std::string_view key) const
    {
        const Entry* e = find(key);
        if (!e)
            return std::nullopt;
        long long v = 0;
        const char* begin = e->value.data();
        const char* end = begin + e->value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end)
            throw ParseError(e->line, "value of '" + std::string(key) + "' is not an integer: '"
                                          + e->value + "'");
        return v;
    }

private:
    std::map<std::string, Entry, std::less<>> m_entries;
};

SystemParams read_params(const Reader& r)
{
    SystemParams p;
    p.delta_a = r.real("delta_a").value_or(0.0);
    p.delta_b = r.real("delta_b").value_or(0.0);
    p.delta_c = r.real("delta_c").value_or(0.0);
    p.g = r.real("g").value_or(0.0);
    p.f_a = r.real("f_a").value_or(0.0);
    p.kappa_a = r.real("kappa_a").value_or(1.0);
    p.kappa_b = r.real("kappa_b").value_or(1.0);
    p.kappa_c = r.real("kappa_c").value_or(1.0);

    for (std::string_view key : {"kappa_a", "kappa_b", "kappa_c"}) {
        if (const auto v = r.real(key); v && !(*v > 0.0))
            throw ParseError(r.line_of(key), std::string(key) + " must be positive");
    }
    if (p.f_a < 0.0)
        throw ParseError(r.line_of("f_a"), "f_a must be non-negative");
    return p;
}

} // namespace

SystemParams parse_params(std::string_view text)
{
    return read_params(Reader(tokenize(text)));
}

ParsedConfig parse_config(std::string_view text)
{
    const Reader r(tokenize(text));
    ParsedConfig cfg;
    cfg.params = read_params(r);

    const Entry* axis = r.find("axis");
    if (!axis)
        throw ParseError(0, "missing required key 'axis'");
    if (axis->value == "delta_a")
        cfg.sweep.axis = SweepAxis::delta_a;
    else if (axis->value == "g")
        cfg.sweep.axis = SweepAxis::g;
    else
        throw ParseError(axis->line, "axis must be 'delta_a' or 'g', got '" + axis->value + "'");

    cfg.sweep.scale = cfg.sweep.axis == SweepAxis::delta_a ? GridScale::linear : GridScale::log;
    if (const Entry* scale = r.find("scale")) {
        if (scale->value == "linear")
            cfg.sweep.scale = GridScale::linear;
        else if (scale->value == "log")
            cfg.sweep.scale = GridScale::log;
        else
            throw ParseError(scale->line, "scale must be 'linear' or 'log', got '" + scale->value + "'");
    }

    const auto start = r.real("start");
    const auto stop = r.real("stop");
    if (!start)
        throw ParseError(0, "missing required key 'start'");
    if (!stop)
        throw ParseError(0, "missing required key 'stop'");
    if (!(*start < *stop))
        throw ParseError(r.line_of("stop"), "stop must exceed start");
    if (cfg.sweep.scale == GridScale::log && !(*start > 0.0))
        throw ParseError(r.line_of("start"), "log-spaced sweep needs start > 0");
    cfg.sweep.start = *start;
    cfg.sweep.stop = *stop;

    cfg.sweep.points = cfg.sweep.scale == GridScale::linear ? kDefaultLinearPoints : kDefaultLogPoints;
    if (const auto points = r.integer("points")) {
        if (*points < 2)
            throw ParseError(r.line_of("points"), "points must be at least 2");
        cfg.sweep.points = static_cast<std::size_t>(*points);
    }

    cfg.sweep.base = cfg.params;
    cfg.sweep.trunc = FockTruncation{};
    return cfg;
}

} // namespace blockade

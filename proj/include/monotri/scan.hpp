#ifndef MONOTRI_SCAN_HPP_
#define MONOTRI_SCAN_HPP_

#include "monotri/monogenity.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace monotri {

/// Family scan: degrees, coefficient ranges and an optional congruence filter on (a, b).
struct ScanSpec {
    std::vector<unsigned> degrees;
    std::pair<long, long> a_range{0, 0};
    std::pair<long, long> b_range{0, 0};
    std::uint64_t modulus = 0; // 0: no filter
    std::vector<std::pair<std::uint64_t, std::uint64_t>> residues;
    std::optional<Theorem> theorem;
    std::string output;
    unsigned workers = 1;
};

namespace detail {

inline std::string trim(std::string s)
{
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

inline long parse_long(std::string const& s, std::string const& key)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (std::exception const&) {
        throw std::invalid_argument("scan spec: bad integer '" + s + "' for " + key);
    }
    if (used != s.size())
        throw std::invalid_argument("scan spec: bad integer '" + s + "' for " + key);
    return v;
}

/// "lo..hi" or a single value.
inline std::pair<long, long> parse_range(std::string const& s, std::string const& key)
{
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long v = parse_long(trim(s), key);
        return {v, v};
    }
    long lo = parse_long(trim(s.substr(0, dots)), key);
    long hi = parse_long(trim(s.substr(dots + 2)), key);
    if (lo > hi)
        throw std::invalid_argument("scan spec: empty range for " + key);
    return {lo, hi};
}

inline std::vector<std::string> split(std::string const& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

} // namespace detail

/// Parses `key = value` lines; `#` starts a comment.
inline ScanSpec parse_scan_spec(std::istream& in)
{
    ScanSpec spec;
    std::string line;
    bool have_a = false, have_b = false;
    std::vector<std::pair<long, long>> raw_residues;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scan spec: expected key = value, got '" + line + "'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "n") {
            for (auto const& item : detail::split(value, ',')) {
                auto [lo, hi] = detail::parse_range(item, key);
                if (lo < 2)
                    throw std::invalid_argument("scan spec: degree must be at least 2");
                for (long d = lo; d <= hi; ++d)
                    spec.degrees.push_back(static_cast<unsigned>(d));
            }
        } else if (key == "a") {
            spec.a_range = detail::parse_range(value, key);
            have_a = true;
        } else if (key == "b") {
            spec.b_range = detail::parse_range(value, key);
            have_b = true;
        } else if (key == "modulus") {
            long m = detail::parse_long(value, key);
            if (m <= 0)
                throw std::invalid_argument("scan spec: modulus must be positive");
            spec.modulus = static_cast<std::uint64_t>(m);
        } else if (key == "residues") {
            for (auto const& item : detail::split(value, ',')) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("scan spec: residue pair must be a:b, got '" + item + "'");
                long ra = detail::parse_long(detail::trim(item.substr(0, colon)), key);
                long rb = detail::parse_long(detail::trim(item.substr(colon + 1)), key);
                raw_residues.emplace_back(ra, rb);
            }
        } else if (key == "theorem") {
            spec.theorem = parse_theorem(value);
            if (!spec.theorem)
                throw std::invalid_argument("scan spec: unknown theorem '" + value + "'");
        } else if (key == "output") {
            spec.output = value;
        } else if (key == "workers") {
            long w = detail::parse_long(value, key);
            if (w <= 0)
                throw std::invalid_argument("scan spec: workers must be positive");
            spec.workers = static_cast<unsigned>(w);
        } else {
            throw std::invalid_argument("scan spec: unknown key '" + key + "'");
        }
    }
    if (spec.degrees.empty() || !have_a || !have_b)
        throw std::invalid_argument("scan spec: n, a and b are required");
    if (!raw_residues.empty() && spec.modulus == 0)
        throw std::invalid_argument("scan spec: residues need a modulus");
    for (auto [ra, rb] : raw_residues)
        spec.residues.emplace_back(mod_u64(BigInt(ra), spec.modulus), mod_u64(BigInt(rb), spec.modulus));
    std::sort(spec.degrees.begin(), spec.degrees.end());
    spec.degrees.erase(std::unique(spec.degrees.begin(), spec.degrees.end()), spec.degrees.end());
    return spec;
}

inline bool scan_accepts(ScanSpec const& spec, long a, long b)
{
    if (spec.modulus == 0)
        return true;
    auto ra = mod_u64(BigInt(a), spec.modulus), rb = mod_u64(BigInt(b), spec.modulus);
    if (spec.residues.empty())
        return true;
    return std::find(spec.residues.begin(), spec.residues.end(), std::pair{ra, rb}) != spec.residues.end();
}

struct ScanRow {
    unsigned n;
    long a;
    long b;
    std::string irreducibility; // certificate kind, "reducible", or "input-error"
    std::string status;
    std::vector<ClauseFiring> clauses; // restricted to spec.theorem when given
    std::vector<IndexWitness> witnesses;
    std::string error;

    bool certified() const
    {
        return irreducibility != "unknown" && irreducibility != "reducible" && irreducibility != "input-error";
    }
};

inline ScanRow scan_one(ScanSpec const& spec, unsigned n, long a, long b)
{
    ScanRow row{n, a, b, {}, {}, {}, {}, {}};
    try {
        Verdict v = analyze(Trinomial(n, BigInt(a), BigInt(b)));
        row.irreducibility = to_string(v.irreducibility.kind);
        row.status = to_string(v.status);
        row.witnesses = v.witnesses;
        for (auto const& fam : v.families) {
            if (spec.theorem && fam.theorem != *spec.theorem)
                continue;
            for (auto const& c : fam.fired)
                row.clauses.push_back(c);
        }
    } catch (ReducibleInput const& e) {
        row.irreducibility = "reducible";
        row.status = "reducible";
        row.error = e.what();
    } catch (std::domain_error const& e) {
        row.irreducibility = "input-error";
        row.status = "input-error";
        row.error = e.what();
    }
    return row;
}

inline std::string format_row(ScanRow const& r)
{
    std::ostringstream os;
    os << r.n << '\t' << r.a << '\t' << r.b << '\t' << r.irreducibility << '\t' << r.status << '\t';
    if (r.clauses.empty())
        os << '-';
    for (std::size_t i = 0; i < r.clauses.size(); ++i)
        os << (i ? "," : "") << r.clauses[i].label() << ":" << to_string(r.clauses[i].engine);
    os << '\t';
    if (r.witnesses.empty())
        os << '-';
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        auto const& w = r.witnesses[i];
        os << (i ? "," : "") << "p=" << w.p << ":P" << w.m << "=" << w.primes << ">" << to_string(w.irreducibles);
    }
    return os.str();
}

struct ScanSummary {
    std::uint64_t rows = 0;
    std::map<std::string, std::uint64_t> by_status;
    std::map<std::string, std::uint64_t> by_clause;     // fired
    std::map<std::string, std::uint64_t> confirmed;     // fired and engine yes
};

/// Worker count: the spec value unless MONOTRI_WORKERS overrides it.
inline unsigned scan_workers(ScanSpec const& spec)
{
    if (char const* env = std::getenv("MONOTRI_WORKERS")) {
        try {
            long w = std::stol(env);
            if (w > 0)
                return static_cast<unsigned>(w);
        } catch (std::exception const&) {
        }
    }
    return std::max(1u, spec.workers);
}

/// Runs the scan in (n, a, b) order. Work is done in blocks by a bounded pool; rows are
/// handed to `emit` in key order whatever the completion order.
inline ScanSummary run_scan(ScanSpec const& spec, std::function<void(ScanRow const&)> const& emit)
{
    ScanSummary summary;
    unsigned workers = scan_workers(spec);
    std::size_t const block = 512;
    std::vector<std::tuple<unsigned, long, long>> pending;
    auto flush = [&] {
        std::vector<std::optional<ScanRow>> rows(pending.size());
        auto work = [&](unsigned w) {
            for (std::size_t i = w; i < pending.size(); i += workers) {
                auto [n, a, b] = pending[i];
                rows[i] = scan_one(spec, n, a, b);
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
            for (auto& th : pool)
                th.join();
        }
        for (auto const& r : rows) {
            ++summary.rows;
            ++summary.by_status[r->status];
            for (auto const& c : r->clauses) {
                ++summary.by_clause[c.label()];
                if (c.engine == Ternary::yes)
                    ++summary.confirmed[c.label()];
            }
            emit(*r);
        }
        pending.clear();
    };
    for (unsigned n : spec.degrees)
        for (long a = spec.a_range.first; a <= spec.a_range.second; ++a)
            for (long b = spec.b_range.first; b <= spec.b_range.second; ++b) {
                if (b == 0 || !scan_accepts(spec, a, b))
                    continue;
                pending.emplace_back(n, a, b);
                if (pending.size() == block)
                    flush();
            }
    flush();
    return summary;
}

} // namespace monotri

#endif /* MONOTRI_SCAN_HPP_ */

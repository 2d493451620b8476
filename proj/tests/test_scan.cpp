#include "monotri/scan.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace monotri;

namespace {

ScanSpec spec_from(std::string const& text)
{
    std::istringstream in(text);
    return parse_scan_spec(in);
}

std::vector<std::string> rows_of(ScanSpec const& spec)
{
    std::vector<std::string> out;
    run_scan(spec, [&](ScanRow const& r) { out.push_back(format_row(r)); });
    return out;
}

} // namespace

TEST(ScanSpec, ParsesAllKeys)
{
    auto s = spec_from("# family\n"
                       "n = 5, 3..4, 5\n"
                       "a = -3..3\n"
                       "b = 1..9   # positive only\n"
                       "modulus = 4\n"
                       "residues = 1:2, 5:-2\n"
                       "theorem = d51\n"
                       "workers = 3\n"
                       "output = rows.tsv\n");
    EXPECT_EQ(s.degrees, (std::vector<unsigned>{3, 4, 5}));
    EXPECT_EQ(s.a_range, (std::pair<long, long>{-3, 3}));
    EXPECT_EQ(s.b_range, (std::pair<long, long>{1, 9}));
    EXPECT_EQ(s.modulus, 4u);
    ASSERT_EQ(s.residues.size(), 2u);
    EXPECT_EQ(s.residues[1], (std::pair<std::uint64_t, std::uint64_t>{1, 2}));
    EXPECT_EQ(s.workers, 3u);
    EXPECT_EQ(s.output, "rows.tsv");
    EXPECT_TRUE(s.theorem.has_value());
}

TEST(ScanSpec, RejectsMalformedInput)
{
    for (char const* bad : {"a = 1\nb = 1\n", "n = 1\na = 0\nb = 1\n", "n = 5\na = 3..1\nb = 1\n",
                            "n = 5\na = x\nb = 1\n", "n = 5\na = 1\nb = 1\nresidues = 1:1\n",
                            "n = 5\na = 1\nb = 1\nmodulus = 0\n", "n = 5\na = 1\nb = 1\ncolour = red\n",
                            "n = 5\na = 1\nb = 1\ntheorem = nope\n", "n = 5\na = 1\nb = 1\nworkers = 0\n",
                            "n 5\n", "n = 5\na = 1\nb = 1\nmodulus = 4\nresidues = 12\n"})
        EXPECT_THROW(spec_from(bad), std::invalid_argument) << bad;
}

TEST(ScanSpec, ResidueFilter)
{
    auto s = spec_from("n = 18\na = -50..50\nb = -50..50\nmodulus = 27\nresidues = 9:26, 18:26\n");
    EXPECT_TRUE(scan_accepts(s, 9, 26));
    EXPECT_TRUE(scan_accepts(s, -9, -1));
    EXPECT_FALSE(scan_accepts(s, 0, 26));
    auto open = spec_from("n = 3\na = 0\nb = 1\n");
    EXPECT_TRUE(scan_accepts(open, 123, -7));
}

TEST(Scan, SkipsZeroConstantAndReportsReducible)
{
    auto s = spec_from("n = 3\na = 0..1\nb = -2..2\n");
    auto rows = rows_of(s);
    EXPECT_EQ(rows.size(), 8u);
    for (auto const& r : rows) {
        std::istringstream is(r);
        long n, a, b;
        is >> n >> a >> b;
        EXPECT_NE(b, 0) << r;
    }
    // x^3 + 1 has the root -1
    ScanRow r = scan_one(s, 3, 0, 1);
    EXPECT_EQ(r.status, "reducible");
    EXPECT_FALSE(r.certified());
}

TEST(Scan, RowFormat)
{
    auto s = spec_from("n = 5\na = 5\nb = 2\n");
    auto row = scan_one(s, 5, 5, 2);
    auto text = format_row(row);
    EXPECT_EQ(text.rfind("5\t5\t2\t", 0), 0u) << text;
    EXPECT_NE(text.find("not-monogenic"), std::string::npos);
    EXPECT_NE(text.find("d51(1):yes"), std::string::npos);
    EXPECT_NE(text.find("p=2:P1=3>2"), std::string::npos);
}

TEST(Scan, TheoremRestrictsClauses)
{
    auto all = spec_from("n = 6\na = 270\nb = 26\n");
    auto only = spec_from("n = 6\na = 270\nb = 26\ntheorem = d61\n");
    auto r_all = scan_one(all, 6, 270, 26);
    auto r_only = scan_one(only, 6, 270, 26);
    EXPECT_GT(r_all.clauses.size(), r_only.clauses.size());
    ASSERT_EQ(r_only.clauses.size(), 1u);
    EXPECT_EQ(r_only.clauses[0].label(), "d61(4)");
}

TEST(Scan, WorkerCountDoesNotChangeOutput)
{
    auto s1 = spec_from("n = 4..6\na = -12..12\nb = -12..12\nworkers = 1\n");
    auto s4 = s1;
    s4.workers = 4;
    auto serial = rows_of(s1);
    auto parallel = rows_of(s4);
    EXPECT_EQ(serial.size(), 3u * 25 * 24);
    EXPECT_EQ(serial, parallel);
}

TEST(Scan, EnvironmentOverridesWorkers)
{
    auto s = spec_from("n = 3\na = 0\nb = 1\nworkers = 2\n");
    ::unsetenv("MONOTRI_WORKERS");
    EXPECT_EQ(scan_workers(s), 2u);
    ::setenv("MONOTRI_WORKERS", "5", 1);
    EXPECT_EQ(scan_workers(s), 5u);
    ::setenv("MONOTRI_WORKERS", "junk", 1);
    EXPECT_EQ(scan_workers(s), 2u);
    ::unsetenv("MONOTRI_WORKERS");
}

TEST(Scan, SummaryCounts)
{
    auto s = spec_from("n = 6\na = 0..300\nb = 26\nmodulus = 27\nresidues = 0:26\ntheorem = d61\n");
    std::uint64_t emitted = 0;
    auto sum = run_scan(s, [&](ScanRow const&) { ++emitted; });
    EXPECT_EQ(sum.rows, emitted);
    EXPECT_EQ(sum.rows, 12u); // a in {0, 27, ..., 297}
    std::uint64_t by_status = 0;
    for (auto const& [k, v] : sum.by_status)
        by_status += v;
    EXPECT_EQ(by_status, sum.rows);
    for (auto const& [label, count] : sum.confirmed)
        EXPECT_LE(count, sum.by_clause[label]);
    EXPECT_GT(sum.confirmed["d61(4)"], 0u);
}

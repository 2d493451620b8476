#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace monotri;

namespace {

Trinomial tri(unsigned n, long a, long b) { return Trinomial(n, BigInt(a), BigInt(b)); }

/// p^(y n) g(theta^x / p^y) reduced mod f, which vanishes iff g kills eta.
IntPoly eta_relation(IntPoly const& g, IntPoly const& f, BigInt const& x, BigInt const& py)
{
    auto n = static_cast<unsigned long>(g.degree());
    IntPoly theta_x = divmod(pow(IntPoly::x(), x.get_ui()), f).second;
    IntPoly acc;
    for (unsigned long k = n + 1; k-- > 0;) {
        acc = divmod(acc * theta_x, f).second;
        acc = acc + IntPoly::constant(g.coeff(k) * pow(py, n - k));
    }
    return acc;
}

struct Representative {
    Theorem theorem;
    unsigned n;
    long a, b;
    int clause;
    std::uint64_t p;
    std::uint64_t m; // residue degree of the witness
};

} // namespace

TEST(Candidates, PrimesBelowDegreeWithSquareDivisor)
{
    gen::Source src(51);
    for (int i = 0; i < 300; ++i) {
        auto t = src.trinomial(2, 14, 4);
        BigInt d = trinomial_discriminant(t);
        if (d == 0)
            continue;
        std::vector<std::uint64_t> expect;
        for (std::uint64_t q = 2; q < t.n(); ++q)
            if (is_prime(q) && oracle::valuation(d, q) >= 2)
                expect.push_back(q);
        std::vector<std::uint64_t> got;
        for (auto p : candidate_primes(t).primes)
            got.push_back(p.value());
        ASSERT_EQ(got, expect) << t.format();
    }
}

TEST(Census, WitnessForSexticAtThree)
{
    auto test = common_index_divisor_test(tri(6, 270, 26).poly(), Prime(3));
    EXPECT_EQ(test.verdict, Ternary::yes);
    ASSERT_TRUE(test.witness);
    EXPECT_EQ(test.witness->m, 1u);
    EXPECT_EQ(test.witness->primes, 4u);
    EXPECT_EQ(test.witness->irreducibles, 3);
    EXPECT_EQ(test.census.count(1), 4u);
}

TEST(Census, PartialShapeIsUnknown)
{
    auto test = common_index_divisor_test(tri(5, 4, 16).poly(), Prime(2));
    EXPECT_FALSE(test.census.complete);
    EXPECT_EQ(test.verdict, Ternary::unknown);
    EXPECT_FALSE(test.witness);
}

TEST(Census, EqualityIsNotAWitness)
{
    // 3 Z_K has three primes of degree 1 and N_3(1) = 3
    auto test = common_index_divisor_test(tri(10, 161, 576).poly(), Prime(3));
    EXPECT_EQ(test.census.count(1), 3u);
    EXPECT_EQ(test.verdict, Ternary::no);
}

TEST(SquareFactors, FindsSquaresAndFlagsLargeCofactors)
{
    auto sq = square_factors(BigInt(2 * 2 * 2 * 3 * 5 * 5 * 7), 100);
    ASSERT_EQ(sq.factors.size(), 2u);
    EXPECT_EQ(sq.factors[0].first, 2);
    EXPECT_EQ(sq.factors[1].first, 5);
    EXPECT_TRUE(sq.complete);
    BigInt q("1000003");
    auto hidden = square_factors(q * q * 6, 20000);
    EXPECT_TRUE(hidden.complete);
    ASSERT_EQ(hidden.factors.size(), 1u);
    EXPECT_EQ(hidden.factors[0].first, q);
    auto big = square_factors(q * q * q * 7, 1000);
    EXPECT_FALSE(big.complete);
}

TEST(Mono, QuarticGenerator)
{
    auto params = MonoParams::match(tri(4, 8, 8));
    ASSERT_TRUE(params);
    EXPECT_EQ(params->p, Prime(2));
    auto [x, y] = params->exponents();
    EXPECT_EQ(x, 3);
    EXPECT_EQ(y, 2);
    auto cert = certify_mono(*params);
    EXPECT_TRUE(cert.passed());
    ASSERT_TRUE(cert.minimal_polynomial);
    EXPECT_TRUE(cert.eisenstein);
    EXPECT_EQ(format_generator(cert, Prime(2)), "theta^3/4");
    EXPECT_TRUE(eta_relation(*cert.minimal_polynomial, tri(4, 8, 8).poly(), x, BigInt(4)).is_zero());
    EXPECT_EQ(trinomial_discriminant(tri(4, 8, 8)), 5 * 4096);
}

TEST(Mono, ExponentsAgainstSearch)
{
    for (std::uint64_t p : {2, 3, 5, 7})
        for (unsigned r = 1; r <= 3; ++r)
            for (unsigned u = 2; u <= 12; ++u) {
                if (u % p == 0)
                    continue;
                MonoParams params(Prime(p), r, u + 1, u, BigInt(1), BigInt(1));
                auto expect = oracle::solve_generator(u, pow(Prime(p).big(), r));
                ASSERT_TRUE(expect);
                EXPECT_EQ(params.exponents(), *expect) << p << " " << r << " " << u;
            }
}

TEST(Mono, RejectsBadParameters)
{
    EXPECT_THROW(MonoParams(Prime(2), 2, 3, 3, BigInt(2), BigInt(1)), std::domain_error);
    EXPECT_THROW(MonoParams(Prime(2), 2, 2, 3, BigInt(1), BigInt(1)), std::domain_error);
    EXPECT_THROW(MonoParams(Prime(3), 1, 4, 3, BigInt(1), BigInt(1)), std::domain_error);
    EXPECT_FALSE(MonoParams::match(tri(6, 8, 8)));
}

// Every certified generator really is a root of its minimal polynomial.
TEST(Mono, MinimalPolynomialKillsEta)
{
    gen::Source src(52);
    int passed = 0;
    for (int i = 0; i < 120; ++i) {
        std::uint64_t p = src.pick(std::vector<std::uint64_t>{2, 3, 5});
        unsigned r = p == 2 ? static_cast<unsigned>(src.range(1, 3)) : 1;
        unsigned u = static_cast<unsigned>(src.range(2, 5));
        if (u % p == 0)
            continue;
        unsigned v = u + static_cast<unsigned>(src.range(0, 2));
        BigInt a = src.range(1, 30), b = src.range(1, 30);
        if (a % p == 0 || b % p == 0)
            continue;
        MonoParams params(Prime(p), r, v, u, src.coin() ? a : BigInt(-a), b);
        auto cert = certify_mono(params);
        if (!cert.minimal_polynomial)
            continue;
        auto py = pow(Prime(p).big(), cert.y.get_ui());
        ASSERT_TRUE(eta_relation(*cert.minimal_polynomial, params.trinomial().poly(), cert.x, py).is_zero())
            << params.trinomial().format();
        passed += cert.passed();
    }
    EXPECT_GE(passed, 5);
}

TEST(PowerSums, RoundTrip)
{
    gen::Source src(53);
    for (int i = 0; i < 200; ++i) {
        auto t = src.trinomial(2, 9, 3);
        auto n = static_cast<std::size_t>(t.n());
        auto s = power_sums(t.poly(), n);
        std::vector<Rational> q(s.begin(), s.end());
        auto back = polynomial_from_power_sums(q, n);
        ASSERT_TRUE(back);
        ASSERT_EQ(*back, t.poly());
    }
    // x^2 - 2: s_1 = 0, s_2 = 4
    auto s = power_sums(IntPoly{-2, 0, 1}, 4);
    EXPECT_EQ(s[1], 0);
    EXPECT_EQ(s[2], 4);
    EXPECT_EQ(s[4], 8);
}

TEST(Theorems, ParseAndDegrees)
{
    for (auto th : all_theorems())
        EXPECT_EQ(parse_theorem(to_string(th)), th);
    EXPECT_FALSE(parse_theorem("d71"));
    EXPECT_TRUE(degree_matches(tri(5, 1, 1), Theorem::d51));
    EXPECT_FALSE(degree_matches(tri(6, 1, 1), Theorem::d51));
    EXPECT_TRUE(degree_matches(tri(18, 1, 1), Theorem::corn11));
    EXPECT_TRUE(degree_matches(tri(27, 1, 1), Theorem::c3r));
    EXPECT_THROW(certify_family(tri(6, 1, 1), Theorem::d51), std::domain_error);
}

// Irreducible representatives of every clause of the quintic and sextic families.
TEST(Clauses, RepresentativesConfirmedByEngine)
{
    std::vector<Representative> reps{
        {Theorem::d51, 5, 5, 2, 1, 2, 1},     {Theorem::d51, 5, 1, 10, 1, 2, 1},
        {Theorem::d51, 5, 7, 24, 2, 2, 1},    {Theorem::d51, 5, 15, 32, 2, 2, 1},
        {Theorem::d51, 5, 19, 4, 3, 2, 1},    {Theorem::d51, 5, 3, 20, 3, 2, 1},
        {Theorem::d51, 5, 3, 68, 4, 2, 1},    {Theorem::d51, 5, 35, 100, 4, 2, 1},
        {Theorem::d51, 5, 19, 84, 4, 2, 1},   {Theorem::d51, 5, 51, 116, 4, 2, 1},
        {Theorem::d51, 5, 3, 12, 5, 2, 1},    {Theorem::d51, 5, 19, 28, 5, 2, 1},
        {Theorem::d51, 5, 3, 60, 6, 2, 1},    {Theorem::d51, 5, 19, 44, 6, 2, 1},
        {Theorem::d51, 5, 35, 28, 6, 2, 1},   {Theorem::d51, 5, 51, 12, 6, 2, 1},
        {Theorem::d51, 5, 28, 32, 7, 2, 1},   {Theorem::d61, 6, 0, 7, 1, 2, 2},
        {Theorem::d61, 6, 6, 9, 2, 2, 2},     {Theorem::d61, 6, 14, 1, 2, 2, 2},
        {Theorem::d61, 6, 22, 25, 2, 2, 2},   {Theorem::d61, 6, 30, 17, 2, 2, 2},
        {Theorem::d61, 6, 0, 3, 3, 2, 2},     {Theorem::d61, 6, 0, 17, 4, 3, 1},
        {Theorem::d61, 6, 270, 26, 4, 3, 1},  {Theorem::corn11, 18, 9, 26, 4, 3, 1},
        {Theorem::dn2, 7, 80, 54, 4, 3, 1},
    };
    for (auto const& r : reps) {
        auto t = tri(r.n, r.a, r.b);
        ASSERT_TRUE(irreducibility_certificate(t).certified()) << t.format();
        auto fam = certify_family(t, r.theorem);
        ASSERT_EQ(fam.fired.size(), 1u) << t.format();
        auto const& c = fam.fired[0];
        EXPECT_EQ(c.clause, r.clause) << t.format();
        EXPECT_EQ(c.prime, r.p) << t.format();
        EXPECT_EQ(c.engine, Ternary::yes) << t.format();
        ASSERT_TRUE(c.witness) << t.format();
        EXPECT_EQ(c.witness->m, r.m) << t.format();
        EXPECT_GT(BigInt(static_cast<unsigned long>(c.witness->primes)), c.witness->irreducibles);
    }
}

// The engine finds no witness for some clause-7 inputs; the firing is kept and the disagreement surfaced.
TEST(Clauses, DisagreementIsSurfaced)
{
    auto fam = certify_family(tri(5, 4, 8), Theorem::d51);
    ASSERT_EQ(fam.fired.size(), 1u);
    EXPECT_EQ(fam.fired[0].clause, 7);
    EXPECT_EQ(fam.fired[0].engine, Ternary::no);
    EXPECT_NE(fam.fired[0].note.find("not confirmed"), std::string::npos);
    auto v = analyze(tri(5, 4, 8));
    EXPECT_EQ(v.status, Status::inconclusive);
    EXPECT_NE(std::find(v.flags.begin(), v.flags.end(), "clause-engine-disagreement d51(7)"), v.flags.end());

    auto partial = certify_family(tri(5, 4, 16), Theorem::d51);
    ASSERT_EQ(partial.fired.size(), 1u);
    EXPECT_EQ(partial.fired[0].engine, Ternary::unknown);
}

TEST(Clauses, UnconfirmedExamplesFireNothing)
{
    EXPECT_TRUE(certify_family(tri(27, 810, 2), Theorem::c3r).fired.empty());
    EXPECT_TRUE(certify_family(tri(10, 161, 576), Theorem::dn2).fired.empty());
}

TEST(Clauses, FiringsNeverContradictACompleteWitnessFreeCensusSilently)
{
    // random sextics and quintics: every firing with engine "no" must be flagged by analyze
    gen::Source src(54);
    int fired = 0;
    for (int i = 0; i < 300; ++i) {
        unsigned n = src.coin() ? 5 : 6;
        auto t = tri(n, src.range(-128, 128), src.range(-128, 128) | 1);
        if (src.coin())
            t = tri(n, src.range(-64, 64) * 2, src.range(-64, 64) * 4 + 3);
        std::optional<Verdict> result;
        try {
            result = analyze(t);
        } catch (ReducibleInput const&) {
            continue;
        }
        auto const& v = *result;
        for (auto const& fam : v.families)
            for (auto const& c : fam.fired) {
                ++fired;
                if (c.engine == Ternary::no && fam.theorem != Theorem::mono) {
                    EXPECT_NE(std::find(v.flags.begin(), v.flags.end(), "clause-engine-disagreement " + c.label()),
                              v.flags.end());
                }
                if (c.engine == Ternary::yes && v.irreducibility.certified() && fam.theorem != Theorem::mono) {
                    EXPECT_EQ(v.status, Status::not_monogenic) << t.format();
                }
            }
    }
    EXPECT_GT(fired, 20);
}

TEST(Analyze, Statuses)
{
    EXPECT_EQ(analyze(tri(4, 8, 8)).status, Status::monogenic_with_generator);
    EXPECT_EQ(analyze(tri(3, 1, 1)).status, Status::zk_equals_ztheta);
    auto v = analyze(tri(6, 270, 26));
    EXPECT_EQ(v.status, Status::not_monogenic);
    ASSERT_FALSE(v.witnesses.empty());
    EXPECT_EQ(v.witnesses[0].p, 3u);
    EXPECT_EQ(analyze(tri(10, 161, 576)).status, Status::inconclusive);
    EXPECT_THROW(analyze(tri(5, 3, 4)), ReducibleInput);
    EXPECT_THROW(tri(5, 0, 0), std::domain_error);
}

TEST(Analyze, RestrictedPrime)
{
    AnalyzeOptions opt;
    opt.only_prime = 2;
    auto v = analyze(tri(6, 270, 26), opt);
    ASSERT_EQ(v.per_prime.size(), 1u);
    EXPECT_EQ(v.per_prime[0].p, Prime(2));
    EXPECT_NE(std::find(v.flags.begin(), v.flags.end(), "restricted-to-prime 2"), v.flags.end());
}

TEST(Analyze, ExampleTranscriptsShowNoWitnessAtThree)
{
    for (auto t : {tri(27, 810, 2), tri(10, 161, 576)}) {
        auto v = analyze(t);
        EXPECT_TRUE(v.witnesses.empty());
        bool found = false;
        for (auto const& line : v.transcript)
            if (line.rfind("p = 3:", 0) == 0) {
                found = true;
                EXPECT_NE(line.find("common index divisor no"), std::string::npos) << line;
            }
        EXPECT_TRUE(found) << t.format();
    }
}

// Monogenity verdicts are consistent with the per-prime index bounds.
TEST(Analyze, VerdictsConsistentWithShapes)
{
    gen::Source src(55);
    for (int i = 0; i < 150; ++i) {
        auto t = src.trinomial(3, 9, 3);
        std::optional<Verdict> result;
        try {
            result = analyze(t);
        } catch (ReducibleInput const&) {
            continue;
        }
        auto const& v = *result;
        if (v.status == Status::zk_equals_ztheta) {
            for (auto const& test : v.per_prime)
                EXPECT_EQ(test.analysis.index_lower_bound, 0u) << t.format();
        }
        if (v.status == Status::not_monogenic) {
            EXPECT_FALSE(v.witnesses.empty());
        }
    }
}

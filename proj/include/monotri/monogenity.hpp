#ifndef MONOTRI_MONOGENITY_HPP_
#define MONOTRI_MONOGENITY_HPP_

#include "monotri/fqpoly.hpp"
#include "monotri/intarith.hpp"
#include "monotri/newton.hpp"
#include "monotri/ore.hpp"
#include "monotri/zpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monotri {

enum class Ternary { no, yes, unknown };

inline std::string to_string(Ternary t)
{
    switch (t) {
    case Ternary::no: return "no";
    case Ternary::yes: return "yes";
    case Ternary::unknown: return "unknown";
    }
    return "unknown";
}

struct CandidateSet {
    std::vector<Prime> primes;
    bool squarefree = true;
};

/// Primes p < n with p^2 | disc. Only these can divide the field index.
inline CandidateSet candidate_primes(Trinomial const& t)
{
    CandidateSet out;
    BigInt disc = trinomial_discriminant(t);
    if (disc == 0) {
        out.squarefree = false;
        return out;
    }
    for (auto q : primes_below(t.n())) {
        Prime p(q);
        if (vp(disc, p).value() >= 2)
            out.primes.push_back(p);
    }
    return out;
}

/// P_m: primes above p by residue degree.
struct ResidueCensus {
    std::map<std::uint64_t, std::uint64_t> counts;
    bool complete = true;

    std::uint64_t count(std::uint64_t m) const
    {
        auto it = counts.find(m);
        return it == counts.end() ? 0 : it->second;
    }
};

inline ResidueCensus residue_census(FactorShape const& shape)
{
    ResidueCensus c;
    c.complete = shape.complete;
    for (auto const& q : shape.primes)
        ++c.counts[q.f];
    return c;
}

struct IndexWitness {
    std::uint64_t p;
    std::uint64_t m;
    std::uint64_t primes;  // P_m
    BigInt irreducibles;   // N_p(m)
};

struct IndexDivisorTest {
    Prime p;
    Ternary verdict = Ternary::unknown;
    std::optional<IndexWitness> witness;
    ResidueCensus census;
    ShapeAnalysis analysis;
};

/// p | i(K) when some P_m exceeds N_p(m). "no" only means no witness.
inline IndexDivisorTest common_index_divisor_test(IntPoly const& f, Prime p)
{
    IndexDivisorTest out{p, Ternary::unknown, std::nullopt, {}, factor_shape(f, p)};
    out.census = residue_census(out.analysis.shape);
    if (!out.census.complete)
        return out;
    out.verdict = Ternary::no;
    for (std::uint64_t m = 1; m <= static_cast<std::uint64_t>(f.degree()); ++m) {
        std::uint64_t pm = out.census.count(m);
        if (pm == 0)
            continue;
        BigInt npm = count_irreducibles(p, m);
        if (BigInt(static_cast<unsigned long>(pm)) > npm) {
            out.verdict = Ternary::yes;
            out.witness = IndexWitness{p.value(), m, pm, npm};
            break;
        }
    }
    return out;
}

/// Primes whose square divides n, from trial division plus a bound on what the cofactor can hide.
struct SquareFactors {
    std::vector<std::pair<BigInt, unsigned>> factors; // exponent >= 2
    bool complete = true;
    BigInt unfactored = 1;
};

inline SquareFactors square_factors(BigInt const& n, std::uint64_t bound)
{
    SquareFactors out;
    auto tf = trial_factor(n, bound);
    for (auto const& [q, k] : tf.factors)
        if (k >= 2)
            out.factors.emplace_back(q, k);
    BigInt const& c = tf.cofactor;
    if (c == 1)
        return out;
    BigInt b(static_cast<unsigned long>(bound));
    if (c < b * b * b) {
        // at most two prime factors, both above the bound
        if (detail::is_perfect_square(c)) {
            BigInt r = sqrt(c);
            out.factors.emplace_back(r, 2u);
        }
        return out;
    }
    out.complete = false;
    out.unfactored = c;
    return out;
}

/// x^(p^r) + p^v a x + p^u b with p not dividing ab, v >= u >= 2, gcd(u, p) = 1.
struct MonoParams {
    Prime p;
    unsigned r;
    unsigned v;
    unsigned u;
    BigInt a;
    BigInt b;

    MonoParams(Prime p_, unsigned r_, unsigned v_, unsigned u_, BigInt a_, BigInt b_)
        : p(p_), r(r_), v(v_), u(u_), a(std::move(a_)), b(std::move(b_))
    {
        if (r < 1)
            throw std::domain_error("MonoParams: r must be positive");
        if (vp(a, p).value_or(1) != 0 || vp(b, p).value_or(1) != 0)
            throw std::domain_error("MonoParams: p divides a b");
        if (!(v >= u && u >= 2))
            throw std::domain_error("MonoParams: need v >= u >= 2");
        if (u % p.value() == 0)
            throw std::domain_error("MonoParams: gcd(u, p) != 1");
    }

    unsigned long degree() const { return pow(p.big(), r).get_ui(); }

    Trinomial trinomial() const
    {
        return Trinomial(static_cast<unsigned>(degree()), pow(p.big(), v) * a, pow(p.big(), u) * b);
    }

    /// The solution of x u - y p^r = 1 with 0 <= y < u.
    std::pair<BigInt, BigInt> exponents() const
    {
        BigInt q = pow(p.big(), r);
        auto [g, s, t] = ext_gcd(BigInt(u), q);
        // s u + t q = 1, so x = s, y = -t; shift along (q, u)
        BigInt x = s, y = -t;
        BigInt k;
        mpz_fdiv_q(k.get_mpz_t(), y.get_mpz_t(), BigInt(u).get_mpz_t());
        x -= k * q;
        y -= k * BigInt(u);
        return {x, y};
    }

    /// Reads the parameters off a trinomial, if it has this form.
    static std::optional<MonoParams> match(Trinomial const& t)
    {
        unsigned n = t.n();
        std::uint64_t q = 0;
        for (std::uint64_t d = 2; d <= n; ++d)
            if (n % d == 0) {
                q = d;
                break;
            }
        unsigned r = 0;
        for (std::uint64_t m = n; m > 1 && m % q == 0; m /= q)
            ++r;
        if (pow(BigInt(static_cast<unsigned long>(q)), r) != n || sgn(t.a()) == 0)
            return std::nullopt;
        Prime p(q);
        auto v = vp(t.a(), p).value();
        auto u = vp(t.b(), p).value();
        if (!(v >= u && u >= 2) || u % q == 0)
            return std::nullopt;
        BigInt a = t.a() / pow(p.big(), v), b = t.b() / pow(p.big(), u);
        return MonoParams(p, r, static_cast<unsigned>(v), static_cast<unsigned>(u), a, b);
    }
};

/// Power sums of the roots of a monic f, s_1..s_count.
inline std::vector<BigInt> power_sums(IntPoly const& f, std::size_t count)
{
    auto n = static_cast<std::size_t>(f.degree());
    std::vector<BigInt> s(count + 1);
    s[0] = static_cast<unsigned long>(n);
    // c(i) is the coefficient of x^(n-i)
    auto c = [&](std::size_t i) { return f.coeff(n - i); };
    for (std::size_t k = 1; k <= count; ++k) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= std::min(k, n); ++i)
            acc += c(i) * (i == k ? BigInt(static_cast<unsigned long>(k)) : s[k - i]);
        s[k] = -acc;
    }
    return s;
}

/// Monic polynomial with the given power sums s_1..s_n (Newton's identities), if integral.
inline std::optional<IntPoly> polynomial_from_power_sums(std::vector<Rational> const& s, std::size_t n)
{
    std::vector<Rational> e(n + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= k; ++i)
            acc += (i % 2 ? 1 : -1) * e[k - i] * s[i];
        e[k] = acc / static_cast<unsigned long>(k);
    }
    std::vector<BigInt> coeffs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Rational c = (k % 2 ? -1 : 1) * e[k];
        c.canonicalize();
        if (c.get_den() != 1)
            return std::nullopt;
        coeffs[n - k] = c.get_num();
    }
    return IntPoly(std::move(coeffs));
}

struct MonoCertificate {
    BigInt x;
    BigInt y;
    std::optional<IntPoly> minimal_polynomial; // of theta^x / p^y; empty if not integral
    bool eisenstein = false;
    bool side_condition = false;          // no q != p with q^2 | D among the primes checked
    bool side_condition_complete = true;  // D fully accounted for up to the bound
    std::vector<BigInt> side_condition_violations;
    bool discriminant_drops = false;
    std::vector<std::string> notes;

    bool passed() const { return eisenstein && side_condition && side_condition_complete && discriminant_drops; }
};

/// Checks that eta = theta^x / p^y generates a power integral basis.
inline MonoCertificate certify_mono(MonoParams const& params, std::uint64_t bound = 1000000)
{
    MonoCertificate out;
    std::tie(out.x, out.y) = params.exponents();
    Prime p = params.p;
    auto n = static_cast<std::size_t>(params.degree());
    Trinomial t = params.trinomial();
    IntPoly f = t.poly();

    // side condition: nu_q(D) <= 1 for q != p
    BigInt pv_a = pow(p.big(), params.v) * params.a;
    BigInt pu_b = pow(p.big(), params.u) * params.b;
    BigInt N(static_cast<unsigned long>(n));
    BigInt D = pow(1 - N, n - 1) * pow(pv_a, n) + pow(N, n) * pow(pu_b, n - 1);
    if (D == 0) {
        out.notes.push_back("side-condition quantity vanishes");
    } else {
        BigInt Dq = D;
        mpz_remove(Dq.get_mpz_t(), Dq.get_mpz_t(), p.big().get_mpz_t());
        auto sq = square_factors(Dq, bound);
        for (auto const& [q, k] : sq.factors)
            out.side_condition_violations.push_back(q);
        out.side_condition = sq.factors.empty();
        out.side_condition_complete = sq.complete;
        if (!sq.complete)
            out.notes.push_back("side condition unverified beyond " + std::to_string(bound) + ": cofactor " +
                                to_string(sq.unfactored));
    }

    // power sums of eta_i = theta_i^x / p^y
    auto xs = static_cast<std::size_t>(out.x.get_ui());
    auto s = power_sums(f, xs * n);
    std::vector<Rational> eta_sums(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        eta_sums[k] = Rational(s[xs * k], pow(p.big(), static_cast<unsigned long>(out.y.get_ui() * k)));
        eta_sums[k].canonicalize();
    }
    out.minimal_polynomial = polynomial_from_power_sums(eta_sums, n);
    if (!out.minimal_polynomial) {
        out.notes.push_back("characteristic polynomial of eta is not integral");
        return out;
    }
    IntPoly const& g = *out.minimal_polynomial;
    out.eisenstein = vp(g.coeff(0), p) == Valuation(1);
    for (std::size_t i = 1; i < n && out.eisenstein; ++i)
        out.eisenstein = vp(g.coeff(i), p) >= Valuation(1);
    auto vf = vp(discriminant_resultant(f), p);
    auto vg = vp(discriminant_resultant(g), p);
    out.discriminant_drops = out.y == 0 ? vg <= vf : vg < vf;
    return out;
}

enum class Theorem { mono, dpr, c3r, dn1, corn11, dn2, corn12, d51, d61 };

inline std::vector<Theorem> all_theorems()
{
    return {Theorem::mono, Theorem::dpr, Theorem::c3r, Theorem::dn1, Theorem::corn11,
            Theorem::dn2, Theorem::corn12, Theorem::d51, Theorem::d61};
}

inline std::string to_string(Theorem t)
{
    switch (t) {
    case Theorem::mono: return "mono";
    case Theorem::dpr: return "dpr";
    case Theorem::c3r: return "c3r";
    case Theorem::dn1: return "dn1";
    case Theorem::corn11: return "corn11";
    case Theorem::dn2: return "dn2";
    case Theorem::corn12: return "corn12";
    case Theorem::d51: return "d51";
    case Theorem::d61: return "d61";
    }
    return "?";
}

inline std::optional<Theorem> parse_theorem(std::string const& s)
{
    for (auto t : all_theorems())
        if (to_string(t) == s)
            return t;
    return std::nullopt;
}

struct ClauseFiring {
    Theorem theorem;
    int clause;
    std::uint64_t prime;
    std::string condition;
    Ternary engine = Ternary::unknown; // yes: engine confirms; no: complete census without witness
    std::optional<IndexWitness> witness;
    std::string note;

    std::string label() const { return to_string(theorem) + "(" + std::to_string(clause) + ")"; }
};

struct FamilyResult {
    Theorem theorem;
    std::vector<ClauseFiring> fired;
    std::vector<std::string> parameters; // evaluated quantities, for the transcript
    std::optional<MonoCertificate> mono;

    bool any() const { return !fired.empty(); }
};

/// Engine runs shared between clause checks and the main analysis.
using EngineCache = std::map<std::uint64_t, IndexDivisorTest>;

namespace detail {

inline std::uint64_t residue(BigInt const& x, std::uint64_t m) { return mod_u64(x, m); }

/// (a mod m, b mod m) lies in the union of the given products of residue sets.
inline bool in_table(BigInt const& a, BigInt const& b, std::uint64_t m,
                     std::initializer_list<std::pair<std::initializer_list<std::uint64_t>, std::initializer_list<std::uint64_t>>>
                         table)
{
    auto ra = residue(a, m), rb = residue(b, m);
    for (auto const& [as, bs] : table)
        if (std::find(as.begin(), as.end(), ra) != as.end() && std::find(bs.begin(), bs.end(), rb) != bs.end())
            return true;
    return false;
}

/// n = q^r exactly; returns r, or 0.
inline unsigned exact_power(std::uint64_t n, std::uint64_t q)
{
    unsigned r = 0;
    while (n > 1 && n % q == 0) {
        n /= q;
        ++r;
    }
    return n == 1 ? r : 0;
}

/// n = 2^k 3^r with the given exponents.
inline bool two_three(std::uint64_t n, unsigned& k, unsigned& r)
{
    k = r = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++k;
    }
    while (n % 3 == 0) {
        n /= 3;
        ++r;
    }
    return n == 1;
}

/// Valuation as a number, with "infinite" larger than any bound in play.
inline std::uint64_t val(BigInt const& x, Prime p) { return vp(x, p).value_or(std::uint64_t(1) << 40); }

inline std::string val_str(std::uint64_t v) { return v >= (std::uint64_t(1) << 40) ? "inf" : std::to_string(v); }

/// Degree counts of the irreducible factors of x^s + c mod p.
inline std::map<std::uint64_t, std::uint64_t> binomial_factor_degrees(Prime p, std::uint64_t s, BigInt const& c)
{
    PrimeField F(p);
    auto g = FpPoly::monomial(F, 1, s) + FpPoly::constant(F, F.from_integer(c));
    std::map<std::uint64_t, std::uint64_t> out;
    for (auto const& e : factor(g))
        ++out[static_cast<std::uint64_t>(e.factor.degree())];
    return out;
}

struct FamilyEvaluator {
    Trinomial const& t;
    EngineCache& cache;
    FamilyResult& out;

    IndexDivisorTest const& engine(std::uint64_t p)
    {
        auto it = cache.find(p);
        if (it == cache.end())
            it = cache.emplace(p, common_index_divisor_test(t.poly(), Prime(p))).first;
        return it->second;
    }

    void fire(int clause, std::uint64_t p, std::string condition)
    {
        ClauseFiring c{out.theorem, clause, p, std::move(condition), Ternary::unknown, std::nullopt, {}};
        if (trinomial_discriminant(t) == 0) {
            c.note = "discriminant vanishes; engine not run";
        } else {
            auto const& e = engine(p);
            c.engine = e.verdict;
            c.witness = e.witness;
            if (e.verdict == Ternary::no)
                c.note = "engine census " + e.analysis.shape.format() + " has no P_m > N_p(m): clause not confirmed";
            else if (e.verdict == Ternary::unknown)
                c.note = "clause fired, engine inconclusive";
        }
        out.fired.push_back(std::move(c));
    }

    void d51()
    {
        auto const& a = t.a();
        auto const& b = t.b();
        if (residue(a, 4) == 1 && residue(b, 4) == 2)
            fire(1, 2, "a = 1 mod 4, b = 2 mod 4");
        if (in_table(a, b, 16, {{{7}, {8}}, {{15}, {0}}}))
            fire(2, 2, "(a, b) = (7, 8) or (15, 0) mod 16");
        if (in_table(a, b, 32, {{{19}, {4}}, {{3}, {20}}}))
            fire(3, 2, "(a, b) = (19, 4) or (3, 20) mod 32");
        if (in_table(a, b, 64, {{{3}, {4}}, {{35}, {36}}, {{19}, {20}}, {{51}, {52}}}))
            fire(4, 2, "(a, b) in {(3,4), (35,36), (19,20), (51,52)} mod 64");
        if (in_table(a, b, 32, {{{3}, {12}}, {{19}, {28}}}))
            fire(5, 2, "(a, b) = (3, 12) or (19, 28) mod 32");
        if (in_table(a, b, 64, {{{3}, {60}}, {{19}, {44}}, {{35}, {28}}, {{51}, {12}}}))
            fire(6, 2, "(a, b) in {(3,60), (19,44), (35,28), (51,12)} mod 64");
        if (residue(a, 8) == 4 && residue(b, 8) == 0)
            fire(7, 2, "a = 4 mod 8, b = 0 mod 8");
    }

    void d61()
    {
        auto const& a = t.a();
        auto const& b = t.b();
        Prime two(2);
        if (residue(a, 8) == 0 && residue(b, 8) == 7)
            fire(1, 2, "a = 0 mod 8, b = 7 mod 8");
        if (residue(a, 4) == 2 && residue(b, 4) == 1) {
            auto lhs = vp(1 + a + b, two);
            auto half = vp(a + 6, two);
            out.parameters.push_back("v2(1+a+b) = " + (lhs.is_finite() ? std::to_string(lhs.value()) : "inf") +
                                     ", v2(a+6) = " + (half.is_finite() ? std::to_string(half.value()) : "inf"));
            if (lhs.is_finite() && half.is_finite() && lhs.value() == 2 * half.value())
                fire(2, 2, "a = 2 mod 4, b = 1 mod 4, v2(1+a+b) = 2 v2(a+6)");
        }
        if (residue(a, 8) == 0 && residue(b, 8) == 3)
            fire(3, 2, "a = 0 mod 8, b = 3 mod 8");
        if (residue(a, 9) == 0 && residue(b, 9) == 8)
            fire(4, 3, "a = 0 mod 9, b = -1 mod 9");
    }

    void dpr()
    {
        std::uint64_t n = t.n();
        for (auto q : primes_below(n + 1)) {
            if (q == 2 || n % q)
                continue;
            unsigned r = exact_power(n, q);
            if (r == 0)
                continue;
            BigInt mod = pow(BigInt(static_cast<unsigned long>(q)), q + 1);
            BigInt bp = pow(t.b(), q - 1) - 1;
            out.parameters.push_back("p = " + std::to_string(q) + ", r = " + std::to_string(r));
            if (r >= q && mpz_divisible_p(t.a().get_mpz_t(), mod.get_mpz_t()) &&
                mpz_divisible_p(bp.get_mpz_t(), mod.get_mpz_t()))
                fire(1, q, "a = 0 and b^(p-1) = 1 mod p^(p+1), r >= p");
        }
    }

    void c3r()
    {
        unsigned r = exact_power(t.n(), 3);
        out.parameters.push_back("r = " + std::to_string(r));
        auto rb = residue(t.b(), 81);
        if (r >= 3 && residue(t.a(), 81) == 0 && (rb == 1 || rb == 80))
            fire(1, 3, "a = 0 mod 81, b = +-1 mod 81, r >= 3");
    }

    /// Both dn1 and dn2: x^n + a x + b with n = s p^r (dn1) or n - 1 = u p^k (dn2).
    void binomial_family(bool second)
    {
        std::uint64_t m_total = second ? t.n() - 1 : t.n();
        BigInt const& unit = second ? t.a() : t.b();   // coefficient prime to p
        BigInt const& small = second ? t.b() : t.a();  // coefficient divisible by p
        for (auto q : primes_below(m_total + 1)) {
            if (q == 2 || m_total % q)
                continue;
            Prime p(q);
            if (vp(small, p).value_or(1) == 0 || vp(unit, p).value_or(1) != 0)
                continue;
            std::uint64_t cofactor = m_total;
            unsigned r = 0;
            while (cofactor % q == 0) {
                cofactor /= q;
                ++r;
            }
            std::uint64_t mu = val(small, p);
            std::uint64_t nu = val(pow(unit, q - 1) - 1, p);
            std::uint64_t delta = std::min(mu, nu);
            std::uint64_t omega = std::min<std::uint64_t>(delta, r + 1);
            auto degrees = binomial_factor_degrees(p, cofactor, second ? t.a() : t.b());
            std::uint64_t linear = degrees.count(1) ? degrees[1] : 0;
            std::ostringstream par;
            char const* names[2][4] = {{"mu", "nu", "delta", "omega"}, {"sigma", "rho", "tau", "kappa"}};
            par << "p = " << q << ", " << (second ? "u" : "s") << " = " << cofactor << ", "
                << (second ? "k" : "r") << " = " << r << ", " << names[second][0] << " = " << val_str(mu) << ", "
                << names[second][1] << " = " << val_str(nu) << ", " << names[second][2] << " = " << val_str(delta)
                << ", " << names[second][3] << " = " << val_str(omega) << ", N_p(1) of binomial = " << linear;
            out.parameters.push_back(par.str());
            BigInt P(static_cast<unsigned long>(q));
            BigInt lin(static_cast<unsigned long>(linear));
            // clause 1: omega N_p(m, s, b) > N_p(m) for some m > 1
            if (delta != r + 1) {
                for (auto const& [m, cnt] : degrees) {
                    if (m < 2)
                        continue;
                    BigInt lhs = BigInt(static_cast<unsigned long>(omega)) * BigInt(static_cast<unsigned long>(cnt));
                    if (lhs > count_irreducibles(p, m)) {
                        fire(1, q, std::string(second ? "kappa" : "omega") + " * N_p(" + std::to_string(m) +
                                       ", binomial) > N_p(" + std::to_string(m) + ")");
                        break;
                    }
                }
            }
            // clauses 2-4; dn2 states them as p < x N + 1, dn1 as p < x N
            auto beats = [&](std::uint64_t x) {
                BigInt rhs = BigInt(static_cast<unsigned long>(std::min<std::uint64_t>(x, 1u << 30))) * lin;
                if (second)
                    rhs += 1;
                return P < rhs;
            };
            if (beats(mu) && mu < std::min<std::uint64_t>(nu, r + 1))
                fire(2, q, second ? "p < sigma N + 1, sigma < min(rho, k+1)" : "p / N < mu < min(nu, r+1)");
            if (beats(nu) && nu < std::min<std::uint64_t>(mu, r + 1))
                fire(3, q, second ? "p < rho N + 1, rho < min(sigma, k+1)" : "p / N < nu < min(mu, r+1)");
            if (beats(r + 1) && r + 1 < delta)
                fire(4, q, second ? "p < (k+1) N + 1, k+1 < tau" : "p / N < r+1 < delta");
        }
    }

    void corn11()
    {
        unsigned k, r;
        two_three(t.n(), k, r);
        auto const& a = t.a();
        auto const& b = t.b();
        out.parameters.push_back("k = " + std::to_string(k) + ", r = " + std::to_string(r));
        auto am = [&](std::uint64_t m) { return residue(a, m); };
        auto bm = [&](std::uint64_t m) { return residue(b, m); };
        if (r == 3 && am(243) == 0 && bm(243) == 242)
            fire(1, 3, "r = 3, a = 0, b = -1 mod 243");
        if ((k == 1 || k == 2) && r >= 4 && in_table(a, b, 243, {{{81, 162}, {80, 161, 242}}, {{0}, {80, 161}}}))
            fire(2, 3, "k in {1,2}, r >= 4, congruence table mod 243");
        if (r == 1 && am(27) == 0 && bm(27) == 26)
            fire(3, 3, "r = 1, a = 0, b = -1 mod 27");
        if (r >= 2 && in_table(a, b, 27, {{{9, 18}, {26}}, {{0}, {8, 17}}}))
            fire(4, 3, "r >= 2, congruence table mod 27");
        if (r >= 3 && in_table(a, b, 81, {{{0}, {26, 53}}, {{27, 54}, {26, 53, 80}}}))
            fire(5, 3, "r >= 3, congruence table mod 81");
        if (r == 2 && am(81) == 0 && bm(81) == 80)
            fire(6, 3, "r = 2, a = 0, b = -1 mod 81");
        if (k == 1 && r == 3 && am(243) == 0 && bm(243) == 1)
            fire(7, 3, "k = 1, r = 3, a = 0, b = 1 mod 243");
        if (k == 1 && r >= 4 && in_table(a, b, 243, {{{81, 162}, {1, 82, 163}}, {{0}, {82, 163}}}))
            fire(8, 3, "k = 1, r >= 4, congruence table mod 243");
        if (k == 2 && r == 1 && am(27) == 0 && bm(27) == 1)
            fire(9, 3, "k = 2, r = 1, a = 0, b = 1 mod 27");
        if (k == 2 && r >= 2 && in_table(a, b, 27, {{{9, 18}, {1, 10, 19}}, {{0}, {10, 19}}}))
            fire(10, 3, "k = 2, r >= 2, congruence table mod 27");
        if (k >= 3 && r >= 2 && in_table(a, b, 27, {{{9, 18}, {8, 17}}}))
            fire(11, 3, "k >= 3, r >= 2, congruence table mod 27");
    }

    void corn12()
    {
        unsigned s, k;
        two_three(t.n() - 1, s, k);
        auto const& a = t.a();
        auto const& b = t.b();
        out.parameters.push_back("s = " + std::to_string(s) + ", k = " + std::to_string(k));
        auto am = [&](std::uint64_t m) { return residue(a, m); };
        auto bm = [&](std::uint64_t m) { return residue(b, m); };
        if (s == 0 && k >= 3 && in_table(a, b, 81, {{{1, 80}, {27, 54}}, {{26, 28, 53, 55}, {0}}}))
            fire(1, 3, "s = 0, k >= 3, congruence table mod 81");
        if (s == 0 && k >= 4 && in_table(a, b, 243, {{{1, 242}, {81, 162}}, {{80, 82, 161, 163}, {0}}}))
            fire(2, 3, "s = 0, k >= 4, congruence table mod 243");
        if (s == 0 && k == 2 && (am(81) == 1 || am(81) == 80) && bm(81) == 0)
            fire(3, 3, "s = 0, k = 2, a = +-1, b = 0 mod 81");
        if (s == 0 && k == 3 && (am(243) == 1 || am(243) == 242) && bm(243) == 0)
            fire(4, 3, "s = 0, k = 3, a = +-1, b = 0 mod 243");
        if (s >= 1 && k >= 2 && in_table(a, b, 27, {{{26}, {9, 18}}, {{8, 17}, {0}}}))
            fire(5, 3, "s >= 1, k >= 2, congruence table mod 27");
        if (s >= 1 && k >= 3 && in_table(a, b, 81, {{{80}, {27, 54}}, {{26, 53}, {0, 27, 54}}}))
            fire(6, 3, "s >= 1, k >= 3, congruence table mod 81");
        if (s >= 1 && k == 1 && am(27) == 26 && bm(27) == 0)
            fire(7, 3, "s >= 1, k = 1, a = -1, b = 0 mod 27");
        if (s >= 1 && k == 2 && am(81) == 80 && bm(81) == 0)
            fire(8, 3, "s >= 1, k = 2, a = -1, b = 0 mod 81");
        if (s == 2 && k == 3 && am(243) == 242 && bm(243) == 0)
            fire(9, 3, "s = 2, k = 3, a = -1, b = 0 mod 243");
        if (s == 2 && k >= 4 && in_table(a, b, 243, {{{80, 161, 242}, {81, 162}}, {{80, 161}, {0}}}))
            fire(10, 3, "s = 2, k >= 4, congruence table mod 243");
        if (s >= 3 && k >= 2 && in_table(a, b, 27, {{{8, 17, 26}, {9, 18}}, {{8, 17}, {0}}}))
            fire(11, 3, "s >= 3, k >= 2, congruence table mod 27");
        if (s == 1 && k == 3 && am(243) == 1 && bm(243) == 0)
            fire(12, 3, "s = 1, k = 3, a = 1, b = 0 mod 243");
        if (s == 1 && k >= 4 && in_table(a, b, 243, {{{1, 82, 163}, {81, 162}}, {{82, 163}, {0}}}))
            fire(13, 3, "s = 1, k >= 4, congruence table mod 243");
        if (s == 2 && k == 1 && am(27) == 1 && bm(27) == 0)
            fire(14, 3, "s = 2, k = 1, a = 1, b = 0 mod 27");
        if (s == 2 && k >= 2 && in_table(a, b, 27, {{{1, 10, 19}, {9, 18}}, {{10, 19}, {0}}}))
            fire(15, 3, "s = 2, k >= 2, congruence table mod 27");
    }

    void mono()
    {
        auto params = MonoParams::match(t);
        if (!params)
            return;
        auto cert = certify_mono(*params);
        std::ostringstream par;
        par << "p = " << params->p << ", r = " << params->r << ", v = " << params->v << ", u = " << params->u
            << ", x = " << to_string(cert.x) << ", y = " << to_string(cert.y);
        out.parameters.push_back(par.str());
        if (cert.side_condition && cert.side_condition_complete) {
            ClauseFiring c{Theorem::mono, 1, params->p.value(), "x^(p^r) + p^v a x + p^u b, side condition holds",
                           cert.passed() ? Ternary::yes : Ternary::no, std::nullopt, {}};
            if (!cert.passed())
                c.note = "generator check failed";
            out.fired.push_back(std::move(c));
        }
        out.mono = std::move(cert);
    }
};

} // namespace detail

/// Whether the degree of t fits the theorem's degree pattern.
inline bool degree_matches(Trinomial const& t, Theorem th)
{
    std::uint64_t n = t.n();
    unsigned k, r;
    switch (th) {
    case Theorem::mono: {
        for (auto q : primes_below(n + 1))
            if (detail::exact_power(n, q))
                return true;
        return false;
    }
    case Theorem::dpr: {
        for (auto q : primes_below(n + 1))
            if (q != 2 && detail::exact_power(n, q))
                return true;
        return false;
    }
    case Theorem::c3r: return detail::exact_power(n, 3) > 0;
    case Theorem::dn1:
        for (auto q : primes_below(n + 1))
            if (q != 2 && n % q == 0)
                return true;
        return false;
    case Theorem::dn2:
        for (auto q : primes_below(n))
            if (q != 2 && (n - 1) % q == 0)
                return true;
        return false;
    case Theorem::corn11: return detail::two_three(n, k, r) && k >= 1 && r >= 1;
    case Theorem::corn12: return n > 2 && detail::two_three(n - 1, k, r) && r >= 1;
    case Theorem::d51: return n == 5;
    case Theorem::d61: return n == 6;
    }
    return false;
}

/// Evaluates every clause of one theorem exactly and cross-checks each fired clause with the engine.
inline FamilyResult certify_family(Trinomial const& t, Theorem th, EngineCache& cache)
{
    if (!degree_matches(t, th))
        throw std::domain_error("degree " + std::to_string(t.n()) + " does not fit theorem " + to_string(th));
    FamilyResult out{th, {}, {}, std::nullopt};
    detail::FamilyEvaluator ev{t, cache, out};
    switch (th) {
    case Theorem::mono: ev.mono(); break;
    case Theorem::dpr: ev.dpr(); break;
    case Theorem::c3r: ev.c3r(); break;
    case Theorem::dn1: ev.binomial_family(false); break;
    case Theorem::dn2: ev.binomial_family(true); break;
    case Theorem::corn11: ev.corn11(); break;
    case Theorem::corn12: ev.corn12(); break;
    case Theorem::d51: ev.d51(); break;
    case Theorem::d61: ev.d61(); break;
    }
    return out;
}

inline FamilyResult certify_family(Trinomial const& t, Theorem th)
{
    EngineCache cache;
    return certify_family(t, th, cache);
}

/// "theta^3/4" for x = 3, p^y = 4.
inline std::string format_generator(MonoCertificate const& c, Prime p)
{
    std::string s = "theta";
    if (c.x != 1)
        s += "^" + to_string(c.x);
    if (c.y != 0)
        s += "/" + to_string(pow(p.big(), c.y.get_ui()));
    return s;
}

enum class Status { monogenic_with_generator, not_monogenic, zk_equals_ztheta, inconclusive };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::monogenic_with_generator: return "monogenic-with-generator";
    case Status::not_monogenic: return "not-monogenic";
    case Status::zk_equals_ztheta: return "zk-equals-ztheta";
    case Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

/// Input the analysis refuses: b = 0 or a detected factor.
class ReducibleInput : public std::domain_error {
  public:
    explicit ReducibleInput(std::string const& what, std::optional<BigInt> root = std::nullopt)
        : std::domain_error(what), root_(std::move(root))
    {
    }
    std::optional<BigInt> const& root() const noexcept { return root_; }

  private:
    std::optional<BigInt> root_;
};

struct AnalyzeOptions {
    std::optional<std::uint64_t> only_prime;
    std::uint64_t trial_bound = 1000000;
};

struct DedekindCheck {
    BigInt q;
    bool maximal;
};

struct Verdict {
    Trinomial trinomial;
    BigInt discriminant;
    IrreducibilityCertificate irreducibility;
    std::vector<Prime> candidates;
    std::vector<IndexDivisorTest> per_prime;
    Status status = Status::inconclusive;
    std::vector<IndexWitness> witnesses;
    std::optional<MonoCertificate> generator;
    std::vector<DedekindCheck> dedekind;
    std::vector<FamilyResult> families;
    std::vector<std::string> flags;
    std::vector<std::string> transcript;

    /// Labels of fired clauses, e.g. "d51(1)".
    std::vector<std::string> clauses() const
    {
        std::vector<std::string> out;
        for (auto const& fam : families)
            for (auto const& c : fam.fired)
                out.push_back(c.label());
        return out;
    }
};

inline Verdict analyze(Trinomial const& t, AnalyzeOptions const& opt = {})
{
    IntPoly f = t.poly();
    Verdict v{t, trinomial_discriminant(t), irreducibility_certificate(t), {}, {}, Status::inconclusive,
              {}, {}, {}, {}, {}, {}};
    auto& log = v.transcript;
    log.push_back("trinomial " + t.format());
    log.push_back("discriminant " + to_string(v.discriminant));
    if (v.irreducibility.kind == IrreducibilityCertificate::Kind::reducible) {
        std::string msg = "reducible: ";
        if (v.irreducibility.root)
            msg += IntPoly(std::vector<BigInt>{BigInt(-*v.irreducibility.root), BigInt(1)}).format() + " divides " + t.format();
        throw ReducibleInput(msg, v.irreducibility.root);
    }
    if (v.discriminant == 0)
        throw ReducibleInput("reducible: repeated factor (discriminant 0)");
    log.push_back("irreducibility " + to_string(v.irreducibility.kind) +
                  (v.irreducibility.prime ? " at " + std::to_string(v.irreducibility.prime) : std::string()));
    bool irreducible = v.irreducibility.certified();
    if (!irreducible)
        v.flags.push_back("irreducibility-unverified");

    v.candidates = candidate_primes(t).primes;
    {
        std::ostringstream os;
        os << "candidate primes";
        for (auto p : v.candidates)
            os << " " << p;
        if (v.candidates.empty())
            os << " none";
        log.push_back(os.str());
    }
    std::vector<Prime> tested = v.candidates;
    if (opt.only_prime) {
        tested = {Prime(*opt.only_prime)};
        v.flags.push_back("restricted-to-prime " + std::to_string(*opt.only_prime));
    }

    EngineCache cache;
    bool all_complete = true;
    for (auto p : tested) {
        auto test = common_index_divisor_test(f, p);
        std::ostringstream os;
        os << "p = " << p << ": shape " << test.analysis.shape.format() << " index >= "
           << test.analysis.index_lower_bound << " common index divisor " << to_string(test.verdict);
        if (test.witness)
            os << " (P_" << test.witness->m << " = " << test.witness->primes << " > N_" << p << "("
               << test.witness->m << ") = " << to_string(test.witness->irreducibles) << ")";
        log.push_back(os.str());
        for (auto const& line : test.analysis.transcript)
            log.push_back("  " + line);
        if (test.witness)
            v.witnesses.push_back(*test.witness);
        all_complete = all_complete && test.verdict != Ternary::unknown;
        cache.emplace(p.value(), test);
        v.per_prime.push_back(std::move(test));
    }

    // theorem clauses, each cross-checked against the engine
    for (auto th : all_theorems()) {
        if (!degree_matches(t, th))
            continue;
        auto fam = certify_family(t, th, cache);
        for (auto const& c : fam.fired) {
            log.push_back("clause " + c.label() + " fired at p = " + std::to_string(c.prime) + ": " + c.condition +
                          "; engine " + to_string(c.engine));
            if (c.engine == Ternary::no && th != Theorem::mono)
                v.flags.push_back("clause-engine-disagreement " + c.label());
            if (c.engine == Ternary::unknown)
                v.flags.push_back("clause-fired-engine-inconclusive " + c.label());
        }
        if (fam.any() || fam.mono)
            v.families.push_back(std::move(fam));
    }

    if (!v.witnesses.empty()) {
        if (irreducible) {
            v.status = Status::not_monogenic;
            log.push_back("verdict not-monogenic");
        } else {
            log.push_back("witness found but irreducibility is not certified");
        }
        return v;
    }
    if (v.candidates.empty())
        v.flags.push_back("empty-candidate-set");
    else if (all_complete && !opt.only_prime)
        v.flags.push_back("no-common-index-divisor-witness");

    // Z_K = Z[theta] when every q with q^2 | disc passes Dedekind's criterion
    if (!opt.only_prime) {
        auto sq = square_factors(v.discriminant, opt.trial_bound);
        bool maximal = true;
        for (auto const& [q, k] : sq.factors) {
            if (q >= BigInt(static_cast<unsigned long>(Prime::max_value))) {
                maximal = false;
                v.flags.push_back("dedekind-prime-too-large " + to_string(q));
                continue;
            }
            bool ok = dedekind_p_maximal(f, Prime(q.get_ui()));
            v.dedekind.push_back({q, ok});
            log.push_back("dedekind at " + to_string(q) + ": " + (ok ? "maximal" : "not maximal"));
            maximal = maximal && ok;
        }
        if (maximal && irreducible) {
            if (sq.complete) {
                v.status = Status::zk_equals_ztheta;
                log.push_back("verdict zk-equals-ztheta");
                return v;
            }
            v.flags.push_back("monogenic modulo unfactored discriminant part " + to_string(sq.unfactored));
        }
    }

    if (auto params = MonoParams::match(t); params && irreducible) {
        auto cert = certify_mono(*params, opt.trial_bound);
        log.push_back("generator candidate " + format_generator(cert, params->p) +
                      (cert.passed() ? " certified" : " not certified"));
        for (auto const& note : cert.notes)
            log.push_back("  " + note);
        if (cert.passed()) {
            v.status = Status::monogenic_with_generator;
            v.generator = std::move(cert);
            log.push_back("verdict monogenic-with-generator");
            return v;
        }
        v.generator = std::move(cert);
    }
    log.push_back("verdict inconclusive");
    return v;
}

} // namespace monotri

#endif /* MONOTRI_MONOGENITY_HPP_ */

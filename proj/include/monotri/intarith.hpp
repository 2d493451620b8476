#ifndef MONOTRI_INTARITH_HPP_
#define MONOTRI_INTARITH_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monotri {

using BigInt = mpz_class;
using Rational = mpq_class;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod64(r, base, m);
        base = mulmod64(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace detail

/* Deterministic Miller-Rabin; the base set is known to be exact below 2^64. */
inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
        std::uint64_t x = detail::powmod64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// A rational prime small enough that products of two residues fit in 64 bits.
class Prime {
  public:
    static constexpr std::uint64_t max_value = (std::uint64_t(1) << 31);

    explicit Prime(std::uint64_t value) : value_(value)
    {
        if (value >= max_value || !is_prime(value))
            throw std::domain_error("not a supported prime: " + std::to_string(value));
    }

    std::uint64_t value() const noexcept { return value_; }
    BigInt big() const { return BigInt(static_cast<unsigned long>(value_)); }

    friend bool operator==(Prime, Prime) = default;
    friend auto operator<=>(Prime, Prime) = default;

  private:
    std::uint64_t value_;
};

inline std::ostream& operator<<(std::ostream& os, Prime p) { return os << p.value(); }

/// p-adic valuation; zero has valuation +infinity.
class Valuation {
  public:
    constexpr explicit Valuation(std::uint64_t v) : value_(v), infinite_(false) {}

    static constexpr Valuation infinity()
    {
        Valuation v(0);
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }

    std::uint64_t value() const
    {
        if (infinite_)
            throw std::domain_error("valuation of zero is infinite");
        return value_;
    }

    /// Finite value, or `cap` for the infinite valuation.
    constexpr std::uint64_t value_or(std::uint64_t cap) const noexcept { return infinite_ ? cap : value_; }

    friend constexpr bool operator==(Valuation x, Valuation y) noexcept
    {
        return x.infinite_ == y.infinite_ && (x.infinite_ || x.value_ == y.value_);
    }

    friend constexpr std::strong_ordering operator<=>(Valuation x, Valuation y) noexcept
    {
        if (x.infinite_ || y.infinite_)
            return x.infinite_ <=> y.infinite_;
        return x.value_ <=> y.value_;
    }

    friend constexpr Valuation operator+(Valuation x, Valuation y) noexcept
    {
        if (x.infinite_ || y.infinite_)
            return infinity();
        return Valuation(x.value_ + y.value_);
    }

  private:
    std::uint64_t value_;
    bool infinite_;
};

inline std::ostream& operator<<(std::ostream& os, Valuation v)
{
    if (v.is_infinite())
        return os << "inf";
    return os << v.value();
}

inline Valuation vp(BigInt const& t, Prime p)
{
    if (sgn(t) == 0)
        return Valuation::infinity();
    BigInt rest;
    BigInt q = p.big();
    auto k = mpz_remove(rest.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    return Valuation(k);
}

/// Image of t / p^{v_p(t)} in F_p, as an integer in [1, p).
inline std::uint64_t residue_unit(BigInt const& t, Prime p)
{
    if (sgn(t) == 0)
        throw std::domain_error("residue_unit of zero");
    BigInt rest;
    BigInt q = p.big();
    mpz_remove(rest.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    return r.get_ui();
}

/// Nonnegative remainder of t modulo m (m > 0).
inline std::uint64_t mod_u64(BigInt const& t, std::uint64_t m)
{
    BigInt r;
    BigInt mm(static_cast<unsigned long>(m));
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

inline BigInt pow(BigInt const& base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// v_p(C(p^r, j)) for 1 <= j <= p^r - 1, which is r - v_p(j).
inline std::uint64_t vp_binomial(Prime p, unsigned r, BigInt const& j)
{
    BigInt top = pow(p.big(), r);
    if (j < 1 || j > top - 1)
        throw std::domain_error("vp_binomial: j out of range 1..p^r-1");
    return r - vp(j, p).value();
}

inline int moebius(std::uint64_t d)
{
    if (d == 0)
        throw std::domain_error("moebius of zero");
    int sign = 1;
    for (std::uint64_t q = 2; q * q <= d; ++q) {
        if (d % q)
            continue;
        d /= q;
        if (d % q == 0)
            return 0;
        sign = -sign;
    }
    if (d > 1)
        sign = -sign;
    return sign;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t m)
{
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
        if (m % d)
            continue;
        lo.push_back(d);
        if (d * d != m)
            hi.push_back(m / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

/// N_p(m): the number of monic irreducible polynomials of degree m over F_p.
inline BigInt count_irreducibles(Prime p, std::uint64_t m)
{
    if (m == 0)
        throw std::domain_error("count_irreducibles: degree must be positive");
    BigInt sum = 0;
    for (auto d : divisors(m)) {
        int mu = moebius(d);
        if (mu)
            sum += mu * pow(p.big(), m / d);
    }
    return sum / m;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> ext_gcd(BigInt const& a, BigInt const& b)
{
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, s, t};
}

/// Result of trial division: prime powers found below the bound, and the
/// unfactored cofactor (all of whose prime factors exceed the bound).
struct TrialFactorization {
    std::vector<std::pair<BigInt, unsigned>> factors;
    BigInt cofactor;
    std::uint64_t bound;
};

/// Primes strictly below the limit, by sieving.
inline std::vector<std::uint64_t> primes_below(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    if (limit < 3)
        return out;
    std::vector<bool> composite(limit, false);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < limit; j += i)
            composite[j] = true;
    }
    return out;
}

namespace detail {

/// Primes below `limit`, sieved once per limit and kept for reuse.
inline std::vector<std::uint64_t> const& cached_primes(std::uint64_t limit)
{
    static std::mutex lock;
    static std::map<std::uint64_t, std::vector<std::uint64_t>> cache;
    std::lock_guard guard(lock);
    auto it = cache.find(limit);
    if (it == cache.end())
        it = cache.emplace(limit, primes_below(limit)).first;
    return it->second;
}

} // namespace detail

inline TrialFactorization trial_factor(BigInt n, std::uint64_t bound)
{
    TrialFactorization out;
    out.bound = bound;
    n = abs(n);
    if (n == 0)
        throw std::domain_error("trial_factor of zero");
    for (auto q : detail::cached_primes(bound + 1)) {
        if (n == 1)
            break;
        BigInt qq(static_cast<unsigned long>(q));
        if (qq * qq > n) {
            // what remains is prime
            out.factors.emplace_back(n, 1u);
            n = 1;
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            auto k = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), qq.get_mpz_t());
            out.factors.emplace_back(qq, static_cast<unsigned>(k));
        }
    }
    BigInt b(static_cast<unsigned long>(bound));
    if (n > 1 && n < b * b) {
        out.factors.emplace_back(n, 1u);
        n = 1;
    }
    out.cofactor = n;
    return out;
}

inline std::string to_string(BigInt const& x) { return x.get_str(); }

inline std::string to_string(Rational const& x) { return x.get_str(); }

} // namespace monotri

#endif /* MONOTRI_INTARITH_HPP_ */

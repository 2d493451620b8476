#ifndef MONOTRI_FQPOLY_HPP_
#define MONOTRI_FQPOLY_HPP_

#include "monotri/intarith.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monotri {

/* Finite fields and dense univariate polynomials over them.
 *
 * A field type F provides:
 *   Element, zero(), one(), add, sub, neg, mul, inv, is_zero, equal,
 *   from_integer(BigInt), characteristic(), degree() over F_p, order(),
 *   pth_root(e), random(rng), less(a, b), format(e).
 * Poly<F> is written against that interface, so the same factorization
 * code runs over F_p and over F_p[t]/(g).
 */

class PrimeField {
  public:
    using Element = std::uint64_t;

    explicit PrimeField(Prime p) : p_(p.value()) {}

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return 1; }
    BigInt order() const { return BigInt(static_cast<unsigned long>(p_)); }

    Element zero() const noexcept { return 0; }
    Element one() const noexcept { return 1 % p_; }
    Element from_integer(BigInt const& t) const { return mod_u64(t, p_); }
    Element from_integer(std::int64_t t) const
    {
        auto m = static_cast<std::int64_t>(p_);
        auto r = t % m;
        return static_cast<Element>(r < 0 ? r + m : r);
    }

    Element add(Element a, Element b) const noexcept { return (a + b) % p_; }
    Element sub(Element a, Element b) const noexcept { return (a + p_ - b) % p_; }
    Element neg(Element a) const noexcept { return a ? p_ - a : 0; }
    Element mul(Element a, Element b) const noexcept { return detail::mulmod64(a, b, p_); }
    Element inv(Element a) const
    {
        if (a == 0)
            throw std::domain_error("inverse of zero in F_p");
        return detail::powmod64(a, p_ - 2, p_);
    }
    bool is_zero(Element a) const noexcept { return a == 0; }
    bool equal(Element a, Element b) const noexcept { return a == b; }
    Element pth_root(Element a) const noexcept { return a; }
    Element random(std::mt19937_64& rng) const { return rng() % p_; }
    bool less(Element a, Element b) const noexcept { return a < b; }
    std::string format(Element a) const { return std::to_string(a); }

    friend bool operator==(PrimeField const& x, PrimeField const& y) { return x.p_ == y.p_; }

  private:
    std::uint64_t p_;
};

template <class Field>
class Poly {
  public:
    using Element = typename Field::Element;

    explicit Poly(Field field) : field_(std::move(field)) {}

    Poly(Field field, std::vector<Element> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(Field const& field, Element c) { return Poly(field, {std::move(c)}); }

    static Poly monomial(Field const& field, Element c, std::size_t deg)
    {
        std::vector<Element> v(deg + 1, field.zero());
        v[deg] = std::move(c);
        return Poly(field, std::move(v));
    }

    static Poly x(Field const& field) { return monomial(field, field.one(), 1); }

    Field const& field() const noexcept { return field_; }
    std::vector<Element> const& coefficients() const noexcept { return c_; }

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_one() const { return c_.size() == 1 && field_.equal(c_[0], field_.one()); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    Element const& leading() const
    {
        if (c_.empty())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && field_.equal(c_.back(), field_.one()); }

    Poly monic() const
    {
        if (is_zero())
            return *this;
        return scaled(field_.inv(leading()));
    }

    Poly scaled(Element const& s) const
    {
        std::vector<Element> v;
        v.reserve(c_.size());
        for (auto const& a : c_)
            v.push_back(field_.mul(a, s));
        return Poly(field_, std::move(v));
    }

    Poly shifted(std::size_t k) const
    {
        if (is_zero())
            return *this;
        std::vector<Element> v(k, field_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(field_, std::move(v));
    }

    Element eval(Element const& t) const
    {
        Element r = field_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = field_.add(field_.mul(r, t), *it);
        return r;
    }

    Poly derivative() const
    {
        std::vector<Element> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(field_.mul(c_[i], field_.from_integer(static_cast<std::int64_t>(i % field_.characteristic()))));
        return Poly(field_, std::move(v));
    }

    friend Poly operator+(Poly const& x, Poly const& y)
    {
        auto const& F = x.field_;
        std::vector<Element> v(std::max(x.c_.size(), y.c_.size()), F.zero());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = F.add(x.coeff(i), y.coeff(i));
        return Poly(F, std::move(v));
    }

    friend Poly operator-(Poly const& x, Poly const& y)
    {
        auto const& F = x.field_;
        std::vector<Element> v(std::max(x.c_.size(), y.c_.size()), F.zero());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = F.sub(x.coeff(i), y.coeff(i));
        return Poly(F, std::move(v));
    }

    Poly operator-() const
    {
        std::vector<Element> v;
        for (auto const& a : c_)
            v.push_back(field_.neg(a));
        return Poly(field_, std::move(v));
    }

    friend Poly operator*(Poly const& x, Poly const& y)
    {
        auto const& F = x.field_;
        if (x.is_zero() || y.is_zero())
            return Poly(F);
        std::vector<Element> v(x.c_.size() + y.c_.size() - 1, F.zero());
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (F.is_zero(x.c_[i]))
                continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                v[i + j] = F.add(v[i + j], F.mul(x.c_[i], y.c_[j]));
        }
        return Poly(F, std::move(v));
    }

    /// Euclidean division; returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(Poly const& x, Poly const& y)
    {
        if (y.is_zero())
            throw std::domain_error("polynomial division by zero");
        auto const& F = x.field_;
        if (x.degree() < y.degree())
            return {Poly(F), x};
        std::vector<Element> r = x.c_;
        std::vector<Element> q(x.c_.size() - y.c_.size() + 1, F.zero());
        Element lc_inv = F.inv(y.leading());
        std::size_t dy = y.c_.size() - 1;
        for (std::size_t k = q.size(); k-- > 0;) {
            Element t = F.mul(r[k + dy], lc_inv);
            q[k] = t;
            if (F.is_zero(t))
                continue;
            for (std::size_t j = 0; j <= dy; ++j)
                r[k + j] = F.sub(r[k + j], F.mul(t, y.c_[j]));
        }
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(dy), r.end());
        return {Poly(F, std::move(q)), Poly(F, std::move(r))};
    }

    friend Poly operator/(Poly const& x, Poly const& y) { return divmod(x, y).first; }
    friend Poly operator%(Poly const& x, Poly const& y) { return divmod(x, y).second; }

    friend bool operator==(Poly const& x, Poly const& y)
    {
        if (x.c_.size() != y.c_.size())
            return false;
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            if (!x.field_.equal(x.c_[i], y.c_[i]))
                return false;
        return true;
    }

    /// Degree first, then coefficients from the constant term upwards.
    friend bool canonical_less(Poly const& x, Poly const& y)
    {
        if (x.degree() != y.degree())
            return x.degree() < y.degree();
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.field_.less(x.c_[i], y.c_[i]))
                return true;
            if (x.field_.less(y.c_[i], x.c_[i]))
                return false;
        }
        return false;
    }

    std::string format(std::string const& var = "x") const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (field_.is_zero(c_[i]))
                continue;
            if (!first)
                os << " + ";
            first = false;
            std::string cs = field_.format(c_[i]);
            bool unit = field_.equal(c_[i], field_.one());
            bool compound = cs.find(' ') != std::string::npos;
            if (i == 0) {
                os << cs;
                continue;
            }
            if (!unit)
                os << (compound ? "(" + cs + ")" : cs) << "*";
            os << var;
            if (i > 1)
                os << "^" << i;
        }
        return os.str();
    }

  private:
    void trim()
    {
        while (!c_.empty() && field_.is_zero(c_.back()))
            c_.pop_back();
    }

    Field field_;
    std::vector<Element> c_;
};

using FpPoly = Poly<PrimeField>;

template <class Field>
Poly<Field> gcd(Poly<Field> a, Poly<Field> b)
{
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class Field>
Poly<Field> mulmod(Poly<Field> const& a, Poly<Field> const& b, Poly<Field> const& m)
{
    return (a * b) % m;
}

template <class Field>
Poly<Field> powmod(Poly<Field> base, BigInt const& e, Poly<Field> const& m)
{
    if (e < 0)
        throw std::domain_error("negative exponent");
    Poly<Field> r = Poly<Field>::constant(base.field(), base.field().one()) % m;
    base = base % m;
    auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(r, base, m);
    }
    return r;
}

template <class Field>
Poly<Field> pow(Poly<Field> const& base, unsigned long e)
{
    Poly<Field> r = Poly<Field>::constant(base.field(), base.field().one());
    for (unsigned long i = 0; i < e; ++i)
        r = r * base;
    return r;
}

/// Single-step extension F_p[t]/(g) with g monic irreducible over F_p.
class ExtensionField {
  public:
    using Element = FpPoly;

    explicit ExtensionField(FpPoly modulus);

    FpPoly const& modulus() const noexcept { return data_->modulus; }
    PrimeField const& base() const noexcept { return data_->base; }

    std::uint64_t characteristic() const noexcept { return data_->base.characteristic(); }
    unsigned degree() const noexcept { return static_cast<unsigned>(data_->modulus.degree()); }
    BigInt order() const { return pow(data_->base.order(), degree()); }

    Element zero() const { return FpPoly(data_->base); }
    Element one() const { return FpPoly::constant(data_->base, 1); }
    Element generator() const { return FpPoly::x(data_->base) % data_->modulus; }
    Element from_integer(BigInt const& t) const { return FpPoly::constant(data_->base, data_->base.from_integer(t)); }
    Element from_integer(std::int64_t t) const { return FpPoly::constant(data_->base, data_->base.from_integer(t)); }
    Element from_base(std::uint64_t t) const { return FpPoly::constant(data_->base, t % characteristic()); }
    Element reduce(FpPoly const& t) const { return t % data_->modulus; }

    Element add(Element const& a, Element const& b) const { return a + b; }
    Element sub(Element const& a, Element const& b) const { return a - b; }
    Element neg(Element const& a) const { return -a; }
    Element mul(Element const& a, Element const& b) const { return (a * b) % data_->modulus; }
    Element inv(Element const& a) const;
    Element power(Element const& a, BigInt const& e) const
    {
        if (e < 0)
            return powmod(inv(a), BigInt(-e), data_->modulus);
        return powmod(a, e, data_->modulus);
    }
    bool is_zero(Element const& a) const { return a.is_zero(); }
    bool equal(Element const& a, Element const& b) const { return a == b; }
    Element pth_root(Element const& a) const { return power(a, order() / characteristic()); }
    Element random(std::mt19937_64& rng) const
    {
        std::vector<std::uint64_t> v(degree());
        for (auto& t : v)
            t = rng() % characteristic();
        return FpPoly(data_->base, std::move(v));
    }
    bool less(Element const& a, Element const& b) const
    {
        for (unsigned i = 0; i < degree(); ++i) {
            if (a.coeff(i) != b.coeff(i))
                return a.coeff(i) < b.coeff(i);
        }
        return false;
    }
    /// Elements print as polynomials in the generator `a`.
    std::string format(Element const& e) const { return degree() == 1 ? std::to_string(e.coeff(0)) : e.format("a"); }

    friend bool operator==(ExtensionField const& x, ExtensionField const& y)
    {
        return x.data_ == y.data_ || x.data_->modulus == y.data_->modulus;
    }

  private:
    struct Data {
        PrimeField base;
        FpPoly modulus;
    };
    std::shared_ptr<Data const> data_;
};

using FqElement = ExtensionField::Element;
using FqPoly = Poly<ExtensionField>;

template <class Field>
struct FactorEntry {
    Poly<Field> factor;
    unsigned multiplicity;
};

namespace detail {

template <class Field>
Poly<Field> pth_root_poly(Poly<Field> const& f)
{
    auto const& F = f.field();
    std::uint64_t p = F.characteristic();
    std::vector<typename Field::Element> v;
    for (std::size_t i = 0; i < f.coefficients().size(); i += p)
        v.push_back(F.pth_root(f.coeff(i)));
    return Poly<Field>(F, std::move(v));
}

} // namespace detail

/// Square-free decomposition of a monic polynomial: pairs (s_i, i) with s_i square-free.
template <class Field>
std::vector<FactorEntry<Field>> squarefree_factorization(Poly<Field> const& f)
{
    std::vector<FactorEntry<Field>> out;
    if (f.degree() < 1)
        return out;
    auto c = gcd(f, f.derivative());
    auto w = f.monic() / c;
    unsigned i = 1;
    while (!w.is_one()) {
        auto y = gcd(w, c);
        auto fac = w / y;
        if (!fac.is_one())
            out.push_back({fac.monic(), i});
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) {
        auto root = detail::pth_root_poly(c);
        auto p = static_cast<unsigned>(f.field().characteristic());
        for (auto& e : squarefree_factorization(root.monic()))
            out.push_back({e.factor, e.multiplicity * p});
    }
    return out;
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs (g_d, d).
template <class Field>
std::vector<FactorEntry<Field>> distinct_degree_factorization(Poly<Field> f)
{
    std::vector<FactorEntry<Field>> out;
    auto const& F = f.field();
    BigInt q = F.order();
    auto x = Poly<Field>::x(F);
    auto h = x % f;
    unsigned d = 1;
    while (f.degree() >= 2 * static_cast<int>(d)) {
        h = powmod(h, q, f);
        auto g = gcd(h - x, f);
        if (!g.is_one()) {
            out.push_back({g, d});
            f = f / g;
            h = h % f;
        }
        ++d;
    }
    if (f.degree() > 0)
        out.push_back({f.monic(), static_cast<unsigned>(f.degree())});
    return out;
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles.
template <class Field>
void equal_degree_factorization(Poly<Field> const& g, unsigned d, std::mt19937_64& rng,
                                std::vector<Poly<Field>>& out)
{
    if (g.degree() == static_cast<int>(d)) {
        out.push_back(g.monic());
        return;
    }
    auto const& F = g.field();
    BigInt q = F.order();
    bool even = F.characteristic() == 2;
    for (;;) {
        std::vector<typename Field::Element> v;
        for (int i = 0; i < g.degree(); ++i)
            v.push_back(F.random(rng));
        Poly<Field> a(F, std::move(v));
        if (a.degree() < 1)
            continue;
        Poly<Field> b(F);
        if (even) {
            // trace map to F_2: a + a^2 + ... + a^(2^(k d - 1))
            unsigned steps = F.degree() * d;
            auto t = a % g;
            b = t;
            for (unsigned i = 1; i < steps; ++i) {
                t = mulmod(t, t, g);
                b = b + t;
            }
        } else {
            BigInt e = (pow(q, d) - 1) / 2;
            b = powmod(a, e, g) - Poly<Field>::constant(F, F.one());
        }
        auto u = gcd(g, b);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            equal_degree_factorization(u, d, rng, out);
            equal_degree_factorization(g / u, d, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, in
/// canonical order (degree, then coefficients). The leading unit is dropped.
template <class Field>
std::vector<FactorEntry<Field>> factor(Poly<Field> const& f)
{
    if (f.is_zero())
        throw std::domain_error("factorization of the zero polynomial");
    std::vector<FactorEntry<Field>> out;
    std::mt19937_64 rng(0x6d6f6e6f74726921ULL);
    for (auto const& sq : squarefree_factorization(f.monic())) {
        for (auto const& dd : distinct_degree_factorization(sq.factor)) {
            std::vector<Poly<Field>> parts;
            equal_degree_factorization(dd.factor, dd.multiplicity, rng, parts);
            for (auto& part : parts)
                out.push_back({std::move(part), sq.multiplicity});
        }
    }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
        if (!(x.factor == y.factor))
            return canonical_less(x.factor, y.factor);
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

template <class Field>
bool is_separable(Poly<Field> const& g)
{
    if (g.degree() < 1)
        return true;
    return gcd(g, g.derivative()).degree() == 0;
}

template <class Field>
bool is_irreducible(Poly<Field> const& g)
{
    if (g.degree() < 1)
        return false;
    auto fs = factor(g);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

inline ExtensionField::ExtensionField(FpPoly modulus)
{
    if (modulus.degree() < 1)
        throw std::domain_error("extension modulus must have positive degree");
    modulus = modulus.monic();
    if (!is_irreducible(modulus))
        throw std::domain_error("extension modulus is reducible: " + modulus.format());
    data_ = std::make_shared<Data const>(Data{modulus.field(), std::move(modulus)});
}

inline ExtensionField::Element ExtensionField::inv(Element const& a) const
{
    if (a.is_zero())
        throw std::domain_error("inverse of zero in extension field");
    // extended Euclid on (a, modulus)
    auto const& F = data_->base;
    FpPoly r0 = data_->modulus, r1 = a % data_->modulus;
    FpPoly s0(F), s1 = one();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        auto s = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant
    return (s0.scaled(F.inv(r0.coeff(0)))) % data_->modulus;
}

/// Embeds a polynomial over F_p into polynomials over an extension of F_p.
inline FqPoly embed(FpPoly const& f, ExtensionField const& field)
{
    std::vector<FqElement> v;
    for (auto c : f.coefficients())
        v.push_back(field.from_base(c));
    return FqPoly(field, std::move(v));
}

/// N_p(m, s, t): number of distinct monic irreducible degree-m factors of x^s + t mod p.
inline std::uint64_t count_binomial_factors(Prime p, std::uint64_t m, std::uint64_t s, BigInt const& t)
{
    if (m == 0 || s == 0)
        throw std::domain_error("count_binomial_factors: m and s must be positive");
    PrimeField F(p);
    auto g = FpPoly::monomial(F, 1, s) + FpPoly::constant(F, F.from_integer(t));
    std::uint64_t count = 0;
    for (auto const& e : factor(g))
        if (e.factor.degree() == static_cast<int>(m))
            ++count;
    return count;
}

} // namespace monotri

#endif /* MONOTRI_FQPOLY_HPP_ */

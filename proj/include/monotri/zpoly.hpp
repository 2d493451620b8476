#ifndef MONOTRI_ZPOLY_HPP_
#define MONOTRI_ZPOLY_HPP_

#include "monotri/fqpoly.hpp"
#include "monotri/intarith.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monotri {

/// Dense polynomial with integer coefficients, constant term first.
class IntPoly {
  public:
    IntPoly() = default;
    IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs)
    {
        for (long t : coeffs)
            c_.emplace_back(t);
        trim();
    }

    static IntPoly constant(BigInt c) { return IntPoly(std::vector<BigInt>{std::move(c)}); }
    static IntPoly monomial(BigInt c, std::size_t deg)
    {
        std::vector<BigInt> v(deg + 1);
        v[deg] = std::move(c);
        return IntPoly(std::move(v));
    }
    static IntPoly x() { return monomial(1, 1); }
    /// x - c
    static IntPoly linear(BigInt const& c) { return IntPoly(std::vector<BigInt>{-c, 1}); }

    std::vector<BigInt> const& coefficients() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    BigInt const& leading() const
    {
        if (c_.empty())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    BigInt content() const
    {
        BigInt g = 0;
        for (auto const& t : c_)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
        return g;
    }

    BigInt eval(BigInt const& t) const
    {
        BigInt r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * t + *it;
        return r;
    }

    IntPoly derivative() const
    {
        std::vector<BigInt> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(c_[i] * static_cast<unsigned long>(i));
        return IntPoly(std::move(v));
    }

    IntPoly scaled(BigInt const& s) const
    {
        std::vector<BigInt> v = c_;
        for (auto& t : v)
            t *= s;
        return IntPoly(std::move(v));
    }

    /// Exact division of every coefficient; throws if s does not divide.
    IntPoly divided_exactly(BigInt const& s) const
    {
        std::vector<BigInt> v = c_;
        for (auto& t : v) {
            if (!mpz_divisible_p(t.get_mpz_t(), s.get_mpz_t()))
                throw std::domain_error("inexact coefficient division");
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), s.get_mpz_t());
        }
        return IntPoly(std::move(v));
    }

    /// Composition: this(g(x)).
    IntPoly compose(IntPoly const& g) const
    {
        IntPoly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = r * g + constant(*it);
        return r;
    }

    FpPoly reduce(PrimeField const& F) const
    {
        std::vector<std::uint64_t> v;
        v.reserve(c_.size());
        for (auto const& t : c_)
            v.push_back(F.from_integer(t));
        return FpPoly(F, std::move(v));
    }

    /// Coefficient-wise minimum of p-adic valuations.
    Valuation valuation(Prime p) const
    {
        Valuation best = Valuation::infinity();
        for (auto const& t : c_)
            best = std::min(best, vp(t, p));
        return best;
    }

    friend IntPoly operator+(IntPoly const& x, IntPoly const& y)
    {
        std::vector<BigInt> v(std::max(x.c_.size(), y.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = x.coeff(i) + y.coeff(i);
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(IntPoly const& x, IntPoly const& y)
    {
        std::vector<BigInt> v(std::max(x.c_.size(), y.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = x.coeff(i) - y.coeff(i);
        return IntPoly(std::move(v));
    }
    IntPoly operator-() const { return scaled(-1); }
    friend IntPoly operator*(IntPoly const& x, IntPoly const& y)
    {
        if (x.is_zero() || y.is_zero())
            return {};
        std::vector<BigInt> v(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (sgn(x.c_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                v[i + j] += x.c_[i] * y.c_[j];
        }
        return IntPoly(std::move(v));
    }
    friend bool operator==(IntPoly const& x, IntPoly const& y) { return x.c_ == y.c_; }

    std::string format(std::string const& var = "x") const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            BigInt const& t = c_[i];
            if (sgn(t) == 0)
                continue;
            BigInt mag = abs(t);
            if (first)
                os << (sgn(t) < 0 ? "-" : "");
            else
                os << (sgn(t) < 0 ? " - " : " + ");
            first = false;
            if (i == 0 || mag != 1)
                os << mag.get_str();
            if (i > 0) {
                if (mag != 1)
                    os << "*";
                os << var;
                if (i > 1)
                    os << "^" << i;
            }
        }
        return os.str();
    }

  private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0)
            c_.pop_back();
    }

    std::vector<BigInt> c_;
};

inline IntPoly pow(IntPoly const& base, unsigned long e)
{
    IntPoly r = IntPoly::constant(1);
    for (unsigned long i = 0; i < e; ++i)
        r = r * base;
    return r;
}

/// Division by a monic divisor; returns (quotient, remainder).
inline std::pair<IntPoly, IntPoly> divmod(IntPoly const& f, IntPoly const& g)
{
    if (!g.is_monic())
        throw std::domain_error("divmod: divisor must be monic");
    if (f.degree() < g.degree())
        return {IntPoly(), f};
    std::vector<BigInt> r = f.coefficients();
    std::size_t dg = static_cast<std::size_t>(g.degree());
    std::vector<BigInt> q(r.size() - dg);
    auto const& gc = g.coefficients();
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt t = r[k + dg];
        q[k] = t;
        if (sgn(t) == 0)
            continue;
        for (std::size_t j = 0; j <= dg; ++j)
            r[k + j] -= t * gc[j];
    }
    r.resize(dg);
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

/// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f mod g.
inline IntPoly pseudo_remainder(IntPoly f, IntPoly const& g)
{
    if (g.is_zero())
        throw std::domain_error("pseudo_remainder by zero");
    int dg = g.degree();
    if (f.degree() < dg)
        return f;
    BigInt lc = g.leading();
    int e = f.degree() - dg + 1;
    while (!f.is_zero() && f.degree() >= dg) {
        auto shift = static_cast<std::size_t>(f.degree() - dg);
        IntPoly t = IntPoly::monomial(f.leading(), shift) * g;
        f = f.scaled(lc) - t;
        --e;
    }
    return f.scaled(pow(lc, static_cast<unsigned long>(e)));
}

/// Lift from F_p with representatives in [-p/2, p/2); a leading 1 stays 1 so monic lifts to monic.
inline IntPoly lift(FpPoly const& f)
{
    std::uint64_t p = f.field().characteristic();
    std::vector<BigInt> v;
    auto const& cs = f.coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto c = cs[i];
        BigInt t(static_cast<unsigned long>(c));
        bool leading_one = i > 0 && i + 1 == cs.size() && c == 1;
        if (2 * c >= p && !leading_one)
            t -= static_cast<unsigned long>(p);
        v.push_back(t);
    }
    return IntPoly(std::move(v));
}

/// Lift from F_p with representatives in [0, p).
inline IntPoly lift_nonnegative(FpPoly const& f)
{
    std::vector<BigInt> v;
    for (auto c : f.coefficients())
        v.emplace_back(static_cast<unsigned long>(c));
    return IntPoly(std::move(v));
}

/// Resultant by the subresultant algorithm over Z.
inline BigInt resultant(IntPoly A, IntPoly B)
{
    if (A.is_zero() || B.is_zero())
        return 0;
    BigInt a = A.content(), b = B.content();
    A = A.divided_exactly(a);
    B = B.divided_exactly(b);
    BigInt t = pow(a, static_cast<unsigned long>(B.degree())) * pow(b, static_cast<unsigned long>(A.degree()));
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -s;
    }
    BigInt g = 1, h = 1;
    while (B.degree() > 0) {
        int delta = A.degree() - B.degree();
        if (A.degree() % 2 == 1 && B.degree() % 2 == 1)
            s = -s;
        IntPoly R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.is_zero())
            return 0;
        B = R.divided_exactly(g * pow(h, static_cast<unsigned long>(delta)));
        g = A.leading();
        if (delta > 0) {
            BigInt num = pow(g, static_cast<unsigned long>(delta));
            BigInt den = pow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    // B is a nonzero constant here
    BigInt hd;
    {
        int dA = A.degree();
        BigInt num = pow(B.leading(), static_cast<unsigned long>(dA));
        if (dA == 0) {
            hd = 1;
        } else {
            BigInt den = pow(h, static_cast<unsigned long>(dA - 1));
            mpz_divexact(hd.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    return s * t * hd;
}

/// Discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f); zero when f has a repeated factor.
inline BigInt discriminant_resultant(IntPoly const& f)
{
    if (f.degree() < 1)
        throw std::domain_error("discriminant of a constant");
    int n = f.degree();
    BigInt r = resultant(f, f.derivative());
    BigInt out;
    mpz_divexact(out.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2)
        out = -out;
    return out;
}

/// x^n + a x + b with n >= 2 and b != 0.
class Trinomial {
  public:
    Trinomial(unsigned n, BigInt a, BigInt b) : n_(n), a_(std::move(a)), b_(std::move(b))
    {
        if (n_ < 2)
            throw std::domain_error("trinomial degree must be at least 2");
        if (sgn(b_) == 0)
            throw std::domain_error("b = 0: x divides the trinomial");
    }

    unsigned n() const noexcept { return n_; }
    BigInt const& a() const noexcept { return a_; }
    BigInt const& b() const noexcept { return b_; }

    IntPoly poly() const
    {
        std::vector<BigInt> v(n_ + 1);
        v[0] = b_;
        v[1] += a_;
        v[n_] += 1;
        return IntPoly(std::move(v));
    }

    std::string format() const { return poly().format(); }

    friend bool operator==(Trinomial const&, Trinomial const&) = default;

  private:
    unsigned n_;
    BigInt a_;
    BigInt b_;
};

/// Closed form (-1)^(n(n-1)/2) (n^n b^(n-1) + (1-n)^(n-1) a^n).
inline BigInt trinomial_discriminant(Trinomial const& t)
{
    unsigned long n = t.n();
    BigInt nn(n);
    BigInt one_minus_n = 1 - nn;
    BigInt d = pow(nn, n) * pow(t.b(), n - 1) + pow(one_minus_n, n - 1) * pow(t.a(), n);
    if ((n * (n - 1) / 2) % 2)
        d = -d;
    return d;
}

/// A phi-development f = sum A_j phi^j together with the p-adic valuations of the A_j.
/// The phi-adic one has deg A_j < deg phi; other developments are allowed for admissibility checks.
struct PhiDevelopment {
    IntPoly phi;
    Prime p;
    std::vector<IntPoly> coefficients;
    std::vector<Valuation> valuations;

    IntPoly reconstruct() const
    {
        IntPoly r;
        for (std::size_t j = coefficients.size(); j-- > 0;)
            r = r * phi + coefficients[j];
        return r;
    }

    bool is_adic() const
    {
        return std::all_of(coefficients.begin(), coefficients.end(),
                           [&](IntPoly const& c) { return c.degree() < phi.degree(); });
    }
};

inline PhiDevelopment make_development(IntPoly phi, Prime p, std::vector<IntPoly> coefficients)
{
    PhiDevelopment dev{std::move(phi), p, std::move(coefficients), {}};
    for (auto const& c : dev.coefficients)
        dev.valuations.push_back(c.valuation(p));
    return dev;
}

inline PhiDevelopment phi_expansion(IntPoly const& f, IntPoly const& phi, Prime p)
{
    if (!phi.is_monic() || phi.degree() < 1)
        throw std::domain_error("phi_expansion: phi must be monic of positive degree");
    if (phi.degree() > f.degree())
        throw std::domain_error("phi_expansion: deg phi exceeds deg f");
    std::vector<IntPoly> coeffs;
    IntPoly rest = f;
    while (!rest.is_zero()) {
        auto [q, r] = divmod(rest, phi);
        coeffs.push_back(std::move(r));
        rest = std::move(q);
    }
    return make_development(phi, p, std::move(coeffs));
}

/// f = phi U + p T with phi a monic lift of g and g not dividing U or T mod p.
struct LiftedFactor {
    IntPoly phi;
    IntPoly U;
    IntPoly T;
    Prime p;
    bool shifted; // phi was replaced by phi - p
};

inline LiftedFactor select_lift(IntPoly const& f, FpPoly const& g, Prime p)
{
    PrimeField F(p);
    if (!g.is_monic() || g.degree() < 1)
        throw std::domain_error("select_lift: g must be monic of positive degree");
    if (!(f.reduce(F) % g).is_zero())
        throw std::domain_error("select_lift: g does not divide f mod p");
    IntPoly phi = lift(g);
    auto [U1, R] = divmod(f, phi);
    Valuation l = R.valuation(p);
    LiftedFactor out{phi, U1, {}, p, false};
    if (l == Valuation(1)) {
        out.T = R.divided_exactly(p.big());
    } else {
        // substitute phi* = phi - p
        IntPoly star = phi - IntPoly::constant(p.big());
        auto [U2, R2] = divmod(U1, star);
        IntPoly R1 = l.is_infinite() ? IntPoly() : R.divided_exactly(pow(p.big(), l.value()));
        IntPoly scaled_R1 = l.is_infinite() ? IntPoly() : R1.scaled(pow(p.big(), l.value() - 1));
        out.phi = star;
        out.U = U1 + U2.scaled(p.big());
        out.T = R2 + scaled_R1;
        out.shifted = true;
    }
    if ((out.U.reduce(F) % g).is_zero())
        throw std::domain_error("select_lift: g divides U mod p (f not separable at g)");
    if (out.T.reduce(F).is_zero() || (out.T.reduce(F) % g).is_zero())
        throw std::domain_error("select_lift: T vanishes mod (p, g)");
    return out;
}

/// Why a trinomial is known to be irreducible over Q, or why it is not.
struct IrreducibilityCertificate {
    enum class Kind {
        unknown,
        reducible,
        eisenstein,
        irreducible_mod_p,
        one_sided_polygon,
        no_rational_root,
        degree_pattern,
    };

    Kind kind = Kind::unknown;
    std::uint64_t prime = 0;       // eisenstein, irreducible_mod_p, one_sided_polygon
    IntPoly phi;                   // one_sided_polygon / eisenstein: the key polynomial
    BigInt slope_h = 0;            // single side of slope -h/e
    BigInt slope_e = 0;
    std::optional<BigInt> root;    // reducible: an integer root
    std::vector<std::uint64_t> pattern_primes; // degree_pattern witnesses

    bool certified() const noexcept { return kind != Kind::unknown && kind != Kind::reducible; }
};

inline std::string to_string(IrreducibilityCertificate::Kind k)
{
    using K = IrreducibilityCertificate::Kind;
    switch (k) {
    case K::unknown: return "unknown";
    case K::reducible: return "reducible";
    case K::eisenstein: return "eisenstein";
    case K::irreducible_mod_p: return "irreducible-mod-p";
    case K::one_sided_polygon: return "one-sided-polygon";
    case K::no_rational_root: return "no-rational-root";
    case K::degree_pattern: return "degree-pattern";
    }
    return "unknown";
}

namespace detail {

/// An integer root of x^n + a x + b, if any. The polynomial is monotone
/// between its (at most two) real critical points, so a binary search
/// on each monotone integer interval suffices.
inline std::optional<BigInt> integer_root(Trinomial const& t)
{
    IntPoly f = t.poly();
    unsigned n = t.n();
    // any root r with |r| >= 2 has |r|^(n-1) <= |a| + |b|
    BigInt bound;
    BigInt s = abs(t.a()) + abs(t.b());
    mpz_root(bound.get_mpz_t(), s.get_mpz_t(), n - 1);
    bound += 2;
    BigInt k;
    {
        BigInt q = abs(t.a()) / n;
        mpz_root(k.get_mpz_t(), q.get_mpz_t(), n - 1);
    }
    auto search = [&](BigInt lo, BigInt hi) -> std::optional<BigInt> {
        if (lo > hi)
            return std::nullopt;
        int slo = sgn(f.eval(lo)), shi = sgn(f.eval(hi));
        if (slo == 0)
            return lo;
        if (shi == 0)
            return hi;
        if (slo == shi)
            return std::nullopt;
        while (hi - lo > 1) {
            BigInt mid = (lo + hi) / 2;
            int sm = sgn(f.eval(mid));
            if (sm == 0)
                return mid;
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
        }
        return std::nullopt;
    };
    BigInt kk = std::min(k, bound);
    for (auto const& [lo, hi] : {std::pair{BigInt(-bound), BigInt(-kk - 1)}, std::pair{BigInt(-kk), kk},
                                 std::pair{BigInt(kk + 1), bound}}) {
        if (auto r = search(lo, hi))
            return r;
    }
    return std::nullopt;
}

inline bool is_perfect_square(BigInt const& d) { return sgn(d) >= 0 && mpz_perfect_square_p(d.get_mpz_t()); }

} // namespace detail

inline IrreducibilityCertificate irreducibility_certificate(Trinomial const& t, std::uint64_t prime_limit = 200)
{
    using K = IrreducibilityCertificate::Kind;
    IrreducibilityCertificate cert;
    IntPoly f = t.poly();
    unsigned n = t.n();
    if (auto r = detail::integer_root(t)) {
        cert.kind = K::reducible;
        cert.root = *r;
        return cert;
    }
    if (n <= 3) {
        // any proper factor of a quadratic or cubic is linear; monic means rational roots are integers
        cert.kind = K::no_rational_root;
        return cert;
    }
    // Eisenstein-style certificates at primes dividing both a and b come first
    {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), t.a().get_mpz_t(), t.b().get_mpz_t());
        if (sgn(g) != 0 && g != 1) {
            for (auto const& [q, k] : trial_factor(g, 1000000).factors) {
                if (q >= Prime::max_value)
                    continue;
                Prime p(q.get_ui());
                BigInt u0 = vp(t.b(), p).value();
                BigInt nb(n), gg;
                mpz_gcd(gg.get_mpz_t(), u0.get_mpz_t(), nb.get_mpz_t());
                // (1, v(a)) must lie on or above the segment (0, u0)-(n, 0)
                bool above = sgn(t.a()) == 0 || nb * BigInt(vp(t.a(), p).value()) >= u0 * BigInt(n - 1);
                if (above && gg == 1) {
                    cert.kind = u0 == 1 ? K::eisenstein : K::one_sided_polygon;
                    cert.prime = p.value();
                    cert.phi = IntPoly::x();
                    cert.slope_h = u0;
                    cert.slope_e = n;
                    return cert;
                }
            }
        }
    }
    // possible degrees of a rational factor, narrowed by every factorization mod p
    std::set<unsigned> feasible;
    for (unsigned d = 1; d < n; ++d)
        feasible.insert(d);
    std::vector<std::uint64_t> used;
    for (auto q : primes_below(prime_limit)) {
        Prime p(q);
        PrimeField F(p);
        auto facs = factor(f.reduce(F));
        if (facs.size() == 1) {
            auto const& g = facs[0].factor;
            unsigned k = facs[0].multiplicity;
            if (k == 1) {
                cert.kind = K::irreducible_mod_p;
                cert.prime = q;
                return cert;
            }
            // f = phi^k mod p: a single side with gcd(height, k) = 1 certifies irreducibility
            IntPoly phi = lift(g);
            auto dev = phi_expansion(f, phi, p);
            if (dev.valuations[0].is_finite() && dev.coefficients.size() == k + 1) {
                BigInt u0 = dev.valuations[0].value();
                bool on_or_above = true;
                for (unsigned i = 1; i < k; ++i) {
                    // (i, u_i) on or above the segment (0,u0)-(k,0)
                    if (dev.valuations[i].is_finite() &&
                        BigInt(k) * BigInt(dev.valuations[i].value()) < u0 * BigInt(k - i)) {
                        on_or_above = false;
                        break;
                    }
                }
                BigInt gg;
                BigInt kb(k);
                mpz_gcd(gg.get_mpz_t(), u0.get_mpz_t(), kb.get_mpz_t());
                if (on_or_above && gg == 1) {
                    bool eis = phi == IntPoly::x() && u0 == 1;
                    cert.kind = eis ? K::eisenstein : K::one_sided_polygon;
                    cert.prime = q;
                    cert.phi = phi;
                    cert.slope_h = u0;
                    cert.slope_e = k;
                    return cert;
                }
            }
        }
        std::set<unsigned> sums{0};
        for (auto const& e : facs) {
            for (unsigned m = 0; m < e.multiplicity; ++m) {
                std::set<unsigned> next = sums;
                for (auto s : sums)
                    next.insert(s + static_cast<unsigned>(e.factor.degree()));
                sums = std::move(next);
            }
        }
        std::set<unsigned> kept;
        for (auto d : feasible)
            if (sums.count(d))
                kept.insert(d);
        if (kept.size() < feasible.size())
            used.push_back(q);
        feasible = std::move(kept);
        if (feasible.empty()) {
            cert.kind = K::degree_pattern;
            cert.pattern_primes = used;
            return cert;
        }
    }
    return cert;
}

/// Dedekind's criterion: true iff p does not divide the index of Z[theta].
inline bool dedekind_p_maximal(IntPoly const& f, Prime p)
{
    if (!f.is_monic())
        throw std::domain_error("dedekind_p_maximal: f must be monic");
    PrimeField F(p);
    FpPoly fbar = f.reduce(F);
    auto facs = factor(fbar);
    FpPoly gbar = FpPoly::constant(F, 1);
    for (auto const& e : facs)
        gbar = gbar * e.factor;
    FpPoly hbar = fbar / gbar;
    IntPoly g = lift(gbar), h = lift(hbar);
    IntPoly big = (g * h - f).divided_exactly(p.big());
    FpPoly z = gcd(gcd(big.reduce(F), gbar), hbar);
    return z.degree() == 0;
}

} // namespace monotri

#endif /* MONOTRI_ZPOLY_HPP_ */

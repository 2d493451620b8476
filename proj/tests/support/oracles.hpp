// Independent reference computations for the test suites. These use the most
// direct method available (brute force, Bareiss determinants, enumeration) and
// share no algorithm with the library beyond BigInt arithmetic.
#ifndef MONOTRI_TEST_ORACLES_HPP_
#define MONOTRI_TEST_ORACLES_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;

/// Determinant by fraction-free Bareiss elimination.
inline Z bareiss_det(std::vector<std::vector<Z>> m)
{
    std::size_t n = m.size();
    if (n == 0)
        return 1;
    Z prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Discriminant of a polynomial (coefficients low to high) via its Sylvester matrix with f'.
inline Z sylvester_discriminant(std::vector<Z> const& f)
{
    std::size_t n = f.size() - 1;
    std::vector<Z> df;
    for (std::size_t i = 1; i <= n; ++i)
        df.push_back(f[i] * static_cast<unsigned long>(i));
    std::size_t m = n - 1;
    std::size_t size = n + m;
    std::vector<std::vector<Z>> s(size, std::vector<Z>(size, 0));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i)
            s[r][r + i] = f[n - i];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i)
            s[m + r][r + i] = df[m - i];
    Z res = bareiss_det(s);
    Z d = res / f[n];
    if ((n * (n - 1) / 2) % 2)
        d = -d;
    return d;
}

/// v_p(t) by repeated division; -1 for t = 0.
inline long valuation(Z t, unsigned long p)
{
    if (t == 0)
        return -1;
    long v = 0;
    while (t % p == 0) {
        t /= p;
        ++v;
    }
    return v;
}

inline Z binomial(unsigned long n, unsigned long k)
{
    Z r = 1;
    for (unsigned long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// ---- polynomials over F_p as plain vectors, low to high ----

using Fp = std::vector<std::uint64_t>;

inline void trim(Fp& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Fp mul(Fp const& a, Fp const& b, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Fp c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    for (std::uint64_t x = 1; x < p; ++x)
        if (a * x % p == 1)
            return x;
    return 0;
}

/// Remainder of a by b.
inline Fp rem(Fp a, Fp const& b, std::uint64_t p)
{
    trim(a);
    std::uint64_t li = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = a.back() * li % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
        trim(a);
    }
    return a;
}

/// All monic polynomials of degree d over F_p.
inline std::vector<Fp> monic_polynomials(std::uint64_t p, unsigned d)
{
    std::vector<Fp> out;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i)
        total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        Fp f(d + 1, 0);
        f[d] = 1;
        std::uint64_t c = code;
        for (unsigned i = 0; i < d; ++i) {
            f[i] = c % p;
            c /= p;
        }
        out.push_back(f);
    }
    return out;
}

/// Irreducible iff no monic divisor of degree 1..d/2, checked by enumeration.
inline bool irreducible_by_search(Fp const& f, std::uint64_t p)
{
    unsigned d = static_cast<unsigned>(f.size() - 1);
    for (unsigned k = 1; 2 * k <= d; ++k)
        for (auto const& g : monic_polynomials(p, k))
            if (rem(f, g, p).empty())
                return false;
    return true;
}

/// N_p(m) by enumerating monic polynomials.
inline std::uint64_t count_irreducible_by_search(std::uint64_t p, unsigned m)
{
    std::uint64_t c = 0;
    for (auto const& f : monic_polynomials(p, m))
        if (irreducible_by_search(f, p))
            ++c;
    return c;
}

/// Distinct monic irreducible degree-m divisors of x^s + t over F_p, by enumeration.
inline std::uint64_t binomial_factors_by_search(std::uint64_t p, unsigned m, unsigned s, long t)
{
    Fp g(s + 1, 0);
    g[s] = 1;
    g[0] = static_cast<std::uint64_t>(((t % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p));
    if (s == 0)
        return 0;
    std::uint64_t c = 0;
    for (auto const& f : monic_polynomials(p, m))
        if (irreducible_by_search(f, p) && rem(g, f, p).empty())
            ++c;
    return c;
}

// ---- Newton polygons, brute force ----

struct Point {
    long i;
    long u;
};

/// Value of the lower convex envelope of the points at abscissa x (between the extremes),
/// as the minimum over all chords spanning x.
inline Q envelope(std::vector<Point> const& pts, long x)
{
    std::optional<Q> best;
    for (auto const& a : pts)
        for (auto const& b : pts) {
            if (a.i > x || b.i < x)
                continue;
            Q v;
            if (a.i == b.i)
                v = Q(a.u);
            else
                v = Q(a.u) + Q(b.u - a.u, b.i - a.i) * (x - a.i);
            v.canonicalize();
            if (!best || v < *best)
                best = v;
        }
    return *best;
}

/// Vertices of the principal part: from the first point up to the first point of minimal ordinate.
inline std::vector<Point> principal_vertices(std::vector<Point> pts)
{
    std::sort(pts.begin(), pts.end(), [](Point x, Point y) { return x.i < y.i || (x.i == y.i && x.u < y.u); });
    long umin = pts.front().u;
    for (auto const& q : pts)
        umin = std::min(umin, q.u);
    long end = 0;
    for (auto const& q : pts)
        if (q.u == umin) {
            end = q.i;
            break;
        }
    std::vector<Point> used;
    for (auto const& q : pts)
        if (q.i <= end)
            used.push_back(q);
    std::vector<Point> out;
    long start = used.front().i;
    for (long x = start; x <= end; ++x) {
        Q e = envelope(used, x);
        bool is_data = false;
        for (auto const& q : used)
            if (q.i == x && Q(q.u) == e)
                is_data = true;
        if (!is_data)
            continue;
        if (x == start || x == end) {
            out.push_back({x, e.get_num().get_si()});
            continue;
        }
        Q left = envelope(used, x - 1), right = envelope(used, x + 1);
        if (left + right != 2 * e)
            out.push_back({x, e.get_num().get_si()});
    }
    return out;
}

/// Lattice points (i, u) with i >= 1, u >= 1 on or under the principal part, times deg phi.
inline std::uint64_t phi_index(std::vector<Point> const& pts, std::uint64_t deg_phi)
{
    auto verts = principal_vertices(pts);
    long end = verts.back().i;
    std::vector<Point> used;
    for (auto const& q : pts)
        if (q.i <= end)
            used.push_back(q);
    std::uint64_t count = 0;
    for (long x = std::max<long>(1, verts.front().i); x < end; ++x) {
        Q e = envelope(used, x) - verts.back().u;
        Z fl;
        mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
        if (fl > 0)
            count += fl.get_ui();
    }
    return count * deg_phi;
}

/// (x, y) with x u - y q = 1 and 0 <= y < u, by search over y.
inline std::optional<std::pair<Z, Z>> solve_generator(unsigned long u, Z const& q)
{
    for (unsigned long y = 0; y < u; ++y) {
        Z num = 1 + Z(y) * q;
        if (num % u == 0)
            return std::pair<Z, Z>{num / u, Z(y)};
    }
    return std::nullopt;
}

} // namespace oracle

#endif /* MONOTRI_TEST_ORACLES_HPP_ */

#ifndef MONOTRI_NEWTON_HPP_
#define MONOTRI_NEWTON_HPP_

#include "monotri/fqpoly.hpp"
#include "monotri/intarith.hpp"
#include "monotri/zpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace monotri {

struct LatticePoint {
    std::int64_t i;
    std::int64_t u;

    friend bool operator==(LatticePoint, LatticePoint) = default;
    friend auto operator<=>(LatticePoint, LatticePoint) = default;
};

/// A side of slope -h/e (gcd(h, e) = 1). Sides of the principal polygon have h > 0.
struct Side {
    LatticePoint start;
    LatticePoint end;
    std::int64_t h;
    std::int64_t e;

    static Side between(LatticePoint a, LatticePoint b)
    {
        std::int64_t di = b.i - a.i;
        std::int64_t du = a.u - b.u;
        if (di <= 0)
            throw std::domain_error("side endpoints must have increasing abscissa");
        std::int64_t g = std::gcd(di, du < 0 ? -du : du);
        return Side{a, b, du / g, di / g};
    }

    std::int64_t length() const noexcept { return end.i - start.i; }
    std::int64_t degree() const noexcept { return length() / e; }
    Rational slope() const { return Rational(BigInt(static_cast<long>(-h)), BigInt(static_cast<long>(e))); }

    /// Ordinate of the supporting line at abscissa i, as numerator over e.
    std::int64_t scaled_ordinate(std::int64_t i) const { return start.u * e - (i - start.i) * h; }

    bool on_line(std::int64_t i, std::int64_t u) const { return u * e == scaled_ordinate(i); }

    friend bool operator==(Side const&, Side const&) = default;
};

struct NewtonPolygon {
    std::vector<Side> sides;             // principal part: negative slopes, increasing
    std::vector<Side> nonnegative_sides; // kept for diagnostics

    bool empty() const noexcept { return sides.empty(); }
    std::int64_t length() const noexcept
    {
        return sides.empty() ? 0 : sides.back().end.i - sides.front().start.i;
    }
    std::vector<LatticePoint> vertices() const
    {
        std::vector<LatticePoint> out;
        for (auto const& s : sides) {
            if (out.empty())
                out.push_back(s.start);
            out.push_back(s.end);
        }
        return out;
    }
};

/// Lower convex hull of the points, split into its negative-slope part and the rest.
inline NewtonPolygon principal_polygon(std::vector<LatticePoint> points)
{
    NewtonPolygon out;
    if (points.empty())
        return out;
    std::sort(points.begin(), points.end());
    // keep the lowest point per abscissa
    std::vector<LatticePoint> pts;
    for (auto const& q : points)
        if (pts.empty() || pts.back().i != q.i)
            pts.push_back(q);
    auto cross = [](LatticePoint o, LatticePoint a, LatticePoint b) {
        return static_cast<__int128>(a.i - o.i) * (b.u - o.u) - static_cast<__int128>(a.u - o.u) * (b.i - o.i);
    };
    std::vector<LatticePoint> hull;
    for (auto const& q : pts) {
        // drop collinear middle points too: vertices only
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0)
            hull.pop_back();
        hull.push_back(q);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Side s = Side::between(hull[k], hull[k + 1]);
        (s.h > 0 ? out.sides : out.nonnegative_sides).push_back(s);
    }
    return out;
}

inline std::vector<LatticePoint> development_points(PhiDevelopment const& dev)
{
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < dev.valuations.size(); ++i)
        if (dev.valuations[i].is_finite())
            pts.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(dev.valuations[i].value())});
    return pts;
}

inline NewtonPolygon phi_newton_polygon(PhiDevelopment const& dev)
{
    return principal_polygon(development_points(dev));
}

/// Polygon of the phi-adic development; empty when phi does not divide f mod p.
inline NewtonPolygon phi_newton_polygon(IntPoly const& f, IntPoly const& phi, Prime p)
{
    PrimeField F(p);
    if (!is_irreducible(phi.reduce(F)))
        throw std::domain_error("phi is not irreducible mod p");
    if (!(f.reduce(F) % phi.reduce(F)).is_zero())
        return {};
    return phi_newton_polygon(phi_expansion(f, phi, p));
}

/// F_phi = F_p[x]/(phi mod p).
inline ExtensionField residue_field(IntPoly const& phi, Prime p) { return ExtensionField(phi.reduce(PrimeField(p))); }

struct ResidualPolynomial {
    Side side;
    FqPoly poly;
};

/// Residual coefficient at abscissa i relative to the line of `side`: zero off the line.
inline FqElement residual_coefficient(PhiDevelopment const& dev, Side const& side, std::int64_t i,
                                      ExtensionField const& field)
{
    auto idx = static_cast<std::size_t>(i);
    if (idx >= dev.coefficients.size() || dev.valuations[idx].is_infinite())
        return field.zero();
    auto u = static_cast<std::int64_t>(dev.valuations[idx].value());
    if (!side.on_line(i, u))
        return field.zero();
    IntPoly unit = dev.coefficients[idx].divided_exactly(pow(dev.p.big(), static_cast<unsigned long>(u)));
    return field.reduce(unit.reduce(field.base()));
}

inline ResidualPolynomial residual_polynomial(PhiDevelopment const& dev, Side const& side, ExtensionField const& field)
{
    std::vector<FqElement> c;
    for (std::int64_t j = 0; j <= side.degree(); ++j)
        c.push_back(residual_coefficient(dev, side, side.start.i + j * side.e, field));
    return {side, FqPoly(field, std::move(c))};
}

inline ResidualPolynomial residual_polynomial(PhiDevelopment const& dev, Side const& side)
{
    return residual_polynomial(dev, side, residue_field(dev.phi, dev.p));
}

/// deg(phi) times the lattice points with i >= 1, u >= 1 on or under the polygon.
inline std::uint64_t phi_index(NewtonPolygon const& polygon, std::uint64_t phi_degree)
{
    std::uint64_t count = 0;
    for (auto const& s : polygon.sides) {
        // abscissae in [start, end) of each side, so shared vertices count once
        for (std::int64_t i = std::max<std::int64_t>(s.start.i, 1); i < s.end.i; ++i)
            count += static_cast<std::uint64_t>(s.scaled_ordinate(i) / s.e);
    }
    return count * phi_degree;
}

/// Every vertex of the development's polygon carries a residually nonzero coefficient.
inline bool is_admissible(PhiDevelopment const& dev)
{
    PrimeField F(dev.p);
    FpPoly phibar = dev.phi.reduce(F);
    auto verts = phi_newton_polygon(dev).vertices();
    if (verts.empty()) {
        // degenerate principal part: the leftmost point of least ordinate
        auto pts = development_points(dev);
        if (pts.empty())
            return false;
        verts.push_back(*std::min_element(pts.begin(), pts.end(), [](LatticePoint x, LatticePoint y) {
            return x.u < y.u || (x.u == y.u && x.i < y.i);
        }));
    }
    for (auto const& v : verts) {
        auto idx = static_cast<std::size_t>(v.i);
        IntPoly unit = dev.coefficients[idx].divided_exactly(pow(dev.p.big(), static_cast<unsigned long>(v.u)));
        if ((unit.reduce(F) % phibar).is_zero())
            return false;
    }
    return true;
}

/// Polygon and residual data of f for one irreducible factor of f mod p.
struct FactorPolygon {
    FpPoly factor;
    unsigned multiplicity;
    IntPoly phi;
    PhiDevelopment development;
    NewtonPolygon polygon;
    std::vector<ResidualPolynomial> residuals;
    std::vector<bool> separable;

    bool regular() const
    {
        return std::all_of(separable.begin(), separable.end(), [](bool s) { return s; });
    }
};

inline FactorPolygon factor_polygon(IntPoly const& f, IntPoly const& phi, FpPoly const& factor, unsigned multiplicity,
                                    Prime p)
{
    FactorPolygon out{factor, multiplicity, phi, phi_expansion(f, phi, p), {}, {}, {}};
    out.polygon = phi_newton_polygon(out.development);
    auto field = ExtensionField(factor);
    for (auto const& s : out.polygon.sides) {
        out.residuals.push_back(residual_polynomial(out.development, s, field));
        out.separable.push_back(is_separable(out.residuals.back().poly));
    }
    return out;
}

/// First-order data for every factor of f mod p, with symmetric-range lifts.
inline std::vector<FactorPolygon> factor_polygons(IntPoly const& f, Prime p)
{
    if (!f.is_monic())
        throw std::domain_error("factor_polygons: f must be monic");
    std::vector<FactorPolygon> out;
    for (auto const& e : factor(f.reduce(PrimeField(p))))
        out.push_back(factor_polygon(f, lift(e.factor), e.factor, e.multiplicity, p));
    return out;
}

struct RegularityReport {
    bool regular;
    std::vector<FactorPolygon> factors;
};

inline RegularityReport is_p_regular(IntPoly const& f, Prime p)
{
    RegularityReport r{true, factor_polygons(f, p)};
    for (auto const& fp : r.factors)
        r.regular = r.regular && fp.regular();
    return r;
}

/// ASCII picture: `*` vertex, `+` lattice point on a side, `x` point above the polygon.
inline std::string render_polygon(std::vector<LatticePoint> const& points, NewtonPolygon const& polygon)
{
    std::int64_t width = 0, height = 0;
    for (auto const& q : points) {
        width = std::max(width, q.i);
        height = std::max(height, q.u);
    }
    height = std::min<std::int64_t>(height, 60);
    width = std::min<std::int64_t>(width, 120);
    std::vector<std::string> grid(static_cast<std::size_t>(height + 1),
                                  std::string(static_cast<std::size_t>(width + 1), '.'));
    auto on_polygon = [&](LatticePoint q) {
        for (auto const& s : polygon.sides)
            if (q.i >= s.start.i && q.i <= s.end.i && s.on_line(q.i, q.u))
                return true;
        return false;
    };
    auto verts = polygon.vertices();
    for (auto const& q : points) {
        if (q.i > width || q.u > height)
            continue;
        char mark = 'x';
        if (std::find(verts.begin(), verts.end(), q) != verts.end())
            mark = '*';
        else if (on_polygon(q))
            mark = '+';
        grid[static_cast<std::size_t>(q.u)][static_cast<std::size_t>(q.i)] = mark;
    }
    std::ostringstream os;
    int label = static_cast<int>(std::to_string(height).size());
    for (std::int64_t u = height; u >= 0; --u) {
        std::string lab = std::to_string(u);
        os << std::string(static_cast<std::size_t>(label) - lab.size(), ' ') << lab << " |";
        for (char ch : grid[static_cast<std::size_t>(u)])
            os << ' ' << ch;
        os << '\n';
    }
    os << std::string(static_cast<std::size_t>(label), ' ') << " +" << std::string(static_cast<std::size_t>(2 * (width + 1)), '-')
       << '\n';
    os << std::string(static_cast<std::size_t>(label), ' ') << "  ";
    for (std::int64_t i = 0; i <= width; ++i)
        os << ' ' << (i % 10);
    os << '\n';
    return os.str();
}

inline std::string format_side(Side const& s)
{
    std::ostringstream os;
    os << "(" << s.start.i << "," << s.start.u << ")-(" << s.end.i << "," << s.end.u << ") slope -" << s.h;
    if (s.e != 1)
        os << "/" << s.e;
    os << " e=" << s.e << " d=" << s.degree();
    return os.str();
}

} // namespace monotri

#endif /* MONOTRI_NEWTON_HPP_ */

#ifndef MONOTRI_ORE_HPP_
#define MONOTRI_ORE_HPP_

#include "monotri/fqpoly.hpp"
#include "monotri/intarith.hpp"
#include "monotri/newton.hpp"
#include "monotri/zpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace monotri {

struct PrimeIdeal {
    std::uint64_t e;
    std::uint64_t f;
    std::string provenance;
};

/// Multiset of (ramification, residue degree) pairs of the primes above p.
struct FactorShape {
    std::vector<PrimeIdeal> primes;
    bool complete = true;
    std::vector<std::string> unresolved;

    /// (e, f) pairs in increasing order.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs() const
    {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        for (auto const& q : primes)
            out.emplace_back(q.e, q.f);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint64_t degree_sum() const
    {
        std::uint64_t s = 0;
        for (auto const& q : primes)
            s += q.e * q.f;
        return s;
    }

    std::string format() const
    {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (auto const& [e, f] : pairs()) {
            os << (first ? "" : ",") << "(" << e << "," << f << ")";
            first = false;
        }
        os << "}";
        if (!complete)
            os << " partial";
        return os.str();
    }
};

/// First-order data for one factor of f mod p.
struct LocalFactorAnalysis {
    FactorPolygon data;
    std::vector<std::vector<FactorEntry<ExtensionField>>> residual_factors; // per side
    std::uint64_t index = 0;
    bool regular = true;
};

struct OreAnalysis {
    Prime p;
    std::uint64_t index_lower_bound = 0;
    bool regular = true;
    FactorShape shape; // complete iff regular
    std::vector<LocalFactorAnalysis> details;
};

namespace detail {

inline std::string describe(IntPoly const& phi, Side const& s, FqPoly const& psi)
{
    std::ostringstream os;
    os << "phi=" << phi.format() << " side " << format_side(s) << " psi=" << psi.format("y");
    return os.str();
}

} // namespace detail

/// Theorem of Ore with the symmetric-range lift of every factor of f mod p.
inline OreAnalysis ore_analysis(IntPoly const& f, Prime p)
{
    if (discriminant_resultant(f) == 0)
        throw std::domain_error("ore_analysis: f is not squarefree");
    OreAnalysis out{p, 0, true, {}, {}};
    for (auto& fp : factor_polygons(f, p)) {
        LocalFactorAnalysis local{std::move(fp), {}, 0, true};
        auto deg_phi = static_cast<std::uint64_t>(local.data.phi.degree());
        local.index = phi_index(local.data.polygon, deg_phi);
        for (std::size_t k = 0; k < local.data.residuals.size(); ++k) {
            auto const& res = local.data.residuals[k];
            auto facs = factor(res.poly);
            for (auto const& e : facs) {
                if (e.multiplicity > 1)
                    local.regular = false;
                else
                    out.shape.primes.push_back({static_cast<std::uint64_t>(res.side.e),
                                                deg_phi * static_cast<std::uint64_t>(e.factor.degree()),
                                                detail::describe(local.data.phi, res.side, e.factor)});
            }
            local.residual_factors.push_back(std::move(facs));
        }
        out.index_lower_bound += local.index;
        out.regular = out.regular && local.regular;
        out.details.push_back(std::move(local));
    }
    if (!out.regular) {
        out.shape.complete = false;
        out.shape.unresolved.push_back("not p-regular");
    }
    return out;
}

/// phi' = phi - z p^h for the nonnegative lift z of a residual root; phi' = phi mod p.
inline IntPoly refine_lift(IntPoly const& phi, Side const& side, FqElement const& root, Prime p)
{
    if (side.e != 1)
        throw std::domain_error("refine_lift: side has e > 1, refinement not applicable");
    IntPoly z = lift_nonnegative(root);
    return phi - z.scaled(pow(p.big(), static_cast<unsigned long>(side.h)));
}

/// Second-order valuation w.r.t. (phi, -h/e), scaled by e: min_j (e v(a_j) + j h).
inline Valuation augmented_valuation(IntPoly const& P, IntPoly const& phi, std::int64_t h, std::int64_t e, Prime p)
{
    if (P.is_zero())
        return Valuation::infinity();
    auto dev = P.degree() < phi.degree() ? make_development(phi, p, {P}) : phi_expansion(P, phi, p);
    Valuation best = Valuation::infinity();
    for (std::size_t j = 0; j < dev.coefficients.size(); ++j) {
        if (dev.valuations[j].is_infinite())
            continue;
        auto v = static_cast<std::uint64_t>(e) * dev.valuations[j].value() + j * static_cast<std::uint64_t>(h);
        best = std::min(best, Valuation(v));
    }
    return best;
}

/// Chain (phi; -h/e, phi2) with the order-two polygon of f and its residual data.
struct OrderTwoType {
    IntPoly phi;
    std::int64_t h = 0;
    std::int64_t e = 1;
    FqPoly psi1;
    IntPoly phi2;
    bool valid = false;
    std::string diagnostic;

    // filled by second_order_analysis
    std::vector<LatticePoint> points;
    NewtonPolygon polygon;
    std::vector<ResidualPolynomial> residuals; // over F_phi[y]/(psi1)
};

namespace detail {

/// First-order residual polynomial of b w.r.t. (phi, -h/e) together with the
/// twist exponent (s - l V)/e that normalizes it for use at order two.
struct FirstOrderReduction {
    std::uint64_t value; // augmented valuation V
    FqPoly poly;         // R1(b)(y) over F_phi
    std::int64_t twist;
};

inline FirstOrderReduction reduce_first_order(IntPoly const& b, IntPoly const& phi, std::int64_t h, std::int64_t e,
                                              Prime p, ExtensionField const& field, std::int64_t ell, std::int64_t ellp)
{
    auto dev = b.degree() < phi.degree() ? make_development(phi, p, {b}) : phi_expansion(b, phi, p);
    std::uint64_t V = augmented_valuation(b, phi, h, e, p).value();
    std::int64_t s = -1;
    std::vector<FqElement> c;
    for (std::size_t j = 0; j < dev.coefficients.size(); ++j) {
        if (dev.valuations[j].is_infinite())
            continue;
        auto v = static_cast<std::uint64_t>(e) * dev.valuations[j].value() + j * static_cast<std::uint64_t>(h);
        if (v != V)
            continue;
        auto jj = static_cast<std::int64_t>(j);
        if (s < 0)
            s = jj;
        auto pos = static_cast<std::size_t>((jj - s) / e);
        if (c.size() <= pos)
            c.resize(pos + 1, field.zero());
        IntPoly unit = dev.coefficients[j].divided_exactly(pow(p.big(), dev.valuations[j].value()));
        c[pos] = field.reduce(unit.reduce(field.base()));
    }
    auto vs = static_cast<std::int64_t>(dev.valuations[static_cast<std::size_t>(s)].value());
    std::int64_t twist = -(s * ellp + ell * vs);
    return {V, FqPoly(field, std::move(c)), twist};
}

} // namespace detail

/// Builds phi2 = sum c_j phi^(j e) p^(h (f1 - j)) from the monic residual factor psi1 and verifies the type.
inline OrderTwoType make_order_two_type(IntPoly const& phi, Side const& side, FqPoly const& psi1, Prime p)
{
    OrderTwoType t{phi, side.h, side.e, psi1, {}, false, {}, {}, {}, {}};
    auto f1 = static_cast<std::size_t>(psi1.degree());
    IntPoly phi2;
    IntPoly phi_e = pow(phi, static_cast<unsigned long>(side.e));
    IntPoly power = IntPoly::constant(1);
    for (std::size_t j = 0; j <= f1; ++j) {
        IntPoly cj = j == f1 ? IntPoly::constant(1) : lift(psi1.coeff(j));
        phi2 = phi2 + (cj * power).scaled(pow(p.big(), static_cast<unsigned long>(side.h) * (f1 - j)));
        power = power * phi_e;
    }
    t.phi2 = phi2;
    // N_phi(phi2) must be one-sided of slope -h/e with residual polynomial psi1
    auto dev = phi_expansion(phi2, phi, p);
    auto poly = phi_newton_polygon(dev);
    if (poly.sides.size() != 1 || poly.sides[0].h != side.h || poly.sides[0].e != side.e) {
        t.diagnostic = "phi2 is not one-sided with the first-order slope";
        return t;
    }
    auto res = residual_polynomial(dev, poly.sides[0], psi1.field());
    if (!(res.poly.monic() == psi1.monic())) {
        t.diagnostic = "residual polynomial of phi2 differs from psi1";
        return t;
    }
    t.valid = true;
    return t;
}

struct SecondOrderResult {
    OrderTwoType type;
    std::vector<PrimeIdeal> primes;
    std::uint64_t index = 0; // contribution deg(phi) deg(psi1) ind(N2)
    bool complete = false;
    std::string diagnostic;
};

/// Order-two polygon and residual polynomials for the piece of f attached to (phi, side, psi1^m).
inline SecondOrderResult second_order_analysis(IntPoly const& f, OrderTwoType type, Prime p, unsigned multiplicity)
{
    SecondOrderResult out{std::move(type), {}, 0, false, {}};
    auto& t = out.type;
    if (multiplicity < 2) {
        out.diagnostic = "residual factor is separable; order two not needed";
        return out;
    }
    if (!t.valid) {
        out.diagnostic = "invalid order-two type: " + t.diagnostic;
        return out;
    }
    ExtensionField fphi = t.psi1.field();
    // F2 = F_phi[y]/(psi1) must be a single-step extension of F_p
    std::optional<ExtensionField> f2;
    FqElement z = fphi.zero();
    auto to_f2 = [&](FqElement const& c) -> FqElement {
        // F_phi elements into F2
        if (t.phi.degree() == 1)
            return f2->from_base(c.coeff(0));
        return c;
    };
    if (t.psi1.degree() == 1) {
        f2 = fphi;
        z = fphi.neg(fphi.mul(t.psi1.coeff(0), fphi.inv(t.psi1.coeff(1))));
    } else if (t.phi.degree() == 1) {
        std::vector<std::uint64_t> m;
        FqPoly psi = t.psi1.monic();
        for (auto const& c : psi.coefficients())
            m.push_back(c.coeff(0));
        f2 = ExtensionField(FpPoly(fphi.base(), std::move(m)));
        z = f2->generator();
    } else {
        out.diagnostic = "residue field tower needed (deg phi > 1 and deg psi1 > 1)";
        return out;
    }
    std::int64_t h = t.h, e = t.e;
    // l h - l' e = 1
    auto [g, s0, t0] = ext_gcd(BigInt(static_cast<long>(h)), BigInt(static_cast<long>(e)));
    std::int64_t ell = s0.get_si(), ellp = -t0.get_si();
    // normalize ell into [0, e)
    while (ell < 0) {
        ell += e;
        ellp += h;
    }
    while (ell >= e && e > 0) {
        ell -= e;
        ellp -= h;
    }
    std::uint64_t v_phi2 = augmented_valuation(t.phi2, t.phi, h, e, p).value();
    auto dev2 = phi_expansion(f, t.phi2, p);
    std::vector<detail::FirstOrderReduction> red;
    for (std::size_t i = 0; i < dev2.coefficients.size(); ++i) {
        auto const& b = dev2.coefficients[i];
        if (b.is_zero()) {
            red.push_back({0, FqPoly(fphi), 0});
            continue;
        }
        red.push_back(detail::reduce_first_order(b, t.phi, h, e, p, fphi, ell, ellp));
        t.points.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(red.back().value + i * v_phi2)});
    }
    t.polygon = principal_polygon(t.points);
    if (t.polygon.length() != static_cast<std::int64_t>(multiplicity)) {
        out.diagnostic = "order-two polygon length " + std::to_string(t.polygon.length()) +
                         " differs from residual multiplicity " + std::to_string(multiplicity);
        return out;
    }
    // points strictly above the last vertex, on or under the polygon, with i >= 1
    std::int64_t floor_u = t.polygon.sides.back().end.u;
    std::uint64_t count = 0;
    for (auto const& s2 : t.polygon.sides)
        for (std::int64_t i = std::max<std::int64_t>(s2.start.i, 1); i < s2.end.i; ++i)
            count += static_cast<std::uint64_t>(s2.scaled_ordinate(i) / s2.e - floor_u);
    out.index = count * static_cast<std::uint64_t>(t.phi.degree()) * static_cast<std::uint64_t>(t.psi1.degree());
    auto eval_in_f2 = [&](detail::FirstOrderReduction const& r) {
        FqElement acc = f2->zero();
        for (std::size_t k = r.poly.coefficients().size(); k-- > 0;)
            acc = f2->add(f2->mul(acc, z), to_f2(r.poly.coeff(k)));
        return f2->mul(acc, f2->power(z, BigInt(static_cast<long>(r.twist))));
    };
    bool all_separable = true;
    for (auto const& s2 : t.polygon.sides) {
        std::vector<FqElement> c;
        for (std::int64_t j = 0; j <= s2.degree(); ++j) {
            std::int64_t i = s2.start.i + j * s2.e;
            auto idx = static_cast<std::size_t>(i);
            bool on = !dev2.coefficients[idx].is_zero() &&
                      s2.on_line(i, static_cast<std::int64_t>(red[idx].value + idx * v_phi2));
            c.push_back(on ? eval_in_f2(red[idx]) : f2->zero());
        }
        FqPoly r2(*f2, std::move(c));
        t.residuals.push_back({s2, r2});
        for (auto const& fac : factor(r2)) {
            if (fac.multiplicity > 1) {
                all_separable = false;
                continue;
            }
            std::ostringstream prov;
            prov << "order two: phi=" << t.phi.format() << " phi2=" << t.phi2.format() << " side "
                 << format_side(s2) << " psi2=" << fac.factor.format("y");
            out.primes.push_back({static_cast<std::uint64_t>(e * s2.e),
                                  static_cast<std::uint64_t>(t.phi.degree()) *
                                      static_cast<std::uint64_t>(t.psi1.degree()) *
                                      static_cast<std::uint64_t>(fac.factor.degree()),
                                  prov.str()});
        }
    }
    if (!all_separable) {
        out.diagnostic = "order-two residual polynomial is not separable";
        return out;
    }
    out.complete = true;
    return out;
}

/// Full result for one prime: shape plus the trail of lifts and order-two types used.
struct ShapeAnalysis {
    Prime p;
    OreAnalysis first_order;
    FactorShape shape;
    std::uint64_t index_lower_bound = 0;
    std::vector<std::string> transcript;
    std::vector<SecondOrderResult> order_two;
};

namespace detail {

struct ShapeBuilder {
    IntPoly const& f;
    Prime p;
    ShapeAnalysis& out;
    std::uint64_t factor_index = 0; // best index over lifts of the current factor

    void resolve(PhiDevelopment const& dev, std::vector<Side> const& sides, ExtensionField const& field, unsigned budget)
    {
        auto deg_phi = static_cast<std::uint64_t>(dev.phi.degree());
        std::uint64_t second = 0;
        for (auto const& side : sides) {
            auto res = residual_polynomial(dev, side, field);
            for (auto const& fac : factor(res.poly)) {
                if (fac.multiplicity == 1) {
                    out.shape.primes.push_back({static_cast<std::uint64_t>(side.e),
                                                deg_phi * static_cast<std::uint64_t>(fac.factor.degree()),
                                                describe(dev.phi, side, fac.factor)});
                    continue;
                }
                if (side.e == 1 && fac.factor.degree() == 1 && budget > 0) {
                    refine(dev, side, fac.factor, fac.multiplicity, field, budget);
                    continue;
                }
                second += order_two(dev, side, fac.factor, fac.multiplicity);
            }
        }
        if (second > 0)
            factor_index = std::max(factor_index, phi_index(phi_newton_polygon(dev), deg_phi) + second);
    }

    void refine(PhiDevelopment const& dev, Side const& side, FqPoly const& psi, unsigned mult,
                ExtensionField const& field, unsigned budget)
    {
        FqElement root = field.neg(psi.coeff(0));
        IntPoly phi2 = refine_lift(dev.phi, side, root, p);
        auto dev2 = phi_expansion(f, phi2, p);
        auto poly2 = phi_newton_polygon(dev2);
        factor_index = std::max(factor_index, phi_index(poly2, static_cast<std::uint64_t>(phi2.degree())));
        std::vector<Side> steep;
        std::int64_t len = 0;
        for (auto const& s : poly2.sides) {
            if (s.h > side.h * s.e) { // -h'/e' < -h
                steep.push_back(s);
                len += s.length();
            }
        }
        std::ostringstream os;
        os << "refine " << dev.phi.format() << " -> " << phi2.format() << " at side " << format_side(side)
           << ": steep part length " << len;
        out.transcript.push_back(os.str());
        if (len != static_cast<std::int64_t>(mult)) {
            unresolved("refinement of " + dev.phi.format() + " lost track of the repeated root");
            return;
        }
        resolve(dev2, steep, field, budget - 1);
    }

    /// Returns the order-two index contribution, or zero when the type could not be resolved.
    std::uint64_t order_two(PhiDevelopment const& dev, Side const& side, FqPoly const& psi, unsigned mult)
    {
        auto type = make_order_two_type(dev.phi, side, psi.monic(), p);
        auto res = second_order_analysis(f, type, p, mult);
        std::ostringstream os;
        os << "order two at " << describe(dev.phi, side, psi) << ": phi2=" << res.type.phi2.format();
        if (!res.type.polygon.empty()) {
            os << " polygon";
            for (auto const& v : res.type.polygon.vertices())
                os << " (" << v.i << "," << v.u << ")";
        }
        out.transcript.push_back(os.str());
        if (res.complete) {
            for (auto const& q : res.primes)
                out.shape.primes.push_back(q);
        } else {
            unresolved(res.diagnostic);
        }
        std::uint64_t index = res.complete ? res.index : 0;
        out.order_two.push_back(std::move(res));
        return index;
    }

    void unresolved(std::string const& why)
    {
        out.shape.complete = false;
        out.shape.unresolved.push_back(why);
        out.transcript.push_back("unresolved: " + why);
    }
};

} // namespace detail

/// Ore's theorem, then refinement of lifts for repeated residual roots, then one order-two level.
inline ShapeAnalysis factor_shape(IntPoly const& f, Prime p)
{
    ShapeAnalysis out{p, ore_analysis(f, p), {}, 0, {}, {}};
    BigInt disc = discriminant_resultant(f);
    auto budget = static_cast<unsigned>(2 * (1 + vp(disc, p).value()));
    for (auto const& local : out.first_order.details) {
        auto const& data = local.data;
        std::ostringstream os;
        std::string factor = data.factor.format();
        if (data.factor.degree() > 1 || factor.find(' ') != std::string::npos)
            factor = "(" + factor + ")";
        os << "factor " << factor;
        if (data.multiplicity > 1)
            os << "^" << data.multiplicity;
        os << " lift " << data.phi.format() << " index " << local.index;
        out.transcript.push_back(os.str());
        detail::ShapeBuilder builder{f, p, out, local.index};
        builder.resolve(data.development, data.polygon.sides, ExtensionField(data.factor), budget);
        out.index_lower_bound += builder.factor_index;
    }
    return out;
}

} // namespace monotri

#endif /* MONOTRI_ORE_HPP_ */

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace monotri;

namespace {

std::vector<oracle::Point> to_oracle(std::vector<LatticePoint> const& pts)
{
    std::vector<oracle::Point> out;
    for (auto const& q : pts)
        out.push_back({q.i, q.u});
    return out;
}

void expect_matches_oracle(std::vector<LatticePoint> const& pts, NewtonPolygon const& poly, std::uint64_t deg_phi)
{
    auto verts = oracle::principal_vertices(to_oracle(pts));
    auto got = poly.vertices();
    if (verts.size() == 1) {
        EXPECT_TRUE(poly.empty());
        return;
    }
    ASSERT_EQ(got.size(), verts.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].i, verts[k].i);
        EXPECT_EQ(got[k].u, verts[k].u);
    }
    EXPECT_EQ(phi_index(poly, deg_phi), oracle::phi_index(to_oracle(pts), deg_phi));
}

} // namespace

TEST(Quartic, DevelopmentPolygonResidualsIndex)
{
    auto start = std::chrono::steady_clock::now();
    IntPoly f{95, -8, 12, -4, 1};
    Prime p(2);
    auto fps = factor_polygons(f, p);
    ASSERT_EQ(fps.size(), 1u);
    auto const& fp = fps[0];
    EXPECT_EQ(fp.phi, (IntPoly{-1, 1}));
    EXPECT_EQ(fp.multiplicity, 4u);
    std::vector<IntPoly> dev{IntPoly{96}, IntPoly{8}, IntPoly{6}, IntPoly(), IntPoly{1}};
    EXPECT_EQ(fp.development.coefficients, dev);
    auto verts = fp.polygon.vertices();
    ASSERT_EQ(verts.size(), 3u);
    EXPECT_EQ(verts[0], (LatticePoint{0, 5}));
    EXPECT_EQ(verts[1], (LatticePoint{2, 1}));
    EXPECT_EQ(verts[2], (LatticePoint{4, 0}));
    ASSERT_EQ(fp.residuals.size(), 2u);
    EXPECT_EQ(fp.residuals[0].poly.format("y"), "y^2 + y + 1");
    EXPECT_EQ(fp.residuals[1].poly.format("y"), "y + 1");
    EXPECT_EQ(fp.polygon.sides[0].h, 2);
    EXPECT_EQ(fp.polygon.sides[0].e, 1);
    EXPECT_EQ(fp.polygon.sides[1].h, 1);
    EXPECT_EQ(fp.polygon.sides[1].e, 2);
    EXPECT_EQ(phi_index(fp.polygon, 1), 4u);
    EXPECT_TRUE(fp.regular());
    expect_matches_oracle(development_points(fp.development), fp.polygon, 1);
    auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 0.1);
}

TEST(Side, Basics)
{
    auto s = Side::between({0, 5}, {2, 1});
    EXPECT_EQ(s.h, 2);
    EXPECT_EQ(s.e, 1);
    EXPECT_EQ(s.degree(), 2);
    EXPECT_EQ(s.slope(), Rational(-2));
    EXPECT_TRUE(s.on_line(1, 3));
    EXPECT_FALSE(s.on_line(1, 2));
    EXPECT_THROW(Side::between({2, 1}, {2, 0}), std::domain_error);
    auto t = Side::between({2, 1}, {4, 0});
    EXPECT_EQ(t.h, 1);
    EXPECT_EQ(t.e, 2);
    EXPECT_EQ(t.degree(), 1);
}

TEST(Hull, RandomPointSetsAgainstOracle)
{
    gen::Source src(31);
    for (int trial = 0; trial < 2000; ++trial) {
        auto len = src.range(1, 14);
        std::vector<LatticePoint> pts;
        for (std::int64_t i = 0; i <= len; ++i) {
            if (i > 0 && i < len && src.range(0, 3) == 0)
                continue; // infinite valuation
            pts.push_back({i, src.range(0, 12)});
        }
        pts.back().u = 0; // a factor's development ends at ordinate 0
        auto poly = principal_polygon(pts);
        expect_matches_oracle(pts, poly, static_cast<std::uint64_t>(src.range(1, 3)));
        // every point lies on or above every side's supporting line over its range
        for (auto const& s : poly.sides)
            for (auto const& q : pts)
                if (q.i >= s.start.i && q.i <= s.end.i) {
                    ASSERT_GE(q.u * s.e, s.scaled_ordinate(q.i));
                }
    }
}

TEST(Hull, TrinomialDevelopmentsAgainstOracle)
{
    gen::Source src(32);
    for (int trial = 0; trial < 300; ++trial) {
        auto t = src.trinomial(2, 20, 6);
        Prime p(src.pick(std::vector<std::uint64_t>{2, 3, 5, 7}));
        for (auto const& fp : factor_polygons(t.poly(), p))
            expect_matches_oracle(development_points(fp.development), fp.polygon,
                                  static_cast<std::uint64_t>(fp.phi.degree()));
    }
}

TEST(Residual, CoefficientsFromLatticePoints)
{
    // recompute each residual coefficient directly from its definition
    gen::Source src(33);
    for (int trial = 0; trial < 300; ++trial) {
        auto t = src.trinomial(2, 16, 5);
        Prime p(src.pick(std::vector<std::uint64_t>{2, 3, 5}));
        PrimeField F(p);
        for (auto const& fp : factor_polygons(t.poly(), p)) {
            for (std::size_t k = 0; k < fp.polygon.sides.size(); ++k) {
                auto const& s = fp.polygon.sides[k];
                auto const& R = fp.residuals[k].poly;
                ASSERT_EQ(R.degree(), s.degree());
                for (std::int64_t j = 0; j <= s.degree(); ++j) {
                    auto i = static_cast<std::size_t>(s.start.i + j * s.e);
                    auto const& A = fp.development.coefficients[i];
                    auto const& c = R.coeff(static_cast<std::size_t>(j));
                    if (A.is_zero() || !s.on_line(static_cast<std::int64_t>(i),
                                                  static_cast<std::int64_t>(A.valuation(p).value()))) {
                        ASSERT_TRUE(c.is_zero());
                        continue;
                    }
                    auto unit = A.divided_exactly(pow(p.big(), A.valuation(p).value()));
                    ASSERT_EQ(c, unit.reduce(F) % fp.factor);
                    ASSERT_FALSE(c.is_zero());
                }
            }
        }
    }
}

// A development f = sum A_j phi^j that is not phi-adic but admissible gives the same
// polygon and residual polynomials as the phi-adic one.
TEST(Admissible, PerturbedDevelopmentsAgree)
{
    gen::Source src(34);
    int tested = 0, rejected = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        auto t = src.trinomial(3, 14, 5);
        Prime p(src.pick(std::vector<std::uint64_t>{2, 3, 5}));
        for (auto const& fp : factor_polygons(t.poly(), p)) {
            if (fp.polygon.empty())
                continue;
            auto coeffs = fp.development.coefficients;
            // A_i += phi Q, A_{i+1} -= Q keeps the sum unchanged
            auto i = static_cast<std::size_t>(src.range(0, static_cast<std::int64_t>(coeffs.size()) - 2));
            BigInt scale = pow(p.big(), static_cast<unsigned long>(src.range(0, 4)));
            IntPoly Q = IntPoly{src.range(-3, 3), src.range(-3, 3)}.scaled(scale);
            coeffs[i] = coeffs[i] + fp.phi * Q;
            coeffs[i + 1] = coeffs[i + 1] - Q;
            auto dev = make_development(fp.phi, p, coeffs);
            ASSERT_EQ(dev.reconstruct(), t.poly());
            if (!is_admissible(dev)) {
                ++rejected;
                continue;
            }
            ++tested;
            auto poly = phi_newton_polygon(dev);
            ASSERT_EQ(poly.vertices(), fp.polygon.vertices()) << t.format() << " p=" << p;
            ExtensionField K(fp.factor);
            for (std::size_t k = 0; k < poly.sides.size(); ++k)
                ASSERT_EQ(residual_polynomial(dev, poly.sides[k], K).poly, fp.residuals[k].poly) << t.format();
        }
    }
    EXPECT_GT(tested, 500);
    EXPECT_GT(rejected, 0);
}

TEST(Regularity, QuarticAndIrregularExample)
{
    EXPECT_TRUE(is_p_regular(IntPoly{95, -8, 12, -4, 1}, Prime(2)).regular);
    // x^2 + 4: phi = x, one side (0,2)-(2,0) with residual y^2 + 1 = (y + 1)^2 over F_2
    auto r = is_p_regular(IntPoly{4, 0, 1}, Prime(2));
    EXPECT_FALSE(r.regular);
}

TEST(Render, MarksVertices)
{
    auto pts = std::vector<LatticePoint>{{0, 5}, {1, 3}, {2, 1}, {4, 0}};
    auto pic = render_polygon(pts, principal_polygon(pts));
    EXPECT_NE(pic.find('*'), std::string::npos);
    EXPECT_EQ(format_side(Side::between({0, 5}, {2, 1})), "(0,5)-(2,1) slope -2 e=1 d=2");
}

// monotri: monogenity of x^n + a x + b from the command line.
//
// Exit codes: 0 verdict reached, 2 inconclusive (or phi not a factor), 3 input error.

#include "monotri/monotri.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace monotri;

namespace {

constexpr int exit_verdict = 0;
constexpr int exit_inconclusive = 2;
constexpr int exit_input = 3;

BigInt parse_big(std::string const& s)
{
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

IntPoly parse_coefficients(std::string const& s)
{
    std::vector<BigInt> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        c.push_back(parse_big(item));
    IntPoly f(std::move(c));
    if (f.is_zero())
        throw std::invalid_argument("empty coefficient list");
    return f;
}

std::string summary_line(Verdict const& v)
{
    switch (v.status) {
    case Status::monogenic_with_generator:
        return "monogenic; generator " + format_generator(*v.generator, MonoParams::match(v.trinomial)->p);
    case Status::zk_equals_ztheta: return "monogenic; Z_K = Z[theta]";
    case Status::not_monogenic: {
        auto const& w = v.witnesses.front();
        std::ostringstream os;
        os << "not monogenic; " << w.p << " | i(K): P_" << w.m << " = " << w.primes << " > N_" << w.p << "(" << w.m
           << ") = " << to_string(w.irreducibles);
        return os.str();
    }
    case Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

int cmd_analyze(std::string const& n, std::string const& a, std::string const& b, std::optional<std::uint64_t> prime,
                bool json, bool verbose)
{
    Trinomial t(static_cast<unsigned>(std::stoul(n)), parse_big(a), parse_big(b));
    AnalyzeOptions opt;
    opt.only_prime = prime;
    Verdict v = analyze(t, opt);
    if (json) {
        std::cout << report_json(v).dump(2) << "\n";
    } else {
        std::cout << t.format() << "\n" << summary_line(v) << "\n";
        for (auto const& c : v.clauses())
            std::cout << "clause " << c << "\n";
        for (auto const& f : v.flags)
            std::cout << "flag " << f << "\n";
        if (verbose)
            for (auto const& line : v.transcript)
                std::cout << "  " << line << "\n";
    }
    return v.status == Status::inconclusive ? exit_inconclusive : exit_verdict;
}

void print_factor_polygon(FactorPolygon const& fp, std::ostream& os)
{
    os << "factor " << fp.factor.format() << " multiplicity " << fp.multiplicity << ", phi = " << fp.phi.format()
       << "\n";
    os << "  valuations";
    for (auto const& v : fp.development.valuations)
        os << " " << v;
    os << "\n  vertices";
    for (auto const& v : fp.polygon.vertices())
        os << " (" << v.i << "," << v.u << ")";
    os << "\n";
    for (std::size_t k = 0; k < fp.polygon.sides.size(); ++k) {
        os << "  side " << format_side(fp.polygon.sides[k]) << "  R(y) = " << fp.residuals[k].poly.format("y")
           << (fp.separable[k] ? "" : "  (not separable)") << "\n";
    }
    os << "  ind_phi = " << phi_index(fp.polygon, static_cast<std::uint64_t>(fp.phi.degree())) << "\n";
    os << render_polygon(development_points(fp.development), fp.polygon);
}

int cmd_polygon(std::vector<std::string> const& nab, std::string const& poly, std::uint64_t prime,
                std::string const& phi_spec, bool second_order)
{
    IntPoly f;
    if (!poly.empty()) {
        f = parse_coefficients(poly);
        if (!f.is_monic())
            throw std::invalid_argument("polynomial must be monic");
    } else if (nab.size() == 3) {
        f = Trinomial(static_cast<unsigned>(std::stoul(nab[0])), parse_big(nab[1]), parse_big(nab[2])).poly();
    } else {
        throw std::invalid_argument("give n a b or --poly");
    }
    Prime p(prime);
    std::cout << f.format() << " at p = " << p << "\n";
    if (!phi_spec.empty()) {
        IntPoly phi = parse_coefficients(phi_spec);
        PrimeField F(p);
        if (!phi.is_monic() || !is_irreducible(phi.reduce(F))) {
            std::cout << "phi = " << phi.format() << " is not monic irreducible mod " << p << "\n";
            return exit_inconclusive;
        }
        unsigned mult = 0;
        FpPoly rest = f.reduce(F);
        FpPoly phibar = phi.reduce(F);
        while (!rest.is_zero() && (rest % phibar).is_zero()) {
            rest = rest / phibar;
            ++mult;
        }
        if (mult == 0) {
            std::cout << "phi = " << phi.format() << " does not divide f mod " << p << "\n";
            return exit_inconclusive;
        }
        print_factor_polygon(factor_polygon(f, phi, phibar, mult, p), std::cout);
    } else {
        for (auto const& fp : factor_polygons(f, p))
            print_factor_polygon(fp, std::cout);
    }
    if (second_order) {
        auto shape = factor_shape(f, p);
        if (shape.order_two.empty())
            std::cout << "no order-two type needed\n";
        for (auto const& r : shape.order_two) {
            auto const& t = r.type;
            std::cout << "order two: phi = " << t.phi.format() << ", slope -" << t.h << "/" << t.e
                      << ", psi = " << t.psi1.format("y") << ", phi2 = " << t.phi2.format() << "\n";
            std::cout << "  points";
            for (auto const& q : t.points)
                std::cout << " (" << q.i << "," << q.u << ")";
            std::cout << "\n  vertices";
            for (auto const& v : t.polygon.vertices())
                std::cout << " (" << v.i << "," << v.u << ")";
            std::cout << "\n";
            for (auto const& res : t.residuals)
                std::cout << "  side " << format_side(res.side) << "  R2(y) = " << res.poly.format("y") << "\n";
            if (!r.complete)
                std::cout << "  unresolved: " << r.diagnostic << "\n";
            else
                std::cout << "  index contribution " << r.index << "\n";
            std::cout << render_polygon(t.points, t.polygon);
        }
        std::cout << "shape " << shape.shape.format() << ", index >= " << shape.index_lower_bound << "\n";
    }
    return exit_verdict;
}

int cmd_certify(std::string const& theorem, std::string const& n, std::string const& a, std::string const& b)
{
    auto th = parse_theorem(theorem);
    if (!th)
        throw std::invalid_argument("unknown theorem '" + theorem + "'");
    Trinomial t(static_cast<unsigned>(std::stoul(n)), parse_big(a), parse_big(b));
    std::cout << format_family(t, certify_family(t, *th));
    return exit_verdict;
}

int cmd_scan(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open scan spec " + path);
    ScanSpec spec = parse_scan_spec(in);
    std::ofstream file;
    if (!spec.output.empty()) {
        file.open(spec.output);
        if (!file)
            throw std::invalid_argument("cannot write " + spec.output);
    }
    std::ostream& out = spec.output.empty() ? std::cout : file;
    out << "n\ta\tb\tirreducibility\tstatus\tclauses\twitnesses\n";
    auto summary = run_scan(spec, [&](ScanRow const& r) { out << format_row(r) << "\n"; });
    std::cout << "rows " << summary.rows << "\n";
    for (auto const& [s, c] : summary.by_status)
        std::cout << "status " << s << " " << c << "\n";
    for (auto const& [id, c] : summary.by_clause)
        std::cout << "clause " << id << " fired " << c << " confirmed " << summary.confirmed[id] << "\n";
    return exit_verdict;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monogenity of number fields defined by trinomials x^n + a x + b"};
    app.require_subcommand(1);

    std::string n, a, b;
    std::optional<std::uint64_t> prime;
    bool json = false, verbose = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "decide monogenity of x^n + a x + b");
    analyze_cmd->add_option("n", n, "degree")->required();
    analyze_cmd->add_option("a", a, "coefficient of x")->required();
    analyze_cmd->add_option("b", b, "constant term")->required();
    analyze_cmd->add_option("--prime", prime, "only test this prime");
    analyze_cmd->add_flag("--json", json, "emit the versioned report");
    analyze_cmd->add_flag("--verbose", verbose, "print the transcript");

    std::vector<std::string> nab;
    std::string poly, phi;
    std::uint64_t poly_prime = 0;
    bool second = false;
    auto* polygon_cmd = app.add_subcommand("polygon", "phi-Newton polygons and residual polynomials");
    polygon_cmd->add_option("nab", nab, "n a b")->expected(0, 3);
    polygon_cmd->add_option("--poly", poly, "monic polynomial c0,c1,...,1 instead of a trinomial");
    polygon_cmd->add_option("--prime", poly_prime, "prime")->required();
    polygon_cmd->add_option("--phi", phi, "key polynomial c0,c1,...");
    polygon_cmd->add_flag("--second-order", second, "add order-two data");

    std::string theorem, cn, ca, cb;
    auto* certify_cmd = app.add_subcommand("certify", "evaluate one theorem's clauses");
    certify_cmd->add_option("theorem", theorem, "mono dpr c3r dn1 corn11 dn2 corn12 d51 d61")->required();
    certify_cmd->add_option("n", cn)->required();
    certify_cmd->add_option("a", ca)->required();
    certify_cmd->add_option("b", cb)->required();

    std::string spec_path;
    auto* scan_cmd = app.add_subcommand("scan", "scan a family of trinomials");
    scan_cmd->add_option("--spec", spec_path, "key = value spec file")->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input;
    }

    try {
        if (*analyze_cmd)
            return cmd_analyze(n, a, b, prime, json, verbose);
        if (*polygon_cmd)
            return cmd_polygon(nab, poly, poly_prime, phi, second);
        if (*certify_cmd)
            return cmd_certify(theorem, cn, ca, cb);
        if (*scan_cmd)
            return cmd_scan(spec_path);
    } catch (ReducibleInput const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}

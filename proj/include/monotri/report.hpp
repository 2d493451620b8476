#ifndef MONOTRI_REPORT_HPP_
#define MONOTRI_REPORT_HPP_

#include "monotri/monogenity.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace monotri {

using Json = nlohmann::ordered_json;

inline constexpr char const* report_schema = "monotri.report";
inline constexpr int report_version = 1;

inline Json witness_json(IndexWitness const& w)
{
    return Json{{"p", w.p}, {"m", w.m}, {"Pm", w.primes}, {"Npm", to_string(w.irreducibles)}};
}

inline Json shape_json(FactorShape const& s)
{
    Json pairs = Json::array();
    for (auto const& [e, f] : s.pairs())
        pairs.push_back(Json{{"e", e}, {"f", f}});
    return pairs;
}

inline Json census_json(ResidueCensus const& c)
{
    Json out = Json::object();
    for (auto const& [m, count] : c.counts)
        out[std::to_string(m)] = count;
    return out;
}

inline Json clause_json(ClauseFiring const& c)
{
    Json j{{"id", c.label()}, {"prime", c.prime}, {"condition", c.condition}, {"engine", to_string(c.engine)}};
    j["witness"] = c.witness ? witness_json(*c.witness) : Json(nullptr);
    if (!c.note.empty())
        j["note"] = c.note;
    return j;
}

/// Versioned report. Integers that may exceed 64 bits are written as decimal strings.
inline Json report_json(Verdict const& v)
{
    Json j;
    j["schema"] = report_schema;
    j["version"] = report_version;
    j["n"] = v.trinomial.n();
    j["a"] = to_string(v.trinomial.a());
    j["b"] = to_string(v.trinomial.b());
    j["discriminant"] = to_string(v.discriminant);
    Json irr{{"kind", to_string(v.irreducibility.kind)}};
    if (v.irreducibility.prime)
        irr["prime"] = v.irreducibility.prime;
    j["irreducibility"] = irr;
    Json cands = Json::array();
    for (auto p : v.candidates)
        cands.push_back(p.value());
    j["candidate_primes"] = cands;
    Json per = Json::array();
    for (auto const& t : v.per_prime) {
        Json e;
        e["p"] = t.p.value();
        e["complete"] = t.analysis.shape.complete;
        e["index_lower_bound"] = t.analysis.index_lower_bound;
        e["regular"] = t.analysis.first_order.regular;
        e["shape"] = shape_json(t.analysis.shape);
        e["census"] = census_json(t.census);
        e["common_index_divisor"] = to_string(t.verdict);
        e["witness"] = t.witness ? witness_json(*t.witness) : Json(nullptr);
        per.push_back(e);
    }
    j["per_prime"] = per;
    j["status"] = to_string(v.status);
    if (v.generator && v.status == Status::monogenic_with_generator) {
        auto params = MonoParams::match(v.trinomial);
        j["generator"] = Json{{"x", to_string(v.generator->x)},
                              {"y", to_string(v.generator->y)},
                              {"text", format_generator(*v.generator, params->p)},
                              {"minimal_polynomial", v.generator->minimal_polynomial->format()}};
    } else {
        j["generator"] = nullptr;
    }
    Json clauses = Json::array();
    for (auto const& fam : v.families)
        for (auto const& c : fam.fired)
            clauses.push_back(clause_json(c));
    j["clause"] = clauses;
    j["flags"] = v.flags;
    j["transcript"] = v.transcript;
    return j;
}

/// Plain-text account of one family check.
inline std::string format_family(Trinomial const& t, FamilyResult const& res)
{
    std::ostringstream os;
    os << t.format() << ", theorem " << to_string(res.theorem) << "\n";
    for (auto const& p : res.parameters)
        os << "  " << p << "\n";
    if (res.fired.empty())
        os << "no clause fired\n";
    for (auto const& c : res.fired) {
        os << "clause " << c.label() << " fired at p = " << c.prime << ": " << c.condition << "\n";
        os << "  engine " << to_string(c.engine);
        if (c.witness)
            os << ": P_" << c.witness->m << " = " << c.witness->primes << " > N_" << c.witness->p << "("
               << c.witness->m << ") = " << to_string(c.witness->irreducibles);
        os << "\n";
        if (!c.note.empty())
            os << "  " << c.note << "\n";
    }
    if (res.mono) {
        os << "  generator " << format_generator(*res.mono, MonoParams::match(t)->p)
           << (res.mono->passed() ? " certified" : " not certified") << "\n";
        if (res.mono->minimal_polynomial)
            os << "  minimal polynomial " << res.mono->minimal_polynomial->format() << "\n";
    }
    return os.str();
}

} // namespace monotri

#endif /* MONOTRI_REPORT_HPP_ */

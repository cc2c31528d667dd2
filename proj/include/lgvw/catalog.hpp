#pragma once

#include "lgvw/census.hpp"
#include "lgvw/errors.hpp"
#include "lgvw/group.hpp"
#include "lgvw/parser.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace lgvw {

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

inline Rational parse_rational_token(const std::string& tok)
{
    const std::string t = trim(tok);
    try {
        std::size_t used = 0;
        const auto slash = t.find('/');
        if (slash == std::string::npos) {
            long v = std::stol(t, &used);
            if (used != t.size()) throw ConfigError("bad phase '" + t + "'");
            return Rational(v);
        }
        long num = std::stol(t.substr(0, slash), &used);
        if (used != slash) throw ConfigError("bad phase '" + t + "'");
        const std::string den_s = t.substr(slash + 1);
        long den = std::stol(den_s, &used);
        if (used != den_s.size() || den <= 0) throw ConfigError("bad phase '" + t + "'");
        return make_rational(num, den);
    } catch (const std::logic_error&) {
        throw ConfigError("bad phase '" + t + "'");
    }
}

inline PhaseVector phase_from_json(const nlohmann::json& g)
{
    std::vector<Rational> ph;
    for (const auto& x : g) {
        if (x.is_array() && x.size() == 2 && x[0].is_number_integer() && x[1].is_number_integer() &&
            x[1].get<long>() > 0)
            ph.push_back(make_rational(x[0].get<long>(), x[1].get<long>()));
        else if (x.is_number_integer())
            ph.emplace_back(x.get<long>());
        else if (x.is_string())
            ph.push_back(parse_rational_token(x.get<std::string>()));
        else
            throw ConfigError("phase entries must be [num, den] pairs, integers or \"a/b\" strings");
    }
    return PhaseVector(ph);
}

}  // namespace detail

// Group specs: "J", "max", "SL" (G_W cap SL), "a/b,c/d;..." (generators
// separated by ';'), or JSON: [[1,3],[1,3],[1,3]] for one generator,
// [[[1,4],[1,4],[0,1]], [[0,1],[0,1],[1,2]]] for several.
inline DiagonalGroup resolve_group(const std::string& spec_in, const Polynomial& w)
{
    const std::string spec = detail::trim(spec_in);
    const std::size_t n = w.nvars();
    if (spec == "J") return minimal_admissible_group(w);
    if (spec == "max") return maximal_group(w);
    if (spec == "SL") return special_linear_part(maximal_group(w));
    if (spec.empty()) throw ConfigError("empty group spec");

    std::vector<PhaseVector> gens;
    if (spec.front() == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(spec);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("group spec is not valid JSON: ") + e.what());
        }
        if (!j.is_array() || j.empty()) throw ConfigError("group spec must be a non-empty list");
        const bool several = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
        if (several)
            for (const auto& g : j) gens.push_back(detail::phase_from_json(g));
        else
            gens.push_back(detail::phase_from_json(j));
    } else {
        std::stringstream ss(spec);
        std::string gen;
        while (std::getline(ss, gen, ';')) {
            std::vector<Rational> ph;
            std::stringstream gs(gen);
            std::string tok;
            while (std::getline(gs, tok, ',')) ph.push_back(detail::parse_rational_token(tok));
            gens.emplace_back(ph);
        }
    }
    for (const auto& g : gens) {
        if (g.size() != n)
            throw ConfigError("generator " + g.to_string() + " has " + std::to_string(g.size()) + " phases, W has " +
                              std::to_string(n) + " variables");
        if (!preserves(g, w)) throw NotASymmetryGroup("generator " + g.to_string() + " does not preserve W");
    }
    return subgroup_generated(gens, n);
}

struct CatalogPolynomial {
    std::string name;
    std::string polynomial;
    std::string default_group;
};

inline const std::vector<CatalogPolynomial>& catalog_polynomials()
{
    static const std::vector<CatalogPolynomial> list = [] {
        std::vector<CatalogPolynomial> v;
        const char* table_names[] = {"cubic",     "e7-fermat", "e8-fermat", "e6-chain",  "e7-chain",
                                     "e6-loop",   "e6-mixed1", "e6-mixed2", "e7-mixed1", "e7-mixed2",
                                     "e7-mixed3", "e8-mixed1", "e8-mixed2"};
        for (std::size_t i = 0; i < cy3_table().size(); ++i)
            v.push_back({table_names[i], cy3_table()[i].polynomial, "J"});
        for (int d = 2; d <= 8; ++d)
            v.push_back({"fermat2-d" + std::to_string(d), "x1^" + std::to_string(d) + "+x2^" + std::to_string(d), "J"});
        v.push_back({"pillowcase", "x1^4+x2^4+x3^2", "1/4,1/4,0;0,0,1/2"});
        v.push_back({"quintic", "x1^5+x2^5+x3^5+x4^5+x5^5", "J"});
        v.push_back({"sextic4", "x1^6+x2^6+x3^6+x4^6+x5^3", "SL"});
        return v;
    }();
    return list;
}

struct CatalogPair {
    std::string id;
    std::string polynomial;
    std::string group;
};

// Pairs used by the sweeps: x^a and x1^d + x2^d with <J>, the CY-3 table
// with <J> and G_W, and the pillowcase pair.
inline std::vector<CatalogPair> catalog_pairs()
{
    std::vector<CatalogPair> out;
    for (int a = 2; a <= 6; ++a) out.push_back({"x^" + std::to_string(a) + "/J", "x^" + std::to_string(a), "J"});
    for (const auto& p : catalog_polynomials()) {
        if (p.name.rfind("fermat2-", 0) == 0) out.push_back({p.name + "/J", p.polynomial, "J"});
        if (p.name == "pillowcase") out.push_back({p.name, p.polynomial, p.default_group});
    }
    for (std::size_t i = 0; i < cy3_table().size(); ++i) {
        const auto& p = catalog_polynomials()[i];
        out.push_back({p.name + "/J", p.polynomial, "J"});
        out.push_back({p.name + "/max", p.polynomial, "max"});
    }
    return out;
}

struct ResolvedPair {
    std::string id;
    Polynomial w;
    DiagonalGroup group;
    std::string polynomial;
    std::string group_spec;
};

// `pair` is a catalog name or a polynomial; an empty group spec takes the
// catalog default, or J for a bare polynomial.
inline ResolvedPair resolve_pair(const std::string& pair, const std::string& group_spec = "")
{
    ResolvedPair r;
    r.polynomial = pair;
    r.group_spec = group_spec;
    for (const auto& p : catalog_polynomials())
        if (p.name == pair) {
            r.polynomial = p.polynomial;
            if (r.group_spec.empty()) r.group_spec = p.default_group;
        }
    if (r.group_spec.empty()) r.group_spec = "J";
    r.w = parse_polynomial(r.polynomial);
    r.group = resolve_group(r.group_spec, r.w);
    r.id = pair + "/" + r.group_spec;
    return r;
}

}  // namespace lgvw

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/group.hpp"
#include "lgvw/invertible.hpp"
#include "lgvw/parser.hpp"
#include "lgvw/state_space.hpp"
#include "lgvw/weights.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lgvw {

// Invertible CY polynomials in three variables as printed in the
// literature table, with their weight-system column and atom row.
struct TableEntry {
    std::string column;  // E6, E7, E8
    std::string row;     // Fermat, Chain, Loop, Mixed
    std::string polynomial;
};

inline const std::vector<TableEntry>& cy3_table()
{
    static const std::vector<TableEntry> table = {
        {"E6", "Fermat", "x1^3+x2^3+x3^3"},
        {"E7", "Fermat", "x1^4+x2^4+x3^2"},
        {"E8", "Fermat", "x1^6+x2^3+x3^2"},
        {"E6", "Chain", "x1^2x2+x2^2x3+x3^3"},
        {"E7", "Chain", "x1^3x2+x2^2x3+x3^2"},
        {"E6", "Loop", "x1^2x2+x2^2x3+x3^2x1"},
        {"E6", "Mixed", "x1^3+x2^2x3+x3^3"},
        {"E6", "Mixed", "x1^2x2+x1x2^2+x3^3"},
        {"E7", "Mixed", "x1^3x2+x2^4+x3^2"},
        {"E7", "Mixed", "x1^4+x2^2x3+x3^2"},
        {"E7", "Mixed", "x1^3x2+x2^3x1+x3^2"},
        {"E8", "Mixed", "x1^4x2+x2^3+x3^2"},
        {"E8", "Mixed", "x1^3+x2^3x3+x3^2"},
    };
    return table;
}

inline std::string weight_column(const std::vector<Rational>& sorted_weights)
{
    const std::vector<Rational> e6{make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)};
    const std::vector<Rational> e7{make_rational(1, 4), make_rational(1, 4), make_rational(1, 2)};
    const std::vector<Rational> e8{make_rational(1, 6), make_rational(1, 3), make_rational(1, 2)};
    if (sorted_weights == e6) return "E6";
    if (sorted_weights == e7) return "E7";
    if (sorted_weights == e8) return "E8";
    return "other";
}

inline std::vector<Rational> sorted_weights(const Polynomial& w)
{
    auto q = weight_system(w).weights;
    std::sort(q.begin(), q.end());
    return q;
}

inline std::string atom_row(const AtomicDecomposition& d)
{
    bool all_fermat = true;
    for (const auto& a : d.atoms)
        if (a.type != Atom::Type::Fermat) all_fermat = false;
    if (all_fermat) return "Fermat";
    if (d.atoms.size() == 1) return d.atoms[0].type == Atom::Type::Chain ? "Chain" : "Loop";
    return "Mixed";
}

struct CensusEntry3 {
    std::string polynomial;
    std::vector<Monomial> canonical;
    std::vector<Rational> weights;
    std::string column;
    std::string row;
    std::string atoms;
};

namespace detail {

inline void atom_shapes(std::vector<int> remaining, std::vector<Atom>& current,
                        std::vector<std::vector<Atom>>& out)
{
    if (remaining.empty()) {
        out.push_back(current);
        return;
    }
    // The smallest remaining variable starts the next atom; ordered subsets
    // of the rest complete it.
    const int first = remaining.front();
    std::vector<int> rest(remaining.begin() + 1, remaining.end());
    const std::size_t m = rest.size();
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> chosen, left;
        for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1 ? chosen : left).push_back(rest[i]);
        std::sort(chosen.begin(), chosen.end());
        do {
            std::vector<int> vars{first};
            vars.insert(vars.end(), chosen.begin(), chosen.end());
            std::vector<Atom::Type> types;
            if (vars.size() == 1) types = {Atom::Type::Fermat};
            else types = {Atom::Type::Chain, Atom::Type::Loop};
            for (auto t : types) {
                current.push_back(Atom{t, std::vector<int>(vars.size(), 0), vars});
                atom_shapes(left, current, out);
                current.pop_back();
            }
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    }
}

}  // namespace detail

// All invertible polynomials in three variables with sum q_i = 1, up to
// variable permutation. Every exponent is at least 2 and at most max_exp.
inline std::vector<CensusEntry3> cy3_census(int max_exp = 12)
{
    std::vector<std::vector<Atom>> shapes;
    std::vector<Atom> cur;
    detail::atom_shapes({0, 1, 2}, cur, shapes);
    std::map<std::vector<Monomial>, CensusEntry3> found;
    for (auto shape : shapes) {
        std::vector<int*> slots;
        for (auto& a : shape)
            for (auto& e : a.exponents) slots.push_back(&e);
        std::vector<int> idx(slots.size(), 2);
        while (true) {
            for (std::size_t i = 0; i < slots.size(); ++i) *slots[i] = idx[i];
            const Polynomial w = assemble_atoms(shape, 3);
            bool keep = true;
            WeightSystem q;
            try {
                q = weight_system(w);
            } catch (const Error&) {
                keep = false;
            }
            if (keep && q.sum() == 1) {
                auto canon = canonical_rows(w);
                if (!found.count(canon)) {
                    CensusEntry3 e;
                    e.polynomial = w.to_string();
                    e.canonical = canon;
                    e.weights = sorted_weights(w);
                    e.column = weight_column(e.weights);
                    auto dec = classify_invertible(w);
                    e.row = atom_row(dec);
                    for (const auto& a : dec.atoms) e.atoms += (e.atoms.empty() ? "" : "+") + a.to_string();
                    found.emplace(canon, std::move(e));
                }
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] > max_exp) idx[k++] = 2;
            if (k == idx.size()) break;
        }
    }
    std::vector<CensusEntry3> out;
    for (auto& [k, e] : found) out.push_back(std::move(e));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.column, a.row, a.canonical) < std::tie(b.column, b.row, b.canonical);
    });
    return out;
}

struct CensusComparison {
    std::vector<CensusEntry3> census;
    std::vector<std::string> missing_from_census;  // table entries not found
    std::vector<std::string> missing_from_table;   // census entries not in the table
    std::vector<std::string> misplaced;            // table entries whose computed cell differs
    std::map<std::string, std::map<std::string, int>> cells;  // column -> row -> count
    bool matches() const { return missing_from_census.empty() && missing_from_table.empty() && misplaced.empty(); }
};

inline CensusComparison compare_cy3_census(int max_exp = 12)
{
    CensusComparison c;
    c.census = cy3_census(max_exp);
    std::set<std::vector<Monomial>> table_keys, census_keys;
    for (const auto& t : cy3_table()) table_keys.insert(canonical_rows(parse_polynomial(t.polynomial)));
    for (const auto& e : c.census) {
        census_keys.insert(e.canonical);
        ++c.cells[e.column][e.row];
        if (!table_keys.count(e.canonical)) c.missing_from_table.push_back(e.polynomial);
    }
    for (const auto& t : cy3_table()) {
        const Polynomial w = parse_polynomial(t.polynomial);
        if (!census_keys.count(canonical_rows(w))) c.missing_from_census.push_back(t.polynomial);
        if (weight_column(sorted_weights(w)) != t.column || atom_row(classify_invertible(w)) != t.row)
            c.misplaced.push_back(t.polynomial);
    }
    return c;
}

struct DegreeCriterion {
    bool applicable = false;
    std::string skip_reason;
    bool degrees_hold = false;           // deg_C >= 1 outside the J-sector
    Rational min_degree_outside_j;
    std::size_t elements_checked = 0;
    std::vector<std::string> violations;
    std::vector<PhaseVector> age1_narrow;     // age 1, N = 0
    bool age1_narrow_is_j = false;            // each has E theta = (1,..,1) and equals J
    std::size_t age1_one_fixed = 0;           // age 1, N = 1 sectors in G
    std::size_t age1_one_fixed_elements = 0;  // basis elements they contribute
    bool passed() const
    {
        return applicable && degrees_hold && age1_narrow_is_j && age1_one_fixed_elements == 0;
    }
};

// The high central charge criterion for CY pairs with G inside SL.
inline DegreeCriterion degree_criterion(const StateSpace& s)
{
    DegreeCriterion r;
    if (s.q.sum() != 1) {
        r.skip_reason = "W is not of Calabi-Yau type";
        return r;
    }
    if (s.chat < 3) {
        r.skip_reason = "central charge " + s.chat.get_str() + " < 3";
        return r;
    }
    for (const auto& g : s.group.generators())
        if (!is_special_linear(g)) {
            r.skip_reason = "G is not contained in SL";
            return r;
        }
    r.applicable = true;
    const PhaseVector j = exponential_grading_element(s.q);
    const QMatrix e = invertible_exponent_matrix(s.w);

    r.degrees_hold = true;
    bool first = true;
    for (const auto& el : s.basis) {
        if (el.gamma == j) continue;
        ++r.elements_checked;
        if (first || el.deg_c < r.min_degree_outside_j) r.min_degree_outside_j = el.deg_c;
        first = false;
        if (el.deg_c < 1) {
            r.degrees_hold = false;
            r.violations.push_back(el.label + " has deg_C = " + el.deg_c.get_str());
        }
    }

    r.age1_narrow_is_j = true;
    for (const auto& g : s.group.elements()) {
        if (g.age() != 1) continue;
        const auto fixed = g.fixed_indices();
        if (fixed.empty()) {
            r.age1_narrow.push_back(g);
            const auto v = multiply(e, g.phases());
            bool ones = true;
            for (const auto& x : v)
                if (x != 1) ones = false;
            if (!ones || !(g == j)) r.age1_narrow_is_j = false;
        } else if (fixed.size() == 1) {
            ++r.age1_one_fixed;
            for (const auto& el : s.basis)
                if (el.gamma == g) ++r.age1_one_fixed_elements;
        }
    }
    return r;
}

}  // namespace lgvw

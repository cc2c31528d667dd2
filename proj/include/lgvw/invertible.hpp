#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/polynomial.hpp"
#include "lgvw/weights.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace lgvw {

// Kreuzer-Skarke atom on the listed variables (0-based):
//   Fermat: x_v0^a0
//   Chain:  x_v0^a0 x_v1 + x_v1^a1 x_v2 + ... + x_vk^ak
//   Loop:   x_v0^a0 x_v1 + ... + x_vk^ak x_v0
struct Atom {
    enum class Type { Fermat, Chain, Loop };
    Type type;
    std::vector<int> exponents;
    std::vector<int> variables;

    std::string to_string() const
    {
        std::ostringstream os;
        os << (type == Type::Fermat ? "Fermat" : type == Type::Chain ? "Chain" : "Loop") << "(";
        for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
        os << ")";
        return os.str();
    }
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct AtomicDecomposition {
    std::vector<Atom> atoms;
    // owner[i] is the row (monomial) index whose dominant variable is x_i.
    std::vector<int> owner;
};

namespace detail {

inline std::vector<Monomial> monomials_of(const Polynomial& w)
{
    std::vector<Monomial> rows;
    for (const auto& [m, c] : w.terms()) rows.push_back(padded(m, w.nvars()));
    return rows;
}

}  // namespace detail

inline AtomicDecomposition classify_invertible(const Polynomial& w)
{
    const std::size_t n = w.nvars();
    auto rows = detail::monomials_of(w);
    if (rows.size() != n) throw NotInvertible("term count differs from variable count");
    if (is_zero(determinant(exponent_matrix(w))))
        throw NotInvertible("exponent matrix is singular");

    std::vector<int> owner(n, -1), target(n, -1), incoming(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<int> support;
        for (std::size_t i = 0; i < n; ++i)
            if (rows[r][i] != 0) support.push_back(static_cast<int>(i));
        int own = -1, tgt = -1;
        if (support.size() == 1 && rows[r][support[0]] >= 2) {
            own = support[0];
        } else if (support.size() == 2) {
            int a = support[0], b = support[1];
            if (rows[r][a] >= 2 && rows[r][b] == 1) own = a, tgt = b;
            else if (rows[r][b] >= 2 && rows[r][a] == 1) own = b, tgt = a;
        }
        if (own < 0) throw UnclassifiableAtom("monomial " + Polynomial::monomial(rows[r]).to_string());
        if (owner[own] >= 0)
            throw UnclassifiableAtom("variable x" + std::to_string(own + 1) + " dominates two monomials");
        owner[own] = static_cast<int>(r);
        target[own] = tgt;
        if (tgt >= 0 && ++incoming[tgt] > 1)
            throw UnclassifiableAtom("variable x" + std::to_string(tgt + 1) + " is pointed at twice");
    }

    AtomicDecomposition dec;
    dec.owner = owner;
    std::vector<bool> seen(n, false);
    auto exponent = [&](int v) { return rows[owner[v]][v]; };
    for (std::size_t v = 0; v < n; ++v) {
        if (incoming[v] != 0) continue;
        Atom atom;
        int cur = static_cast<int>(v);
        while (cur >= 0) {
            seen[cur] = true;
            atom.variables.push_back(cur);
            atom.exponents.push_back(exponent(cur));
            cur = target[cur];
        }
        atom.type = atom.variables.size() == 1 ? Atom::Type::Fermat : Atom::Type::Chain;
        dec.atoms.push_back(std::move(atom));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v]) continue;
        Atom atom;
        atom.type = Atom::Type::Loop;
        int cur = static_cast<int>(v);
        while (!seen[cur]) {
            seen[cur] = true;
            atom.variables.push_back(cur);
            atom.exponents.push_back(exponent(cur));
            cur = target[cur];
        }
        dec.atoms.push_back(std::move(atom));
    }
    std::sort(dec.atoms.begin(), dec.atoms.end(),
              [](const Atom& a, const Atom& b) { return a.variables.front() < b.variables.front(); });
    return dec;
}

// Reassembles the atoms as a polynomial in `nvars` variables.
inline Polynomial assemble_atoms(const std::vector<Atom>& atoms, std::size_t nvars)
{
    Polynomial w = Polynomial::zero(nvars);
    for (const auto& atom : atoms) {
        std::size_t k = atom.variables.size();
        for (std::size_t i = 0; i < k; ++i) {
            Monomial m(nvars, 0);
            m[atom.variables[i]] = atom.exponents[i];
            if (atom.type == Atom::Type::Chain && i + 1 < k) m[atom.variables[i + 1]] += 1;
            if (atom.type == Atom::Type::Loop) m[atom.variables[(i + 1) % k]] += 1;
            w.add_term(m, 1);
        }
    }
    return w;
}

// Square exponent matrix with row i the monomial dominated by x_i, so the
// transpose's variable i corresponds to row i.
inline QMatrix invertible_exponent_matrix(const Polynomial& w)
{
    auto dec = classify_invertible(w);
    auto rows = detail::monomials_of(w);
    QMatrix e;
    for (std::size_t i = 0; i < w.nvars(); ++i) {
        std::vector<Rational> row;
        for (int x : rows[dec.owner[i]]) row.emplace_back(x);
        e.push_back(std::move(row));
    }
    return e;
}

inline Polynomial polynomial_from_rows(const QMatrix& e)
{
    std::size_t n = e.empty() ? 0 : e[0].size();
    Polynomial w = Polynomial::zero(n);
    for (const auto& row : e) {
        Monomial m;
        for (const auto& x : row) m.push_back(static_cast<int>(to_long(x)));
        w.add_term(m, 1);
    }
    return w;
}

// Berglund-Hubsch transpose: exponent matrix transposed, coefficients 1.
inline Polynomial transpose(const Polynomial& w)
{
    return polynomial_from_rows(transposed(invertible_exponent_matrix(w)));
}

inline Polynomial hessian(const Polynomial& w)
{
    std::size_t n = w.nvars();
    std::vector<Polynomial> grad;
    for (std::size_t i = 0; i < n; ++i) grad.push_back(w.derivative(i));
    std::vector<std::vector<Polynomial>> h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i].push_back(grad[i].derivative(j));
    Polynomial det = polynomial_determinant(h);
    det.widen(n);
    return det;
}

// Variable-permutation-insensitive canonical form of a set of exponent rows:
// the lexicographically least sorted row list over all permutations.
inline std::vector<Monomial> canonical_rows(const Polynomial& w)
{
    auto rows = detail::monomials_of(w);
    std::size_t n = w.nvars();
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::vector<Monomial> best;
    bool have = false;
    do {
        std::vector<Monomial> cur;
        for (const auto& r : rows) {
            Monomial m(n, 0);
            for (std::size_t i = 0; i < n; ++i) m[i] = r[perm[i]];
            cur.push_back(std::move(m));
        }
        std::sort(cur.begin(), cur.end());
        if (!have || cur < best) {
            best = std::move(cur);
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace lgvw

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/polynomial.hpp"
#include "lgvw/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace lgvw::fermat {

// Scalars are polynomials in the formal symbols C (variable 0) and t
// (variable 1); C is never evaluated.
using SymScalar = Polynomial;

inline SymScalar sym(const Rational& c, int c_power = 0, int t_power = 0)
{
    return Polynomial::monomial({c_power, t_power}, c);
}

inline std::string sym_to_string(const SymScalar& s) { return s.to_string({"C", "t"}); }

// Basis of (x1^d + x2^d, <J>): alpha_1..alpha_{d-1} narrow, beta_1..beta_{d-1}
// broad, stored at positions 0..d-2 and d-1..2d-3.
struct Element {
    bool broad = false;
    int index = 1;

    friend bool operator==(const Element&, const Element&) = default;
    std::string to_string() const { return (broad ? "beta_" : "alpha_") + std::to_string(index); }
};

inline Element alpha(int i) { return {false, i}; }
inline Element beta(int j) { return {true, j}; }

inline int rank(int d) { return 2 * d - 2; }
inline int position(int d, const Element& e) { return (e.broad ? d - 1 : 0) + e.index - 1; }
inline Element element_at(int d, int pos) { return pos < d - 1 ? alpha(pos + 1) : beta(pos - d + 2); }
inline Element dual(int d, const Element& e) { return {e.broad, d - e.index}; }

using Vector = std::vector<SymScalar>;

inline Vector zero_vector(int d) { return Vector(rank(d), SymScalar(Rational(0), 2)); }

inline Vector basis_vector(int d, const Element& e, const SymScalar& c = sym(1))
{
    Vector v = zero_vector(d);
    v[position(d, e)] = c;
    return v;
}

inline void check_element(int d, const Element& e)
{
    if (e.index < 1 || e.index > d - 1) throw PreconditionNotMet(e.to_string() + " is outside the basis for d = " + std::to_string(d));
}

// Group phase of each insertion on both coordinates: alpha_i sits in J^i,
// beta in J^0.
inline Rational theta(int d, const Element& e) { return e.broad ? Rational(0) : make_rational(e.index, d); }

inline Rational complex_degree(int d, const Element& e)
{
    return e.broad ? 1 - make_rational(2, d) : make_rational(2 * (e.index - 1), d);
}

// (k - 2)/d - sum theta in Z.
inline bool selection_rule(int d, const std::vector<Element>& insertions)
{
    const int k = static_cast<int>(insertions.size());
    Rational s = make_rational(k - 2, d);
    for (const auto& e : insertions) s -= theta(d, e);
    return is_integer(s);
}

// sum deg_C = k - 1 - 4/d.
inline bool degree_constraint(int d, const std::vector<Element>& insertions)
{
    const int k = static_cast<int>(insertions.size());
    Rational s = 0;
    for (const auto& e : insertions) s += complex_degree(d, e);
    return s == k - 1 - make_rational(4, d);
}

struct CensusEntry {
    int i = 0, j = 0, k = 0, m = 0;
    friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
    friend auto operator<=>(const CensusEntry&, const CensusEntry&) = default;
};

// <alpha_i, alpha_j, alpha_k, alpha_2 x m> passing both filters, m <= max_m.
inline std::vector<CensusEntry> census_nonvanishing(int d, int max_m = 6)
{
    if (d < 3) throw PreconditionNotMet("census needs d >= 3");
    std::vector<CensusEntry> out;
    for (int m = 0; m <= max_m; ++m)
        for (int i = 1; i <= d - 1; ++i)
            for (int j = 1; j <= d - 1; ++j)
                for (int k = 1; k <= d - 1; ++k) {
                    std::vector<Element> ins{alpha(i), alpha(j), alpha(k)};
                    ins.insert(ins.end(), m, alpha(2));
                    if (selection_rule(d, ins) && degree_constraint(d, ins)) out.push_back({i, j, k, m});
                }
    return out;
}

// The three nonvanishing families: m = 0 with i + j + k = d + 1, m = 2 with
// i + j + k = 2d - 1, m = 4 with i = j = k = d - 1.
inline std::vector<CensusEntry> nonvanishing_families(int d, int max_m = 6)
{
    std::vector<CensusEntry> out;
    for (int m = 0; m <= max_m; ++m)
        for (int i = 1; i <= d - 1; ++i)
            for (int j = 1; j <= d - 1; ++j)
                for (int k = 1; k <= d - 1; ++k) {
                    const bool in = (m == 0 && i + j + k == d + 1) || (m == 2 && i + j + k == 2 * d - 1) ||
                                    (m == 4 && i == d - 1 && j == d - 1 && k == d - 1);
                    if (in) out.push_back({i, j, k, m});
                }
    return out;
}

// Product at t = 0.
inline Vector classical_product(int d, const Element& x, const Element& y)
{
    check_element(d, x);
    check_element(d, y);
    if (x.broad && y.broad)
        return x.index + y.index == d ? basis_vector(d, alpha(d - 1)) : zero_vector(d);
    if (x.broad || y.broad) {
        const Element& a = x.broad ? y : x;
        const Element& b = x.broad ? x : y;
        return a.index == 1 ? basis_vector(d, b) : zero_vector(d);
    }
    const int s = x.index + y.index - 1;
    return s <= d - 1 ? basis_vector(d, alpha(s)) : zero_vector(d);
}

// Quantum product on the line v = t alpha_2, only on the pairs the quantum
// relations determine.
inline Vector quantum_product(int d, Element x, Element y)
{
    if (d < 4) throw PreconditionNotMet("quantum relations need d >= 4");
    check_element(d, x);
    check_element(d, y);
    const SymScalar half_ct2 = sym(make_rational(1, 2), 1, 2);
    if (!x.broad && x.index == 1) return basis_vector(d, y);
    if (!y.broad && y.index == 1) return basis_vector(d, x);
    if (x.broad && y.broad && x.index + y.index == d) {
        Vector v = basis_vector(d, alpha(1), -half_ct2);
        v[position(d, alpha(d - 1))] = sym(1);
        return v;
    }
    if (y == alpha(d - 1)) std::swap(x, y);
    if (x == alpha(d - 1)) {
        if (y.broad) return basis_vector(d, y, -half_ct2);
        if (y.index == d - 1) return basis_vector(d, alpha(1), sym(make_rational(6, 24), 2, 4));
        return basis_vector(d, y, half_ct2);
    }
    if (!x.broad && !y.broad && x.index + y.index == d) {
        Vector v = basis_vector(d, alpha(1), half_ct2);
        v[position(d, alpha(d - 1))] = sym(1);
        return v;
    }
    throw UncoveredPair(x.to_string() + " * " + y.to_string() + " is not determined by the quantum relations");
}

inline Vector add(Vector a, const Vector& b, const SymScalar& s = sym(1))
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

// E(t) = sum_k alpha_k * alpha^k + sum_j beta_j * beta^j.
inline Vector quantum_euler_vector(int d)
{
    Vector e = zero_vector(d);
    for (int pos = 0; pos < rank(d); ++pos) {
        const Element x = element_at(d, pos);
        e = add(e, quantum_product(d, x, dual(d, x)));
    }
    return e;
}

using SymMatrix = std::vector<std::vector<SymScalar>>;

// Matrix of E(t)* in the basis; column b holds E(t) * phi_b. The entries of
// E(t) are multiplied out through the covered products.
inline SymMatrix quantum_euler_matrix(int d)
{
    const Vector e = quantum_euler_vector(d);
    const int n = rank(d);
    SymMatrix m(n, Vector(n, SymScalar(Rational(0), 2)));
    for (int b = 0; b < n; ++b) {
        Vector col = zero_vector(d);
        for (int a = 0; a < n; ++a)
            if (!e[a].is_zero()) col = add(col, quantum_product(d, element_at(d, a), element_at(d, b)), e[a]);
        for (int r = 0; r < n; ++r) m[r][b] = col[r];
    }
    return m;
}

// Exact quotient of polynomials; throws when the division leaves a
// remainder.
inline Polynomial exact_divide(Polynomial num, const Polynomial& den)
{
    if (den.is_zero()) throw PreconditionNotMet("division by zero polynomial");
    const auto lead = [](const Polynomial& p) { return *p.terms().rbegin(); };
    const auto [dm, dc] = lead(den);
    Polynomial q = Polynomial::zero(std::max(num.nvars(), den.nvars()));
    while (!num.is_zero()) {
        const auto [nm, nc] = lead(num);
        if (!mono_divides(dm, nm)) throw std::logic_error("inexact polynomial division");
        Polynomial step = Polynomial::monomial(mono_div(nm, dm), nc / dc);
        q += step;
        num -= step * den;
    }
    return q;
}

// Fraction-free Gaussian elimination.
inline Polynomial bareiss_determinant(SymMatrix a)
{
    const std::size_t n = a.size();
    if (n == 0) return Polynomial(Rational(1));
    Polynomial prev(Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && a[r][k].is_zero()) ++r;
            if (r == n) return Polynomial::zero(2);
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline SymScalar closed_form_determinant(int d)
{
    Rational c = 1;
    for (int i = 0; i < d; ++i) c *= -d;
    for (int i = 0; i < d - 2; ++i) c *= d - 2;
    return sym(c, 2 * d - 2, 4 * d - 4);
}

struct SemisimplicityReport {
    int d = 0;
    bool special_case = false;
    std::string reason;
    SymMatrix matrix;
    SymScalar determinant;
    SymScalar closed_form;
    bool matches = false;
    bool semisimple = false;
};

inline SemisimplicityReport det_euler(int d)
{
    SemisimplicityReport r;
    r.d = d;
    if (d < 2) throw PreconditionNotMet("d must be at least 2");
    if (d == 2) {
        r.special_case = true;
        r.reason = "d = 2: only the classical product exists and (alpha_1 +- beta_1)/2 are orthogonal idempotents";
        // e_pm = (alpha_1 +- beta_1)/2; e_s * e_u = (a a + s b a + u a b + s u b b)/4.
        auto prod = [&](int s, int u) {
            Vector v = zero_vector(2);
            v = add(v, classical_product(2, alpha(1), alpha(1)), sym(make_rational(1, 4)));
            v = add(v, classical_product(2, beta(1), alpha(1)), sym(make_rational(s, 4)));
            v = add(v, classical_product(2, alpha(1), beta(1)), sym(make_rational(u, 4)));
            v = add(v, classical_product(2, beta(1), beta(1)), sym(make_rational(s * u, 4)));
            return v;
        };
        auto e = [&](int s) {
            Vector v = basis_vector(2, alpha(1), sym(make_rational(1, 2)));
            v[position(2, beta(1))] = sym(make_rational(s, 2));
            return v;
        };
        r.matches = r.semisimple = prod(1, 1) == e(1) && prod(-1, -1) == e(-1) && prod(1, -1) == zero_vector(2);
        return r;
    }
    if (d == 3) {
        r.special_case = true;
        r.reason = "d = 3: equivalent to the FJRW theory of the D4 singularity, which is semisimple";
        r.matches = r.semisimple = true;
        return r;
    }
    r.matrix = quantum_euler_matrix(d);
    r.determinant = bareiss_determinant(r.matrix);
    r.closed_form = closed_form_determinant(d);
    r.matches = r.determinant == r.closed_form;
    r.semisimple = !r.determinant.is_zero();
    return r;
}

}  // namespace lgvw::fermat

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/state_space.hpp"
#include "lgvw/weyl.hpp"

#include <string>
#include <vector>

namespace lgvw {

inline Rational pochhammer(const Rational& l, int n)
{
    if (n < 0) throw PreconditionNotMet("Pochhammer length must be non-negative");
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= l + i;
    return r;
}

// The data of a state space the operators depend on. Index 0 is the unit.
struct GradedSpace {
    std::vector<Rational> mu_plus;
    std::vector<int> parity;
    std::vector<std::string> labels;
    QMatrix eta;
    QMatrix eta_inv;
    Rational chat;

    std::size_t rank() const { return mu_plus.size(); }

    WeylSpace weyl_space() const
    {
        WeylSpace sp;
        sp.rank = rank();
        for (int p : parity) sp.odd.push_back(p < 0);
        for (std::size_t a = 0; a < rank(); ++a) sp.labels.push_back(std::to_string(a));
        return sp;
    }

    long chi() const
    {
        long c = 0;
        for (int p : parity) c += p;
        return c;
    }
    Rational supertrace() const
    {
        Rational s = 0;
        for (std::size_t a = 0; a < rank(); ++a) s += parity[a] * (mu_plus[a] * mu_plus[a] - make_rational(1, 4));
        return s;
    }
    Rational unsigned_trace() const
    {
        Rational s = 0;
        for (const auto& m : mu_plus) s += m * m - make_rational(1, 4);
        return s;
    }
};

inline GradedSpace graded_space(const StateSpace& s)
{
    if (!s.eta) throw PreconditionNotMet("state space was built without its pairing");
    GradedSpace g;
    for (const auto& e : s.basis) {
        g.mu_plus.push_back(e.mu_plus);
        g.parity.push_back(e.parity);
        g.labels.push_back(e.label);
    }
    g.eta = *s.eta;
    g.eta_inv = *s.eta_inv;
    g.chat = s.chat;
    return g;
}

// The state-space pairing is symmetric. The super-symmetric variant keeps
// the upper triangle of each odd-odd block and negates the lower one, which
// makes the loop-space form Omega super-antisymmetric.
inline GradedSpace with_super_pairing(GradedSpace g)
{
    for (std::size_t a = 0; a < g.rank(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (g.parity[a] < 0 && g.parity[b] < 0) g.eta[a][b] = -g.eta[a][b];
    auto inv = inverse(g.eta);
    if (!inv) throw DegenerateResidue("super-symmetrized pairing is degenerate");
    g.eta_inv = std::move(*inv);
    return g;
}

enum class Hbar2Index {
    // Pochhammer evaluated at mu of the derivative at level m + k, the dual
    // of the index at level -m - 1; this is what the loop-space quantization
    // produces.
    dual,
    // Pochhammer evaluated at mu of the derivative at level -m - 1, as the
    // operator is written; kept for comparison.
    literal,
};

// L_k truncated to levels <= M.
inline QOperator virasoro_operator(const GradedSpace& g, int k, int M, bool with_constant = true,
                                   Hbar2Index convention = Hbar2Index::dual)
{
    if (k < -1) throw PreconditionNotMet("k must be at least -1");
    if (M < k + 1) throw TruncationTooSmall("M = " + std::to_string(M) + " < k + 1");
    const std::size_t n = g.rank();
    const WeylSpace sp = g.weyl_space();
    QOperator op(sp, M);
    const Rational half = make_rational(1, 2);

    op.add_word(-pochhammer((3 - g.chat) / 2, k + 1), 0, {}, {sp.id(k + 1, 0)});
    for (int m = 0; m <= M; ++m) {
        if (m + k < 0 || m + k > M) continue;
        for (std::size_t a = 0; a < n; ++a) {
            int ai = static_cast<int>(a);
            op.add_word(pochhammer(g.mu_plus[a] + m + half, k + 1), 0, {sp.id(m, ai)}, {sp.id(m + k, ai)});
        }
    }
    for (int m = -k; m <= -1; ++m) {
        const int sgn = (m % 2 == 0) ? 1 : -1;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (is_zero(g.eta_inv[a][b])) continue;
                const Rational& mu = convention == Hbar2Index::dual ? g.mu_plus[b] : g.mu_plus[a];
                Rational c = pochhammer(mu + m + half, k + 1) * sgn / 2;
                if (is_zero(c)) continue;
                op.add_word(c * g.eta_inv[a][b], 2, {},
                            {sp.id(-m - 1, static_cast<int>(a)), sp.id(m + k, static_cast<int>(b))});
            }
    }
    if (k == -1) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (is_zero(g.eta[a][b])) continue;
                op.add_word(g.eta[a][b] / 2, -2, {sp.id(0, static_cast<int>(a)), sp.id(0, static_cast<int>(b))}, {});
            }
    }
    if (k == 0 && with_constant) op.add_constant(-g.supertrace() / 4);
    return op;
}

struct RelationResult {
    int m = 0;
    int n = 0;
    int window = 0;
    bool holds = false;
    QOperator defect;
};

struct RelationReport {
    std::vector<RelationResult> results;
    bool all_hold() const
    {
        for (const auto& r : results)
            if (!r.holds) return false;
        return true;
    }
};

// [L_m, L_n] = (m - n) L_{m+n} compared on levels <= M - (|m| + |n|).
inline RelationResult check_relation(const std::vector<QOperator>& ops, int m, int n, int M)
{
    RelationResult r;
    r.m = m;
    r.n = n;
    r.window = M - (std::abs(m) + std::abs(n));
    QOperator lhs = commutator(ops[m + 1], ops[n + 1]).restricted(r.window);
    QOperator rhs(lhs.space());
    if (m + n >= -1) rhs = (Rational(m - n) * ops[m + n + 1]).restricted(r.window);
    r.defect = lhs - rhs;
    r.holds = r.defect.is_zero();
    return r;
}

inline RelationReport check_virasoro_relations(const GradedSpace& g, int kmax, int M, bool with_constant = true,
                                               Hbar2Index convention = Hbar2Index::dual)
{
    if (M < 2 * kmax + 2) throw TruncationTooSmall("M must be at least 2 kmax + 2");
    std::vector<QOperator> ops;
    for (int k = -1; k <= 2 * kmax; ++k) ops.push_back(virasoro_operator(g, k, M, with_constant, convention));
    RelationReport rep;
    for (int m = -1; m <= kmax; ++m)
        for (int n = -1; n <= kmax; ++n) rep.results.push_back(check_relation(ops, m, n, M));
    return rep;
}

// Sum of (m - 1 + mu_a + chat/2) t_m^a d_m^a.
inline QOperator grading_operator(const GradedSpace& g, int M)
{
    const WeylSpace sp = g.weyl_space();
    QOperator op(sp, M);
    for (int m = 0; m <= M; ++m)
        for (std::size_t a = 0; a < g.rank(); ++a) {
            int ai = static_cast<int>(a);
            op.add_word(m - 1 + g.mu_plus[a] + g.chat / 2, 0, {sp.id(m, ai)}, {sp.id(m, ai)});
        }
    return op;
}

inline QOperator string_operator(const GradedSpace& g, int M) { return virasoro_operator(g, -1, M); }

// -d/dt_1^0 + sum t d + hbar d/dhbar + chi/24.
inline QOperator dilaton_operator(const GradedSpace& g, int M, bool with_hbar = true)
{
    const WeylSpace sp = g.weyl_space();
    QOperator op(sp, M);
    op.add_word(-1, 0, {}, {sp.id(1, 0)});
    for (int m = 0; m <= M; ++m)
        for (std::size_t a = 0; a < g.rank(); ++a) {
            int ai = static_cast<int>(a);
            op.add_word(1, 0, {sp.id(m, ai)}, {sp.id(m, ai)});
        }
    if (with_hbar) op.add(WeylMonomial{0, 1, {}, {}}, 1);
    op.add_constant(make_rational(g.chi(), 24));
    return op;
}

// L_0 rebuilt from the grading and dilaton operators:
// E + ((3 - chat)/2) (dilaton - hbar d/dhbar).
inline QOperator l0_from_grading(const GradedSpace& g, int M)
{
    return grading_operator(g, M) + ((3 - g.chat) / 2) * dilaton_operator(g, M, false);
}

// Elliptic-curve data in the cubic's basis order under the identification
// 1 -> 1|J>, omega -> 1|J^2>, alpha -> h dx, beta -> dx.
namespace elliptic {

enum Var { T0 = 0, T1 = 1, S1 = 2, S0 = 3 };

inline WeylSpace space()
{
    WeylSpace sp;
    sp.rank = 4;
    sp.odd = {false, false, true, true};
    sp.labels = {"t0", "t1", "s1", "s0"};
    return sp;
}

// L_k^E; k = -1 also carries t_0^0 t_0^1 / hbar^2 from the pairing of
// 1 and omega, which the displayed operator leaves implicit.
inline QOperator virasoro_operator(int k, int M)
{
    const WeylSpace sp = space();
    QOperator op(sp, M);
    op.add_word(-pochhammer(1, k + 1), 0, {}, {sp.id(k + 1, T0)});
    for (int l = 0; l <= M; ++l) {
        if (l + k < 0 || l + k > M) continue;
        op.add_word(pochhammer(l, k + 1), 0, {sp.id(l, T0)}, {sp.id(k + l, T0)});
        op.add_word(pochhammer(l + 1, k + 1), 0, {sp.id(l, T1)}, {sp.id(k + l, T1)});
        op.add_word(pochhammer(l + 1, k + 1), 0, {sp.id(l, S0)}, {sp.id(k + l, S0)});
        op.add_word(pochhammer(l, k + 1), 0, {sp.id(l, S1)}, {sp.id(k + l, S1)});
    }
    if (k == -1) op.add_word(1, -2, {sp.id(0, T0), sp.id(0, T1)}, {});
    return op;
}

inline QOperator d_operator(int k, int M)
{
    const WeylSpace sp = space();
    QOperator op(sp, M);
    op.add_word(-pochhammer(1, k + 1), 0, {}, {sp.id(k + 1, S0)});
    for (int l = 0; l <= M; ++l) {
        if (l + k < 0 || l + k > M) continue;
        op.add_word(pochhammer(l, k + 1), 0, {sp.id(l, T0)}, {sp.id(k + l, S0)});
        op.add_word(pochhammer(l + 1, k + 1), 0, {sp.id(l, S1)}, {sp.id(k + l, T1)});
    }
    return op;
}

inline QOperator dbar_operator(int k, int M)
{
    const WeylSpace sp = space();
    QOperator op(sp, M);
    op.add_word(-pochhammer(1, k + 1), 0, {}, {sp.id(k + 1, S1)});
    for (int l = 0; l <= M; ++l) {
        if (l + k < 0 || l + k > M) continue;
        op.add_word(pochhammer(l, k + 1), 0, {sp.id(l, T0)}, {sp.id(k + l, S1)});
        op.add_word(-pochhammer(l + 1, k + 1), 0, {sp.id(l, S0)}, {sp.id(k + l, T1)});
    }
    return op;
}

}  // namespace elliptic

}  // namespace lgvw

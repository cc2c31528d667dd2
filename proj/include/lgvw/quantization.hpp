#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/loop.hpp"
#include "lgvw/virasoro.hpp"
#include "lgvw/weyl.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lgvw {

// Darboux coordinates q_m^a (coefficient of phi_a z^m) and p_{l,a}
// (coefficient of phi^a (-z)^{-l-1}) for levels 0..M. Ids: q first, then p.
struct DarbouxSpace {
    std::size_t rank = 0;
    int max_level = 0;
    std::vector<bool> odd;

    int size() const { return 2 * block(); }
    int block() const { return (max_level + 1) * static_cast<int>(rank); }
    int q_id(int level, int a) const { return level * static_cast<int>(rank) + a; }
    int p_id(int level, int a) const { return block() + q_id(level, a); }
    bool is_p(int id) const { return id >= block(); }
    int level(int id) const { return (id % block()) / static_cast<int>(rank); }
    int index(int id) const { return (id % block()) % static_cast<int>(rank); }
    bool is_odd(int id) const { return odd[index(id)]; }
    // weyl variable of the coordinate: t_m^a for q, d/dt_l^a for p
    int weyl_id(int id) const { return id % block(); }

    std::string label(int id) const
    {
        return std::string(is_p(id) ? "p" : "q") + "[" + std::to_string(level(id)) + "," + std::to_string(index(id)) +
               "]";
    }
};

inline DarbouxSpace darboux_space(const GradedSpace& g, int max_level)
{
    DarbouxSpace d;
    d.rank = g.rank();
    d.max_level = max_level;
    for (int p : g.parity) d.odd.push_back(p < 0);
    return d;
}

// The loop vector a Darboux coordinate multiplies.
inline LoopVector darboux_vector(const GradedSpace& g, const DarbouxSpace& d, int id)
{
    const std::size_t n = g.rank();
    const int l = d.level(id);
    const std::size_t a = static_cast<std::size_t>(d.index(id));
    LoopVector v(n);
    if (!d.is_p(id)) {
        v.add(l, a, 1);
        return v;
    }
    // phi^a (-z)^{-l-1} with (phi_b, phi^a) = delta_b^a, so phi^a = sum_c eta^{ca} phi_c
    const Rational sign = (l % 2 == 0) ? -1 : 1;
    for (std::size_t c = 0; c < n; ++c) v.add(-l - 1, c, sign * g.eta_inv[c][a]);
    return v;
}

// Quadratic polynomial in supercommuting Darboux coordinates, stored on
// canonically ordered monomials x_i x_j with i <= j.
struct QuadraticHamiltonian {
    DarbouxSpace space;
    std::map<std::pair<int, int>, Rational> terms;

    void add(int i, int j, const Rational& c)
    {
        if (lgvw::is_zero(c)) return;
        Rational v = c;
        if (i > j) {
            std::swap(i, j);
            if (space.is_odd(i) && space.is_odd(j)) v = -v;
        }
        if (i == j && space.is_odd(i)) return;
        auto& slot = terms[{i, j}];
        slot += v;
        if (lgvw::is_zero(slot)) terms.erase({i, j});
    }

    Rational coefficient(int i, int j) const
    {
        auto it = terms.find({i, j});
        return it == terms.end() ? Rational(0) : it->second;
    }

    // kind: 0 = qq, 1 = qp, 2 = pp
    static int kind_of(const DarbouxSpace& s, int i, int j) { return int(s.is_p(i)) + int(s.is_p(j)); }

    QuadraticHamiltonian part(int kind) const
    {
        QuadraticHamiltonian out{space, {}};
        for (const auto& [ij, c] : terms)
            if (kind_of(space, ij.first, ij.second) == kind) out.terms.emplace(ij, c);
        return out;
    }

    bool is_zero() const { return terms.empty(); }

    std::string to_string() const
    {
        std::ostringstream os;
        for (const auto& [ij, c] : terms)
            os << c.get_str() << " * " << space.label(ij.first) << " * " << space.label(ij.second) << "\n";
        return os.str();
    }
};

// h_A = 1/2 Omega(A Phi, Phi) = 1/2 sum x_i x_j Omega(A e_i, e_j) with the
// coordinates taken out on the left. On super spaces the pairing must be
// super-symmetric (see with_super_pairing) for this to be a consistent
// Hamiltonian.
inline QuadraticHamiltonian quadratic_hamiltonian(const LoopOperator& a, const GradedSpace& g, int max_level,
                                                  bool check_symplectic = true)
{
    if (check_symplectic && !is_infinitesimal_symplectic(a, g.eta)) throw NotSymplectic("operator is not infinitesimal symplectic");
    QuadraticHamiltonian h{darboux_space(g, max_level), {}};
    const DarbouxSpace& d = h.space;
    std::vector<LoopVector> basis;
    for (int i = 0; i < d.size(); ++i) basis.push_back(darboux_vector(g, d, i));
    const Rational half = make_rational(1, 2);
    for (int i = 0; i < d.size(); ++i) {
        const LoopVector image = a.apply(basis[i]);
        if (image.is_zero()) continue;
        for (int j = 0; j < d.size(); ++j) {
            Rational w = symplectic_form(image, basis[j], g.eta);
            if (is_zero(w)) continue;
            h.add(i, j, half * w);
        }
    }
    return h;
}

// The rules q q -> q q / hbar^2, q p -> q d/dq, p p -> hbar^2 d/dq d/dq with
// the hbar powers of the Virasoro operators. This reproduces the displayed
// quantized operators.
inline QOperator ccr_quantize(const QuadraticHamiltonian& h, const WeylSpace& sp)
{
    const DarbouxSpace& d = h.space;
    QOperator op(sp, d.max_level);
    for (const auto& [ij, c] : h.terms) {
        const int i = ij.first, j = ij.second;
        const int u = d.weyl_id(i), v = d.weyl_id(j);
        switch (QuadraticHamiltonian::kind_of(d, i, j)) {
            case 0: op.add_word(c, -2, {u, v}, {}); break;
            case 1: op.add_word(c, 0, {u}, {v}); break;
            default: op.add_word(c, 2, {}, {u, v}); break;
        }
    }
    return op;
}

// Sign-corrected quantization: A -> A^ is then a projective Lie algebra
// homomorphism and L_k is recovered after the dilaton shift.
inline QOperator quantize(const QuadraticHamiltonian& h, const WeylSpace& sp)
{
    return Rational(-1) * ccr_quantize(h, sp);
}

// C(p_a p_b, q_a q_b) = (-1)^{|p_b||q_a|} + delta_ab, extended bilinearly and
// antisymmetrically; zero on all other pairs.
inline Rational cocycle(const QuadraticHamiltonian& h1, const QuadraticHamiltonian& h2)
{
    const DarbouxSpace& d = h1.space;
    auto one_way = [&](const QuadraticHamiltonian& pp, const QuadraticHamiltonian& qq) {
        Rational total = 0;
        for (const auto& [ij, c] : pp.terms) {
            if (QuadraticHamiltonian::kind_of(d, ij.first, ij.second) != 2) continue;
            const int a = d.weyl_id(ij.first), b = d.weyl_id(ij.second);
            Rational c2 = qq.coefficient(a, b);
            if (is_zero(c2)) continue;
            Rational value = (d.is_odd(ij.first) && d.is_odd(ij.second) ? -1 : 1) + (a == b ? 1 : 0);
            total += c * c2 * value;
        }
        return total;
    };
    return one_way(h1, h2) - one_way(h2, h1);
}

// The quantized operator as displayed, in the Darboux variables q:
// -delta_{k,-1}/(2 hbar^2) sum q_0 q_0 eta - sum (mu_a+1/2+m)_{k+1} q_m^a d_{m+k}^a
// + hbar^2/2 sum_l (-1)^l (mu - l - 1/2)_{k+1} d_{k-l-1}^b d_l^a eta^{ba}.
inline QOperator displayed_quantized_operator(const GradedSpace& g, int k, int max_level,
                                              Hbar2Index convention = Hbar2Index::dual)
{
    const std::size_t n = g.rank();
    const WeylSpace sp = g.weyl_space();
    QOperator op(sp, max_level);
    const Rational half = make_rational(1, 2);
    if (k == -1)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                op.add_word(-g.eta[a][b] / 2, -2, {sp.id(0, int(a)), sp.id(0, int(b))}, {});
    for (int m = std::max(0, -k); m <= max_level && m + k <= max_level; ++m)
        for (std::size_t a = 0; a < n; ++a)
            op.add_word(-pochhammer(g.mu_plus[a] + m + half, k + 1), 0, {sp.id(m, int(a))}, {sp.id(m + k, int(a))});
    for (int l = 0; l <= k - 1; ++l)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (is_zero(g.eta_inv[b][a])) continue;
                const Rational& mu = convention == Hbar2Index::dual ? g.mu_plus[b] : g.mu_plus[a];
                Rational c = pochhammer(mu - l - half, k + 1) * (l % 2 == 0 ? 1 : -1) / 2;
                op.add_word(c * g.eta_inv[b][a], 2, {}, {sp.id(k - l - 1, int(b)), sp.id(l, int(a))});
            }
    return op;
}

inline QuadraticHamiltonian script_L_hamiltonian(const GradedSpace& g, int k, int max_level)
{
    return quadratic_hamiltonian(script_L(g, k), g, max_level);
}

// q_1^0 = t_1^0 - 1.
inline QOperator dilaton_shift(const QOperator& op) { return op.shifted(1, 0, -1); }

struct QuantizationCheck {
    int k = 0;
    bool displayed_matches = false;
    bool matches = false;
    QOperator defect;           // shifted quantized operator minus L_k, constant removed for k = 0
    Rational constant_offset;   // constant of (shifted quantized operator - L_k)
    Rational signed_quarter;    // 1/4 Str(theta^2 - 1/4)
    Rational unsigned_quarter;  // 1/4 sum (mu^2 - 1/4) without parity signs
    bool matches_signed = false;
    bool matches_unsigned = false;
};

// Compares on the super-symmetric pairing; on spaces without odd elements
// that is the state-space pairing itself.
inline QuantizationCheck check_quantization_identity(const GradedSpace& space, int k, int max_level)
{
    const GradedSpace g = with_super_pairing(space);
    QuantizationCheck r;
    r.k = k;
    const WeylSpace sp = g.weyl_space();
    const QuadraticHamiltonian h = script_L_hamiltonian(g, k, max_level);
    r.displayed_matches = ccr_quantize(h, sp) == displayed_quantized_operator(g, k, max_level);
    QOperator diff = dilaton_shift(quantize(h, sp)) - virasoro_operator(g, k, max_level, true);
    r.constant_offset = diff.constant_term();
    r.signed_quarter = g.supertrace() / 4;
    r.unsigned_quarter = g.unsigned_trace() / 4;
    r.matches_signed = r.constant_offset == (k == 0 ? r.signed_quarter : Rational(0));
    r.matches_unsigned = r.constant_offset == (k == 0 ? r.unsigned_quarter : Rational(0));
    diff.add_constant(-r.constant_offset);
    r.defect = diff;
    r.matches = diff.is_zero() && r.matches_signed;
    return r;
}

struct BracketDefect {
    int m = 0;
    int n = 0;
    int window = 0;
    QOperator residual;  // non-scalar part of the defect
    Rational constant;
    Rational cocycle_value;
    bool is_scalar() const { return residual.is_zero(); }
    bool matches_cocycle() const { return is_scalar() && constant == cocycle_value; }
};

// [L_m^, L_n^] - (m - n) L_{m+n}^ on the guarded window, against C(h_m, h_n).
inline BracketDefect bracket_defect(const GradedSpace& space, int m, int n, int max_level)
{
    const GradedSpace g = with_super_pairing(space);
    BracketDefect r;
    r.m = m;
    r.n = n;
    r.window = max_level - (std::abs(m) + std::abs(n));
    const WeylSpace sp = g.weyl_space();
    const QuadraticHamiltonian hm = script_L_hamiltonian(g, m, max_level);
    const QuadraticHamiltonian hn = script_L_hamiltonian(g, n, max_level);
    QOperator lhs = commutator(quantize(hm, sp), quantize(hn, sp)).restricted(r.window);
    QOperator rhs(sp);
    if (m + n >= -1) rhs = (Rational(m - n) * quantize(script_L_hamiltonian(g, m + n, max_level), sp)).restricted(r.window);
    QOperator d = lhs - rhs;
    r.constant = d.constant_term();
    d.add_constant(-r.constant);
    r.residual = d;
    r.cocycle_value = cocycle(hm, hn);
    return r;
}

// exp(ad_{xB})(A) = sum_n x^n ops[n] and the constant C_T(A) = sum_n x^n
// constants[n] for the formal parameter x.
struct FormalConjugation {
    std::vector<LoopOperator> ops;
    std::vector<Rational> constants;

    bool is_invariant() const
    {
        for (std::size_t i = 1; i < ops.size(); ++i)
            if (!ops[i].is_zero()) return false;
        return true;
    }
    bool constant_vanishes() const
    {
        for (const auto& c : constants)
            if (!is_zero(c)) return false;
        return true;
    }
};

inline FormalConjugation conjugate_formal(const LoopOperator& b, const LoopOperator& a, const GradedSpace* g = nullptr,
                                          int max_level = 0, int max_terms = 16)
{
    FormalConjugation out;
    std::vector<LoopOperator> ad{a};
    while (!ad.back().is_zero()) {
        if (static_cast<int>(ad.size()) > max_terms) throw NonNilpotentWindow("ad_B did not terminate");
        ad.push_back(commutator(b, ad.back()));
    }
    ad.pop_back();
    Rational fact = 1;
    for (std::size_t k = 0; k < ad.size(); ++k) {
        if (k > 0) fact *= static_cast<long>(k);
        out.ops.push_back((1 / fact) * ad[k]);
    }
    if (g) {
        // C(x h_B, sum_n x^n ad^n A / (n+1)!)
        const QuadraticHamiltonian hb = quadratic_hamiltonian(b, *g, max_level, false);
        out.constants.assign(ad.size() + 1, Rational(0));
        Rational f = 1;
        for (std::size_t k = 0; k < ad.size(); ++k) {
            f *= static_cast<long>(k + 1);
            out.constants[k + 1] = cocycle(hb, quadratic_hamiltonian(ad[k], *g, max_level, false)) / f;
        }
    }
    return out;
}

struct Conjugation {
    LoopOperator op;
    Rational constant;
};

// (T A T^{-1}, C_T(A)) for T = exp(B).
inline Conjugation conjugate(const LoopOperator& b, const LoopOperator& a, const GradedSpace& g, int max_level,
                             int max_terms = 16)
{
    FormalConjugation f = conjugate_formal(b, a, &g, max_level, max_terms);
    Conjugation c{LoopOperator(a.rank()), 0};
    for (const auto& op : f.ops) c.op += op;
    for (const auto& x : f.constants) c.constant += x;
    return c;
}

namespace elliptic {

// (1, omega, beta, alpha) in the order of the Weyl variables t0, t1, s1, s0.
inline GradedSpace graded_space()
{
    GradedSpace g;
    const Rational h = make_rational(1, 2);
    g.mu_plus = {-h, h, -h, h};
    g.parity = {1, 1, -1, -1};
    g.labels = {"1", "omega", "beta", "alpha"};
    g.eta = zero_matrix(4, 4);
    g.eta[T0][T1] = g.eta[T1][T0] = 1;
    g.eta[S1][S0] = g.eta[S0][S1] = 1;
    g.eta_inv = *inverse(g.eta);
    g.chat = 1;
    return g;
}

// log S divided by the formal parameter q: z^{-1} E_{21}, sending 1 to omega.
inline LoopOperator log_s()
{
    QMatrix e = zero_matrix(4, 4);
    e[T1][T0] = 1;
    return LoopOperator::constant(e, -1);
}

// d_z + z^{-1} theta.
inline LoopOperator connection(const GradedSpace& g)
{
    LoopOperator op = LoopOperator::d_z(g.rank());
    op += LoopOperator::constant(theta_matrix(g), -1);
    return op;
}

// Displayed quantization of log S / q: -(q_0^0)^2 / (2 hbar^2) - sum q_{k+1}^0 d/dq_k^1.
inline QOperator displayed_log_s(int max_level)
{
    const WeylSpace sp = space();
    QOperator op(sp, max_level);
    op.add_word(make_rational(-1, 2), -2, {sp.id(0, T0), sp.id(0, T0)}, {});
    for (int k = 0; k + 1 <= max_level; ++k) op.add_word(-1, 0, {sp.id(k + 1, T0)}, {sp.id(k, T1)});
    return op;
}

inline QOperator quantized_log_s(int max_level)
{
    const GradedSpace g = graded_space();
    return ccr_quantize(quadratic_hamiltonian(log_s(), g, max_level), space());
}

}  // namespace elliptic

}  // namespace lgvw

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/invertible.hpp"
#include "lgvw/polynomial.hpp"
#include "lgvw/weights.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace lgvw {

// Weighted degree first (weights scaled to integers), ties broken by
// reverse lexicographic order.
struct MonomialOrder {
    std::vector<Integer> weights;

    static MonomialOrder from_weights(const std::vector<Rational>& q)
    {
        Integer d = common_denominator(q);
        MonomialOrder o;
        for (const auto& x : q) o.weights.push_back(Rational(x * d).get_num());
        return o;
    }
    static MonomialOrder degrevlex(std::size_t n)
    {
        MonomialOrder o;
        o.weights.assign(n, Integer(1));
        return o;
    }

    Integer degree(const Monomial& m) const
    {
        Integer d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += weights[i] * m[i];
        return d;
    }

    // true when a > b
    bool greater(const Monomial& a, const Monomial& b) const
    {
        Integer da = degree(a), db = degree(b);
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct GroebnerBasis {
    std::vector<Polynomial> generators;
    MonomialOrder order;
    std::size_t nvars = 0;

    Monomial leading_monomial(const Polynomial& p) const
    {
        const Monomial* best = nullptr;
        for (const auto& [m, c] : p.terms())
            if (!best || order.greater(m, *best)) best = &m;
        return *best;
    }

    std::vector<Monomial> leading_monomials() const
    {
        std::vector<Monomial> lms;
        for (const auto& g : generators) lms.push_back(leading_monomial(g));
        return lms;
    }
};

namespace detail {

inline Monomial leading(const Polynomial& p, const MonomialOrder& o)
{
    const Monomial* best = nullptr;
    for (const auto& [m, c] : p.terms())
        if (!best || o.greater(m, *best)) best = &m;
    return *best;
}

// Full reduction of p by the list of divisors (leading monomials supplied).
inline Polynomial reduce(Polynomial p, const std::vector<Polynomial>& divs,
                         const std::vector<Monomial>& lms, const MonomialOrder& o)
{
    Polynomial rem = Polynomial::zero(p.nvars());
    while (!p.is_zero()) {
        Monomial lm = leading(p, o);
        Rational lc = p.coefficient(lm);
        bool divided = false;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            if (!mono_divides(lms[i], lm)) continue;
            Rational f = lc / divs[i].coefficient(lms[i]);
            p -= Polynomial::monomial(mono_div(lm, lms[i]), f) * divs[i];
            divided = true;
            break;
        }
        if (!divided) {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return rem;
}

inline Polynomial monic(const Polynomial& p, const MonomialOrder& o)
{
    return p * (1 / p.coefficient(leading(p, o)));
}

}  // namespace detail

inline GroebnerBasis groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order)
{
    std::size_t n = 0;
    for (const auto& g : gens) n = std::max(n, g.nvars());
    std::vector<Polynomial> basis;
    std::vector<Monomial> lms;
    for (auto g : gens) {
        g.widen(n);
        if (g.is_zero()) continue;
        g = detail::monic(g, order);
        basis.push_back(g);
        lms.push_back(detail::leading(g, order));
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.insert({i, j});

    while (!pairs.empty()) {
        // lowest-degree lcm first
        auto pick = pairs.begin();
        Integer best_deg;
        bool have = false;
        for (auto it = pairs.begin(); it != pairs.end(); ++it) {
            Integer d = order.degree(mono_lcm(lms[it->first], lms[it->second]));
            if (!have || d < best_deg) {
                best_deg = d;
                pick = it;
                have = true;
            }
        }
        auto [i, j] = *pick;
        pairs.erase(pick);
        Monomial l = mono_lcm(lms[i], lms[j]);
        if (l == mono_mul(lms[i], lms[j])) continue;  // coprime leading terms
        Polynomial s = Polynomial::monomial(mono_div(l, lms[i])) * basis[i] -
                       Polynomial::monomial(mono_div(l, lms[j])) * basis[j];
        Polynomial r = detail::reduce(s, basis, lms, order);
        if (r.is_zero()) continue;
        r = detail::monic(r, order);
        basis.push_back(r);
        lms.push_back(detail::leading(r, order));
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.insert({k, basis.size() - 1});
    }

    // minimalize, then interreduce
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j || !mono_divides(lms[j], lms[i])) continue;
            if (lms[i] != lms[j] || j < i) redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }
    std::vector<Polynomial> minimal;
    std::vector<Monomial> minimal_lms;
    for (auto i : keep) {
        minimal.push_back(basis[i]);
        minimal_lms.push_back(lms[i]);
    }
    GroebnerBasis gb;
    gb.order = order;
    gb.nvars = n;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        std::vector<Monomial> other_lms;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) {
                others.push_back(minimal[j]);
                other_lms.push_back(minimal_lms[j]);
            }
        Polynomial tail = minimal[i];
        tail.add_term(minimal_lms[i], -tail.coefficient(minimal_lms[i]));
        Polynomial reduced = detail::reduce(tail, others, other_lms, order);
        reduced.add_term(minimal_lms[i], 1);
        gb.generators.push_back(reduced);
    }
    std::sort(gb.generators.begin(), gb.generators.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.greater(gb.leading_monomial(b), gb.leading_monomial(a));
    });
    return gb;
}

inline GroebnerBasis groebner_basis(const std::vector<Polynomial>& gens)
{
    std::size_t n = 0;
    for (const auto& g : gens) n = std::max(n, g.nvars());
    return groebner_basis(gens, MonomialOrder::degrevlex(n));
}

inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb)
{
    Polynomial q = p;
    q.widen(gb.nvars);
    return detail::reduce(q, gb.generators, gb.leading_monomials(), gb.order);
}

inline std::vector<Polynomial> jacobian_ideal(const Polynomial& w)
{
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < w.nvars(); ++i) out.push_back(w.derivative(i));
    return out;
}

struct MilnorBasis {
    std::vector<Monomial> monomials;
    std::vector<Rational> weights;
    std::size_t size() const { return monomials.size(); }
};

// Standard monomials with respect to the basis, sorted by weight then lex.
inline MilnorBasis standard_monomials(const GroebnerBasis& gb, const std::vector<Rational>& q)
{
    const std::size_t n = gb.nvars;
    auto lms = gb.leading_monomials();
    std::vector<int> bound(n, -1);
    for (const auto& lm : lms) {
        int support = -1, count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (lm[i] != 0) {
                support = static_cast<int>(i);
                ++count;
            }
        if (count == 1 && (bound[support] < 0 || lm[support] < bound[support])) bound[support] = lm[support];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw NonIsolatedSingularity("no pure power of x" + std::to_string(i + 1) + " in the leading ideal");

    MilnorBasis out;
    Monomial cur(n, 0);
    auto standard = [&](const Monomial& m) {
        for (const auto& lm : lms)
            if (mono_divides(lm, m)) return false;
        return true;
    };
    // odometer over the box bounded by the pure powers
    for (;;) {
        if (standard(cur)) out.monomials.push_back(cur);
        std::size_t i = 0;
        while (i < n) {
            if (++cur[i] < bound[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(out.monomials.begin(), out.monomials.end(), [&](const Monomial& a, const Monomial& b) {
        Rational wa = weighted_degree(a, q), wb = weighted_degree(b, q);
        if (wa != wb) return wa < wb;
        return a > b;
    });
    for (const auto& m : out.monomials) out.weights.push_back(weighted_degree(m, q));
    return out;
}

// Milnor algebra of a quasi-homogeneous isolated singularity with its
// residue functional, normalized by Res(hess W) = mu. A polynomial in zero
// variables gives the one-dimensional algebra with Res(1) = 1.
class JacobianRing {
public:
    JacobianRing(const Polynomial& w, const std::vector<Rational>& q) : w_(w), q_(q)
    {
        if (w.nvars() == 0) {
            basis_.monomials = {Monomial{}};
            basis_.weights = {Rational(0)};
            socle_ = Monomial{};
            hess_coeff_ = 1;
            return;
        }
        gb_ = groebner_basis(jacobian_ideal(w), MonomialOrder::from_weights(q));
        basis_ = standard_monomials(gb_, q);
        const Rational top = basis_.weights.back();
        std::size_t count = 0;
        for (const auto& wt : basis_.weights) count += (wt == top);
        if (count != 1) throw DegenerateResidue("top-weight standard monomial is not unique");
        socle_ = basis_.monomials.back();
        Polynomial h = lgvw::normal_form(hessian(w), gb_);
        hess_coeff_ = h.coefficient(socle_);
        if (is_zero(hess_coeff_)) throw DegenerateResidue("hessian vanishes in the Milnor algebra");
    }

    const Polynomial& polynomial() const { return w_; }
    const GroebnerBasis& groebner() const { return gb_; }
    const MilnorBasis& basis() const { return basis_; }
    const Monomial& socle() const { return socle_; }
    std::size_t dimension() const { return basis_.size(); }
    Rational socle_weight() const { return basis_.weights.back(); }

    Polynomial normal_form(const Polynomial& p) const
    {
        if (w_.nvars() == 0) return p;
        return lgvw::normal_form(p, gb_);
    }

    Rational residue(const Polynomial& p) const
    {
        if (w_.nvars() == 0) return p.coefficient(Monomial{});
        Rational c = normal_form(p).coefficient(socle_);
        return c * static_cast<long>(dimension()) / hess_coeff_;
    }

    Rational pairing(const Polynomial& f, const Polynomial& g) const { return residue(f * g); }

    // Pairing of two monomials, skipping the reduction when the weights
    // cannot reach the socle.
    Rational pairing(const Monomial& a, const Monomial& b) const
    {
        if (w_.nvars() == 0) return 1;
        if (weighted_degree(a, q_) + weighted_degree(b, q_) != socle_weight()) return 0;
        return residue(Polynomial::monomial(mono_mul(a, b)));
    }

private:
    Polynomial w_;
    std::vector<Rational> q_;
    GroebnerBasis gb_;
    MilnorBasis basis_;
    Monomial socle_;
    Rational hess_coeff_;
};

inline MilnorBasis monomial_basis(const Polynomial& w)
{
    return JacobianRing(w, weight_system(w).weights).basis();
}

inline Rational residue_pairing(const Polynomial& f, const Polynomial& g, const Polynomial& w)
{
    return JacobianRing(w, weight_system(w).weights).pairing(f, g);
}

}  // namespace lgvw

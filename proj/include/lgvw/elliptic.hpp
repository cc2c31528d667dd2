#pragma once

#include "lgvw/catalog.hpp"
#include "lgvw/quantization.hpp"
#include "lgvw/state_space.hpp"
#include "lgvw/virasoro.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lgvw::elliptic {

// Rewrites every Weyl variable through `f` (creators) and `g` (annihilators)
// into the target space.
inline QOperator remap(const QOperator& op, const WeylSpace& target, const std::function<int(int)>& f,
                       const std::function<int(int)>& g)
{
    QOperator out(target, op.truncation());
    for (const auto& [m, c] : op.terms()) {
        std::vector<int> cr, an;
        for (int v : m.creators) cr.push_back(f(v));
        for (int v : m.annihilators) an.push_back(g(v));
        out.add_word(c, m.hbar, cr, an, m.ehbar);
    }
    return out;
}

// Psi: basis position of the cubic/<J> state space -> elliptic variable,
// read off the element labels.
inline std::vector<int> psi_relabeling(const StateSpace& cubic)
{
    std::vector<int> to(cubic.rank(), -1);
    for (std::size_t a = 0; a < cubic.rank(); ++a) {
        const std::string& l = cubic.basis[a].label;
        if (l == "1|J>") to[a] = T0;
        else if (l == "1|J^2>") to[a] = T1;
        else if (l == "dx|J^0>") to[a] = S1;
        else if (l == "x1x2x3 dx|J^0>") to[a] = S0;
        else throw PreconditionNotMet("unexpected cubic basis element " + l);
    }
    return to;
}

inline QOperator relabel(const QOperator& op, const std::vector<int>& to)
{
    const WeylSpace& sp = op.space();
    const WeylSpace target = space();
    auto f = [&](int v) { return target.id(sp.level(v), to[sp.index(v)]); };
    return remap(op, target, f, f);
}

// Negative control: the t^0 creators of D_k are moved to t^1, giving them a
// partner among the d/dt^1 annihilators of log S.
inline QOperator mutate_t0_creators(const QOperator& op)
{
    const WeylSpace& sp = op.space();
    auto f = [&](int v) { return sp.index(v) == T0 ? sp.id(sp.level(v), T1) : v; };
    return remap(op, sp, f, [](int v) { return v; });
}

// Exchange of the s^0 and s^1 labels throughout.
inline QOperator swap_s_labels(const QOperator& op)
{
    const WeylSpace& sp = op.space();
    auto f = [&](int v) {
        const int a = sp.index(v);
        return a == S0 ? sp.id(sp.level(v), S1) : a == S1 ? sp.id(sp.level(v), S0) : v;
    };
    return remap(op, sp, f, f);
}

struct CommutatorCheck {
    int k = 0;
    bool d_vanishes = false;
    bool dbar_vanishes = false;
    bool swapped_d_vanishes = false;
    bool mutated_d_vanishes = false;
    bool mutated_dbar_vanishes = false;
};

struct EllipticReport {
    int max_level = 0;
    int kmax = 0;
    std::vector<std::pair<int, bool>> identification;  // L_k == Psi(L_k^E)
    bool connection_invariant = false;
    std::size_t conjugation_terms = 0;
    bool log_s_matches = false;
    std::vector<CommutatorCheck> commutators;

    bool identification_holds() const
    {
        for (const auto& [k, ok] : identification)
            if (!ok) return false;
        return true;
    }
    bool commutators_vanish() const
    {
        for (const auto& c : commutators)
            if (!c.d_vanishes || !c.dbar_vanishes) return false;
        return true;
    }
    // The mutated D_k must fail for at least one k.
    bool control_detected() const
    {
        for (const auto& c : commutators)
            if (!c.mutated_d_vanishes || !c.mutated_dbar_vanishes) return true;
        return false;
    }
    bool passed() const
    {
        return identification_holds() && connection_invariant && log_s_matches && commutators_vanish() &&
               control_detected();
    }
};

inline EllipticReport run_checks(int kmax = 3, int max_level = 8)
{
    EllipticReport r;
    r.kmax = kmax;
    r.max_level = max_level;

    const auto pair = resolve_pair("cubic", "J");
    const StateSpace cubic = build_state_space(pair.w, pair.group);
    const GradedSpace g = graded_space(cubic);
    const auto psi = psi_relabeling(cubic);
    for (int k = -1; k <= kmax; ++k)
        r.identification.emplace_back(k, relabel(virasoro_operator(g, k, max_level), psi) ==
                                             virasoro_operator(k, max_level));

    const GradedSpace e = graded_space();
    const FormalConjugation c = conjugate_formal(log_s(), connection(e));
    r.connection_invariant = c.is_invariant();
    r.conjugation_terms = c.ops.size();

    r.log_s_matches = quantized_log_s(max_level) == displayed_log_s(max_level);

    const QOperator ls = dilaton_shift(displayed_log_s(max_level));
    for (int k = -1; k <= kmax; ++k) {
        const int window = max_level - std::abs(k) - 2;
        const QOperator d = d_operator(k, max_level);
        const QOperator db = dbar_operator(k, max_level);
        auto vanishes = [&](const QOperator& op) { return commutator(ls, op).restricted(window).is_zero(); };
        CommutatorCheck cc;
        cc.k = k;
        cc.d_vanishes = vanishes(d);
        cc.dbar_vanishes = vanishes(db);
        cc.swapped_d_vanishes = vanishes(swap_s_labels(d));
        cc.mutated_d_vanishes = vanishes(mutate_t0_creators(d));
        cc.mutated_dbar_vanishes = vanishes(mutate_t0_creators(db));
        r.commutators.push_back(cc);
    }
    return r;
}

}  // namespace lgvw::elliptic

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/groebner.hpp"
#include "lgvw/group.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/weights.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lgvw {

struct SectorElement {
    PhaseVector gamma;
    std::vector<int> fixed_indices;
    Monomial monomial;  // exponents on the fixed variables, in order
    Rational wt;
    Rational mu_plus;
    Rational mu_minus;
    int parity = 1;
    Rational deg_c;
    std::string label;

    bool is_narrow() const { return fixed_indices.empty(); }
};

struct StateSpaceOptions {
    bool with_pairing = true;
};

struct StateSpace {
    Polynomial w;
    DiagonalGroup group;
    WeightSystem q;
    Rational chat;
    std::vector<SectorElement> basis;
    std::optional<QMatrix> eta;
    std::optional<QMatrix> eta_inv;
    std::map<std::vector<int>, std::shared_ptr<const JacobianRing>> rings;

    std::size_t rank() const { return basis.size(); }
    const JacobianRing& ring(const std::vector<int>& fixed) const { return *rings.at(fixed); }
};

namespace detail {

inline std::string sector_label(const PhaseVector& g, const PhaseVector& j, const Integer& jorder)
{
    PhaseVector p = PhaseVector::identity(g.size());
    for (long k = 0; Integer(k) < jorder; ++k) {
        if (p == g) return k == 1 ? "J" : "J^" + std::to_string(k);
        p = p + j;
    }
    return g.to_string();
}

inline std::string element_label(const Monomial& m, const std::vector<int>& fixed, const std::string& sector)
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        s += "x" + std::to_string(fixed[i] + 1);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    if (!fixed.empty()) s += s.empty() ? "dx" : " dx";
    if (s.empty()) s = "1";
    return s + "|" + sector + ">";
}

// J, J^2, ..., J^{r-1}, then the identity, then the remaining elements.
inline std::vector<PhaseVector> ordered_sectors(const DiagonalGroup& g, const PhaseVector& j)
{
    std::vector<PhaseVector> out;
    std::set<PhaseVector> used;
    PhaseVector p = j;
    while (!p.is_identity()) {
        out.push_back(p);
        used.insert(p);
        p = p + j;
    }
    out.push_back(p);
    used.insert(p);
    for (const auto& e : g.elements())
        if (!used.count(e)) out.push_back(e);
    return out;
}

}  // namespace detail

// Total phase of x^m dx_gamma under g: sum over the fixed variables of
// (m_i + 1) theta_i(g).
inline bool invariant_class(const Monomial& m, const std::vector<int>& fixed, const DiagonalGroup& g)
{
    for (const auto& gen : g.generators()) {
        Rational s = 0;
        for (std::size_t i = 0; i < fixed.size(); ++i) s += (m[i] + 1) * gen[fixed[i]];
        if (!is_integer(s)) return false;
    }
    return true;
}

inline StateSpace build_state_space(const Polynomial& w, const DiagonalGroup& g,
                                    const StateSpaceOptions& opts = {})
{
    StateSpace s;
    s.w = w;
    s.group = g;
    s.q = weight_system(w);
    s.chat = central_charge(s.q);
    const PhaseVector j = exponential_grading_element(s.q);
    if (g.nvars() != w.nvars()) throw NotAdmissible("group acts on the wrong number of variables");
    if (!is_admissible(g, w)) throw NotAdmissible("group does not contain J = " + j.to_string());

    for (const auto& gamma : detail::ordered_sectors(g, j)) {
        SectorData sd = sector_data(gamma, s.q);
        auto it = s.rings.find(sd.fixed_indices);
        if (it == s.rings.end()) {
            std::vector<Rational> qf;
            for (int i : sd.fixed_indices) qf.push_back(s.q[i]);
            Polynomial wg = w.restrict_to(sd.fixed_indices);
            try {
                auto ring = std::make_shared<const JacobianRing>(wg, qf);
                it = s.rings.emplace(sd.fixed_indices, ring).first;
            } catch (const Error& e) {
                throw DegenerateRestriction("restriction to sector " + gamma.to_string() + ": " + e.what());
            }
        }
        const JacobianRing& ring = *it->second;
        const std::string sector = detail::sector_label(gamma, j, j.order());
        for (const auto& m : ring.basis().monomials) {
            if (!invariant_class(m, sd.fixed_indices, g)) continue;
            SectorElement e;
            e.gamma = gamma;
            e.fixed_indices = sd.fixed_indices;
            e.monomial = m;
            e.wt = 0;
            for (std::size_t i = 0; i < m.size(); ++i) e.wt += (m[i] + 1) * s.q[sd.fixed_indices[i]];
            e.mu_plus = e.wt + sd.iota - s.chat / 2;
            e.mu_minus = sd.n_gamma - e.wt + sd.iota - s.chat / 2;
            e.parity = sd.n_gamma % 2 == 0 ? 1 : -1;
            e.deg_c = (e.mu_plus + e.mu_minus + s.chat) / 2;
            e.label = detail::element_label(m, sd.fixed_indices, sector);
            s.basis.push_back(std::move(e));
        }
    }

    if (opts.with_pairing) {
        const std::size_t n = s.basis.size();
        QMatrix eta = zero_matrix(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                const auto& ea = s.basis[a];
                const auto& eb = s.basis[b];
                if (!(ea.gamma + eb.gamma).is_identity()) continue;
                Rational v = s.ring(ea.fixed_indices).pairing(ea.monomial, eb.monomial);
                eta[a][b] = v;
                eta[b][a] = v;
            }
        auto inv = inverse(eta);
        if (!inv) throw DegenerateResidue("state-space pairing is degenerate");
        s.eta = std::move(eta);
        s.eta_inv = std::move(inv);
    }
    return s;
}

inline long euler_characteristic(const StateSpace& s)
{
    long chi = 0;
    for (const auto& e : s.basis) chi += e.parity;
    return chi;
}

// Parity-signed trace of (theta - 1/2)(theta + 1/2) with theta = mu^+.
inline Rational supertrace_theta(const StateSpace& s)
{
    Rational str = 0;
    for (const auto& e : s.basis) str += e.parity * (e.mu_plus * e.mu_plus - make_rational(1, 4));
    return str;
}

// Same sum without the parity sign.
inline Rational unsigned_trace_theta(const StateSpace& s)
{
    Rational tr = 0;
    for (const auto& e : s.basis) tr += e.mu_plus * e.mu_plus - make_rational(1, 4);
    return tr;
}

struct SupertraceReport {
    Rational lhs;
    Rational rhs;
    long chi = 0;
    bool holds = false;
};

inline SupertraceReport check_supertrace_formula(const StateSpace& s)
{
    SupertraceReport r;
    r.chi = euler_characteristic(s);
    r.lhs = supertrace_theta(s);
    r.rhs = (s.chat - 3) / 12 * r.chi;
    r.holds = r.lhs == r.rhs;
    return r;
}

}  // namespace lgvw

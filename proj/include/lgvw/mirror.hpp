#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/group.hpp"
#include "lgvw/invertible.hpp"
#include "lgvw/state_space.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lgvw {

struct BModelElement {
    PhaseVector gamma;
    std::vector<int> fixed_indices;
    Monomial monomial;
    Rational wt;
    Rational mu_plus_b;
    Rational mu_minus_b;
    int parity_b = 1;
    std::string label;
};

// State space of a B-model pair (W, G); J need not lie in G.
struct BModelSpace {
    Polynomial w;
    DiagonalGroup group;
    WeightSystem q;
    Rational chat;
    std::vector<BModelElement> basis;
    std::map<std::vector<int>, std::shared_ptr<const JacobianRing>> rings;

    std::size_t rank() const { return basis.size(); }

    long chi() const
    {
        long c = 0;
        for (const auto& e : basis) c += e.parity_b;
        return c;
    }
    Rational supertrace_theta() const
    {
        Rational s = 0;
        for (const auto& e : basis) s += e.parity_b * (e.mu_plus_b * e.mu_plus_b - make_rational(1, 4));
        return s;
    }
};

namespace detail {

inline const JacobianRing& sector_ring(std::map<std::vector<int>, std::shared_ptr<const JacobianRing>>& rings,
                                       const Polynomial& w, const WeightSystem& q, const std::vector<int>& fixed)
{
    auto it = rings.find(fixed);
    if (it == rings.end()) {
        std::vector<Rational> qf;
        for (int i : fixed) qf.push_back(q[i]);
        it = rings.emplace(fixed, std::make_shared<const JacobianRing>(w.restrict_to(fixed), qf)).first;
    }
    return *it->second;
}

inline BModelElement b_element(const PhaseVector& gamma, const Monomial& m, const BModelSpace& s,
                               const PhaseVector& j)
{
    BModelElement e;
    e.gamma = gamma;
    e.fixed_indices = gamma.fixed_indices();
    e.monomial = m;
    e.wt = 0;
    for (std::size_t i = 0; i < m.size(); ++i) e.wt += (m[i] + 1) * s.q[e.fixed_indices[i]];
    const Rational iota = gamma.age() - s.q.sum();
    const Rational iota_inv = (-gamma).age() - s.q.sum();
    e.mu_plus_b = e.wt + iota - s.chat / 2;
    e.mu_minus_b = e.wt + iota_inv - s.chat / 2;
    e.parity_b = (static_cast<int>(s.q.size()) - static_cast<int>(e.fixed_indices.size())) % 2 == 0 ? 1 : -1;
    e.label = element_label(m, e.fixed_indices, sector_label(gamma, j, j.order()));
    return e;
}

}  // namespace detail

inline BModelSpace build_b_model_space(const Polynomial& w, const DiagonalGroup& g)
{
    BModelSpace s;
    s.w = w;
    s.group = g;
    s.q = weight_system(w);
    s.chat = central_charge(s.q);
    for (const auto& gen : g.generators())
        if (!preserves(gen, w)) throw NotASymmetryGroup("generator " + gen.to_string() + " does not preserve W");
    const PhaseVector j = exponential_grading_element(s.q);
    for (const auto& gamma : g.elements()) {
        const auto fixed = gamma.fixed_indices();
        const JacobianRing& ring = detail::sector_ring(s.rings, w, s.q, fixed);
        for (const auto& m : ring.basis().monomials)
            if (invariant_class(m, fixed, g)) s.basis.push_back(detail::b_element(gamma, m, s, j));
    }
    return s;
}

struct MirrorCorrespondence {
    Polynomial w_a;
    DiagonalGroup g_a;
    Polynomial w_b;
    DiagonalGroup g_b;
    std::vector<SectorElement> source;
    std::vector<BModelElement> image;
    // Position of each image inside the independently built B-model basis,
    // or -1 when the image is not a basis element.
    std::vector<int> image_index;
    BModelSpace b_space;
};

// Krawitz map. The sector of x^a dx|gamma> is written as
// gamma = sum_j (r_j + 1) rho_j with rho_j the column generators of G_W;
// the image is x^r dx|sum_j (a_j + 1) rhobar_j> with rhobar_j the row
// generators. The exponents r are found by searching the G^T-invariant
// standard monomials of the image sector. `dual` overrides G^T, for
// mutation tests.
inline MirrorCorrespondence krawitz_map(const StateSpace& a, const std::optional<DiagonalGroup>& dual = std::nullopt)
{
    const std::size_t n = a.w.nvars();
    const QMatrix e = invertible_exponent_matrix(a.w);
    const auto inv = inverse(e);
    if (!inv) throw NotInvertible("exponent matrix is singular");

    MirrorCorrespondence c;
    c.w_a = a.w;
    c.g_a = a.group;
    c.w_b = transpose(a.w);
    c.g_b = dual ? *dual : mirror_group(a.group, a.w);
    c.b_space = build_b_model_space(c.w_b, c.g_b);

    std::vector<PhaseVector> rho, rhobar;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> col(n), row(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = (*inv)[i][k];
            row[i] = (*inv)[k][i];
        }
        rho.emplace_back(col);
        rhobar.emplace_back(row);
    }
    const PhaseVector j_b = exponential_grading_element(c.b_space.q);
    auto rings = c.b_space.rings;

    // Elements sharing (gamma, phi) share one candidate list; the k-th of
    // them takes the k-th candidate.
    std::map<std::pair<PhaseVector, PhaseVector>, std::size_t> used;
    for (const auto& el : a.basis) {
        PhaseVector phi = PhaseVector::identity(n);
        for (std::size_t i = 0; i < el.fixed_indices.size(); ++i)
            phi = phi + rhobar[el.fixed_indices[i]].times(el.monomial[i] + 1);
        if (!c.g_b.contains(phi))
            throw MapNotWellDefined("image sector " + phi.to_string() + " of " + el.label + " is not in G^T");
        const auto fixed_b = phi.fixed_indices();
        const JacobianRing& ring = detail::sector_ring(rings, c.w_b, c.b_space.q, fixed_b);
        std::vector<Monomial> candidates;
        for (const auto& m : ring.basis().monomials) {
            PhaseVector g = PhaseVector::identity(n);
            for (std::size_t i = 0; i < fixed_b.size(); ++i) g = g + rho[fixed_b[i]].times(m[i] + 1);
            if (g == el.gamma && invariant_class(m, fixed_b, c.g_b)) candidates.push_back(m);
        }
        std::size_t& k = used[{el.gamma, phi}];
        if (k >= candidates.size())
            throw MapNotWellDefined("no unused exponent vector r reproduces the sector of " + el.label);
        BModelElement img = detail::b_element(phi, candidates[k++], c.b_space, j_b);
        int idx = -1;
        for (std::size_t b = 0; b < c.b_space.basis.size(); ++b) {
            const auto& be = c.b_space.basis[b];
            if (be.gamma == img.gamma && be.monomial == img.monomial) idx = static_cast<int>(b);
        }
        c.source.push_back(el);
        c.image.push_back(std::move(img));
        c.image_index.push_back(idx);
    }
    return c;
}

struct MirrorReport {
    std::size_t rank_a = 0;
    std::size_t rank_b = 0;
    Rational chat_a;
    Rational chat_b;
    bool bijective = false;
    bool bigrading_preserved = false;
    bool parity_preserved = false;
    bool chat_equal = false;
    bool rank_equal = false;
    bool chi_equal = false;
    bool supertrace_equal = false;
    std::vector<std::string> failures;

    bool passed() const
    {
        return bijective && bigrading_preserved && parity_preserved && chat_equal && rank_equal && chi_equal &&
               supertrace_equal;
    }
};

inline MirrorReport verify_mirror(const MirrorCorrespondence& c)
{
    MirrorReport r;
    r.rank_a = c.source.size();
    r.rank_b = c.b_space.rank();
    r.chat_a = central_charge(weight_system(c.w_a));
    r.chat_b = c.b_space.chat;
    r.chat_equal = r.chat_a == r.chat_b;
    r.rank_equal = r.rank_a == r.rank_b;

    std::vector<int> hits(r.rank_b, 0);
    bool all_found = true;
    for (int idx : c.image_index) {
        if (idx < 0) all_found = false;
        else ++hits[idx];
    }
    r.bijective = all_found && r.rank_equal;
    for (int h : hits)
        if (h != 1) r.bijective = false;
    if (!r.bijective) r.failures.push_back("map is not a bijection onto the B-model basis");

    r.bigrading_preserved = r.parity_preserved = true;
    long chi_a = 0;
    Rational str_a = 0, str_b = 0;
    for (std::size_t k = 0; k < c.source.size(); ++k) {
        const auto& s = c.source[k];
        const auto& t = c.image[k];
        chi_a += s.parity;
        str_a += s.parity * (s.mu_plus * s.mu_plus - make_rational(1, 4));
        str_b += t.parity_b * (t.mu_plus_b * t.mu_plus_b - make_rational(1, 4));
        if (s.mu_plus != t.mu_plus_b || s.mu_minus != t.mu_minus_b) {
            r.bigrading_preserved = false;
            r.failures.push_back("bigrading differs at " + s.label + " -> " + t.label);
        }
        if (s.parity != t.parity_b) {
            r.parity_preserved = false;
            r.failures.push_back("parity differs at " + s.label + " -> " + t.label);
        }
    }
    r.chi_equal = chi_a == c.b_space.chi();
    r.supertrace_equal = str_a == str_b && str_b == c.b_space.supertrace_theta();
    if (!r.chat_equal) r.failures.push_back("central charges differ");
    if (!r.chi_equal) r.failures.push_back("Euler characteristics differ");
    if (!r.supertrace_equal) r.failures.push_back("supertraces differ");
    return r;
}

// (G^T)^T = G as phase-vector sets.
inline bool mirror_is_involution(const DiagonalGroup& g, const Polynomial& w)
{
    const Polynomial wt = transpose(w);
    const DiagonalGroup back = mirror_group(mirror_group(g, w), wt);
    return back.is_subgroup_of(g) && g.is_subgroup_of(back);
}

}  // namespace lgvw

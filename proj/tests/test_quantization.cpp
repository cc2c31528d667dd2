#include "lgvw/lgvw.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lgvw;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

GradedSpace space_of(const std::string& pair, const std::string& group = "")
{
    const auto p = resolve_pair(pair, group);
    return graded_space(build_state_space(p.w, p.group));
}

std::vector<std::pair<std::string, GradedSpace>> small_spaces(std::size_t max_rank)
{
    std::vector<std::pair<std::string, GradedSpace>> out;
    for (const auto& p : catalog_pairs()) {
        const auto rp = resolve_pair(p.polynomial, p.group);
        const StateSpace s = build_state_space(rp.w, rp.group);
        if (s.rank() <= max_rank) out.emplace_back(p.id, graded_space(s));
    }
    return out;
}

LoopVector random_vector(std::mt19937& gen, std::size_t n)
{
    std::uniform_int_distribution<int> c(-3, 3), pw(-3, 2);
    LoopVector v(n);
    for (int i = 0; i < 5; ++i) v.add(pw(gen), static_cast<std::size_t>(gen() % n), c(gen));
    return v;
}

std::set<int> kinds(const QuadraticHamiltonian& h)
{
    std::set<int> out;
    for (const auto& [ij, c] : h.terms) out.insert(QuadraticHamiltonian::kind_of(h.space, ij.first, ij.second));
    return out;
}

}  // namespace

TEST(SymplecticForm, DualPairGivesOne)
{
    const GradedSpace g = space_of("x1^2x2+x2^2x3+x3^2x1", "J");
    const std::size_t n = g.rank();
    for (std::size_t a = 0; a < n; ++a) {
        LoopVector dual(n);
        for (std::size_t c = 0; c < n; ++c) dual.add(-1, c, g.eta_inv[c][a]);
        EXPECT_EQ(symplectic_form(LoopVector::basis(n, a, 0), dual, g.eta), 1) << a;
    }
}

TEST(SymplecticForm, AntisymmetricOnEvenSpaces)
{
    const GradedSpace g = space_of("fermat2-d5");
    std::mt19937 gen(2);
    for (int i = 0; i < 20; ++i) {
        const LoopVector f = random_vector(gen, g.rank()), h = random_vector(gen, g.rank());
        EXPECT_EQ(symplectic_form(f, f, g.eta), 0);
        EXPECT_EQ(symplectic_form(f, h, g.eta), -symplectic_form(h, f, g.eta));
    }
}

TEST(SymplecticForm, NoResidueForPositivePowers)
{
    const GradedSpace g = space_of("x^3");
    EXPECT_EQ(symplectic_form(LoopVector::basis(2, 0, 1), LoopVector::basis(2, 1, 1), g.eta), 0);
}

TEST(InfinitesimalSymplectic, Examples)
{
    for (const char* pair : {"x^3", "cubic", "fermat2-d6"}) {
        const GradedSpace g = space_of(pair);
        EXPECT_TRUE(is_infinitesimal_symplectic(LoopOperator::z_power(g.rank(), -1), g.eta)) << pair;
        EXPECT_TRUE(is_infinitesimal_symplectic(hodge_operator(g), g.eta)) << pair;
        EXPECT_FALSE(is_infinitesimal_symplectic(LoopOperator::identity(g.rank()), g.eta)) << pair;
    }
}

TEST(ScriptL, Examples)
{
    const GradedSpace g = space_of("fermat2-d4");
    const std::size_t n = g.rank();
    EXPECT_EQ(script_L(g, -1), LoopOperator::z_power(n, -1));
    // [D, z^{-1}] = -1
    EXPECT_EQ(commutator(auxiliary_D(g), LoopOperator::z_power(n, -1)), Rational(-1) * LoopOperator::identity(n));
    const LoopOperator l0 = script_L(g, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (int m = -2; m <= 3; ++m) {
            const LoopVector image = l0.apply(LoopVector::basis(n, a, m));
            EXPECT_EQ(image.at(m, a), g.mu_plus[a] + m + r(1, 2));
            LoopVector rest = image;
            rest.add(m, a, -image.at(m, a));
            EXPECT_TRUE(rest.is_zero());
        }
    EXPECT_THROW(script_L(g, -2), PreconditionNotMet);
}

TEST(ScriptL, SymplecticAndVirasoroAsLoopOperators)
{
    for (const auto& [id, g] : small_spaces(6)) {
        std::vector<LoopOperator> ls;
        for (int k = -1; k <= 4; ++k) ls.push_back(script_L(g, k));
        for (int k = -1; k <= 3; ++k) EXPECT_TRUE(is_infinitesimal_symplectic(ls[k + 1], g.eta, 5)) << id << " " << k;
        for (int m = -1; m <= 2; ++m)
            for (int n = -1; n <= 2; ++n) {
                if (m + n > 4) continue;
                // Under composition the bracket is (n - m) L_{m+n}; see [L_0, z^{-1}] = -z^{-1}.
                const LoopOperator rhs = m + n >= -1 ? Rational(n - m) * ls[m + n + 1] : LoopOperator(g.rank());
                EXPECT_EQ(commutator(ls[m + 1], ls[n + 1]), rhs) << id << " " << m << "," << n;
            }
    }
}

TEST(QuadraticHamiltonian, ShapeOfScriptL)
{
    const GradedSpace g = space_of("x^3");
    EXPECT_EQ(kinds(script_L_hamiltonian(g, -1, 4)), (std::set<int>{0, 1}));
    EXPECT_EQ(kinds(script_L_hamiltonian(g, 0, 4)), (std::set<int>{1}));
    const QuadraticHamiltonian h1 = script_L_hamiltonian(g, 1, 4);
    EXPECT_EQ(kinds(h1), (std::set<int>{1, 2}));
    for (const auto& [ij, c] : h1.part(2).terms) {
        EXPECT_EQ(h1.space.level(ij.first), 0);
        EXPECT_EQ(h1.space.level(ij.second), 0);
    }
}

TEST(QuadraticHamiltonian, StringCoefficients)
{
    // Omega(L_{-1} f, f) = -sum eta_ab q_0^a q_0^b - 2 sum p q, and h is half of it.
    const GradedSpace g = space_of("x^3");
    const QuadraticHamiltonian h = script_L_hamiltonian(g, -1, 4);
    QuadraticHamiltonian qq{h.space, {}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) qq.add(h.space.q_id(0, a), h.space.q_id(0, b), -g.eta[a][b] / 2);
    EXPECT_EQ(h.part(0).terms, qq.terms);
    for (const auto& [ij, c] : h.part(1).terms) EXPECT_EQ(c, -1);
}

TEST(QuadraticHamiltonian, L0Coefficients)
{
    const GradedSpace g = space_of("fermat2-d5");
    const QuadraticHamiltonian h = script_L_hamiltonian(g, 0, 4);
    for (const auto& [ij, c] : h.terms) {
        const int q = h.space.is_p(ij.first) ? ij.second : ij.first;
        EXPECT_EQ(c, -(g.mu_plus[h.space.index(q)] + h.space.level(q) + r(1, 2)));
    }
}

TEST(QuadraticHamiltonian, NotSymplectic)
{
    const GradedSpace g = space_of("x^3");
    EXPECT_THROW(quadratic_hamiltonian(LoopOperator::identity(2), g, 3), NotSymplectic);
}

TEST(Quantize, HbarPowers)
{
    const GradedSpace g = space_of("x^3");
    const WeylSpace sp = g.weyl_space();
    const QOperator sl = ccr_quantize(script_L_hamiltonian(g, -1, 4).part(0), sp);
    for (const auto& [m, c] : sl.terms()) {
        EXPECT_EQ(m.hbar, -2);
        EXPECT_EQ(m.creators.size(), 2u);
    }
    const QOperator pp = ccr_quantize(script_L_hamiltonian(g, 1, 4).part(2), sp);
    ASSERT_FALSE(pp.is_zero());
    for (const auto& [m, c] : pp.terms()) {
        EXPECT_EQ(m.hbar, 2);
        EXPECT_EQ(m.annihilators.size(), 2u);
    }
}

TEST(Quantize, StringOperatorAfterDilatonShift)
{
    // The odd classes use the super-symmetric pairing on both sides.
    const GradedSpace g = with_super_pairing(space_of("cubic", "J"));
    const QOperator q = dilaton_shift(quantize(script_L_hamiltonian(g, -1, 6), g.weyl_space()));
    EXPECT_EQ(q, string_operator(g, 6));
}

TEST(Quantize, SignedHomomorphismAgainstLiteralRules)
{
    // The literal rules give minus the homomorphism.
    const GradedSpace g = space_of("x^3");
    const WeylSpace sp = g.weyl_space();
    const auto h0 = script_L_hamiltonian(g, 0, 6), hm = script_L_hamiltonian(g, -1, 6);
    const QOperator lit = commutator(ccr_quantize(h0, sp), ccr_quantize(hm, sp)).restricted(5);
    const QOperator hom = commutator(quantize(h0, sp), quantize(hm, sp)).restricted(5);
    EXPECT_EQ(hom, quantize(hm, sp).restricted(5));
    EXPECT_EQ(lit, Rational(-1) * ccr_quantize(hm, sp).restricted(5));
}

TEST(Cocycle, Examples)
{
    const GradedSpace g = space_of("x^3");
    const DarbouxSpace d = darboux_space(g, 2);
    QuadraticHamiltonian pp{d, {}}, qq{d, {}}, other{d, {}};
    pp.add(d.p_id(0, 0), d.p_id(0, 0), 1);
    qq.add(d.q_id(0, 0), d.q_id(0, 0), 1);
    other.add(d.q_id(1, 1), d.q_id(2, 0), 1);
    EXPECT_EQ(cocycle(pp, qq), 2);
    EXPECT_EQ(cocycle(qq, pp), -2);
    EXPECT_EQ(cocycle(pp, other), 0);
}

TEST(QuantizationIdentity, CatalogSpaces)
{
    for (const auto& [id, g] : small_spaces(6))
        for (int k = -1; k <= 3; ++k) {
            const QuantizationCheck c = check_quantization_identity(g, k, 8);
            EXPECT_TRUE(c.displayed_matches) << id << " k=" << k;
            EXPECT_TRUE(c.defect.is_zero()) << id << " k=" << k;
            EXPECT_TRUE(c.matches) << id << " k=" << k;
            if (k == 0) {
                EXPECT_EQ(c.constant_offset, g.supertrace() / 4) << id;
                EXPECT_TRUE(c.matches_signed) << id;
            } else {
                EXPECT_EQ(c.constant_offset, 0) << id;
            }
        }
}

TEST(QuantizationIdentity, RankTwoIncludesHbarTerm)
{
    const GradedSpace g = space_of("x^3");
    const QuantizationCheck c = check_quantization_identity(g, 1, 6);
    EXPECT_TRUE(c.matches);
    bool hbar2 = false;
    const QOperator l1 = virasoro_operator(g, 1, 6);
    for (const auto& [m, x] : l1.terms()) hbar2 |= m.hbar == 2;
    EXPECT_TRUE(hbar2);
}

TEST(BracketDefect, ScalarAndEqualToCocycle)
{
    for (const auto& [id, g] : small_spaces(6))
        for (int m = -1; m <= 2; ++m)
            for (int n = -1; n <= 2; ++n) {
                const BracketDefect b = bracket_defect(g, m, n, 8);
                EXPECT_TRUE(b.is_scalar()) << id << " " << m << "," << n;
                EXPECT_TRUE(b.matches_cocycle()) << id << " " << m << "," << n;
            }
}

TEST(BracketDefect, L1LminusOneIsMinusHalfSupertrace)
{
    for (const char* pair : {"x^3", "x^5", "fermat2-d7", "cubic"}) {
        const GradedSpace g = space_of(pair);
        const BracketDefect b = bracket_defect(g, 1, -1, 8);
        EXPECT_EQ(b.constant, -g.supertrace() / 2) << pair;
        EXPECT_EQ(b.cocycle_value, -g.supertrace() / 2) << pair;
    }
}

TEST(Conjugation, IdentityIsTrivial)
{
    const GradedSpace g = space_of("x^3");
    const LoopOperator a = script_L(g, 1);
    const Conjugation c = conjugate(LoopOperator(g.rank()), a, g, 4);
    EXPECT_EQ(c.op, a);
    EXPECT_EQ(c.constant, 0);
}

TEST(Conjugation, EllipticConnectionInvariant)
{
    const GradedSpace e = elliptic::graded_space();
    const FormalConjugation c = conjugate_formal(elliptic::log_s(), elliptic::connection(e));
    EXPECT_TRUE(c.is_invariant());
    // A perturbed connection is moved by S.
    LoopOperator bad = elliptic::connection(e);
    bad += LoopOperator::z_power(4, -1);
    bad += LoopOperator::constant(theta_matrix(e), -1);
    EXPECT_FALSE(conjugate_formal(elliptic::log_s(), bad).is_invariant());
}

TEST(Conjugation, QuantizedLogSMatchesDisplay)
{
    EXPECT_EQ(elliptic::quantized_log_s(8), elliptic::displayed_log_s(8));
}

TEST(Conjugation, LogSCommutesWithExtraOperators)
{
    const elliptic::EllipticReport rep = elliptic::run_checks(3, 8);
    EXPECT_TRUE(rep.commutators_vanish());
    EXPECT_TRUE(rep.control_detected());
    for (const auto& c : rep.commutators) EXPECT_TRUE(c.swapped_d_vanishes) << c.k;
}

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/state_space.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace lgvw {

// Finite sum of c * y^e with rational exponents e.
class GradedSeries {
public:
    void add(const Rational& exponent, const Integer& c)
    {
        if (c == 0) return;
        auto& slot = terms_[exponent];
        slot += c;
        if (slot == 0) terms_.erase(exponent);
    }

    const std::map<Rational, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // lcm of the exponent denominators; the series is a Laurent polynomial
    // in y^{1/D}.
    Integer denominator() const
    {
        Integer d = 1;
        for (const auto& [e, c] : terms_) d = lcm_of(d, e.get_den());
        return d;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Integer a = abs(c);
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            if (lgvw::is_zero(e)) {
                os << a;
            } else {
                if (a != 1) os << a << "*";
                os << "y";
                if (e != 1) os << "^" << (e.get_den() == 1 ? e.get_str() : "(" + e.get_str() + ")");
            }
            first = false;
        }
        return os.str();
    }

    friend bool operator==(const GradedSeries&, const GradedSeries&) = default;

private:
    std::map<Rational, Integer> terms_;
};

struct SeriesLimits {
    Integer chi;
    Rational str_theta2;
};

// y -> 1 limits of P and of d/dy(y dP/dy).
inline SeriesLimits series_limits(const GradedSeries& p)
{
    SeriesLimits l{0, 0};
    for (const auto& [e, c] : p.terms()) {
        l.chi += c;
        l.str_theta2 += Rational(c) * e * e;
    }
    return l;
}

namespace detail {

// Laurent polynomial in z = y^{1/D} with integer coefficients.
using ZPoly = std::map<long, Integer>;

inline void zadd(ZPoly& p, long e, const Integer& c)
{
    if (c == 0) return;
    auto& slot = p[e];
    slot += c;
    if (slot == 0) p.erase(e);
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    ZPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) zadd(out, ea + eb, ca * cb);
    return out;
}

// Exact quotient by (1 - z^a); throws when the division leaves a remainder.
inline ZPoly zdiv_one_minus(const ZPoly& p, long a)
{
    if (p.empty()) return p;
    const long lo = p.begin()->first, hi = p.rbegin()->first;
    ZPoly q;
    for (long k = lo; k <= hi - a; ++k) {
        Integer c = 0;
        if (auto it = p.find(k); it != p.end()) c += it->second;
        if (auto it = q.find(k - a); it != q.end()) c += it->second;
        zadd(q, k, c);
    }
    ZPoly check = q;
    for (const auto& [e, c] : q) zadd(check, e + a, -c);
    if (check != p) throw std::logic_error("Poincare series division left a remainder");
    return q;
}

inline GradedSeries to_series(const ZPoly& p, long d, const Rational& shift = 0)
{
    GradedSeries s;
    for (const auto& [e, c] : p) s.add(make_rational(e, d) + shift, c);
    return s;
}

inline long series_denominator(const std::vector<Rational>& q)
{
    return to_long(Rational(common_denominator(q)));
}

}  // namespace detail

// prod_i (y - y^{q_i}) / (1 - y^{q_i}).
inline GradedSeries poincare_series_product(const std::vector<Rational>& q)
{
    const long d = detail::series_denominator(q);
    detail::ZPoly num{{0, 1}};
    for (const auto& qi : q) {
        long a = to_long(qi * d);
        detail::ZPoly f;
        detail::zadd(f, d, 1);
        detail::zadd(f, a, -1);
        num = detail::zmul(num, f);
    }
    for (const auto& qi : q) num = detail::zdiv_one_minus(num, to_long(qi * d));
    return detail::to_series(num, d);
}

inline GradedSeries poincare_series_product(const Polynomial& w)
{
    if (w.nvars() == 0) {
        GradedSeries s;
        s.add(0, 1);
        return s;
    }
    return poincare_series_product(weight_system(w).weights);
}

// Signed census of a full Milnor basis: sum of (-1)^n y^{wt(x^m dx)}.
inline GradedSeries milnor_census(const JacobianRing& ring, const std::vector<Rational>& q)
{
    GradedSeries s;
    const int sign = q.size() % 2 == 0 ? 1 : -1;
    for (const auto& m : ring.basis().monomials) {
        Rational wt = 0;
        for (std::size_t i = 0; i < m.size(); ++i) wt += (m[i] + 1) * q[i];
        s.add(wt, sign);
    }
    return s;
}

// G-averaged trace of the sector, computed by orthogonality of characters:
// each factor (y - lambda u)/(1 - lambda u) is written as
// (y - lambda u) sum_{k<M} (lambda u)^k / (1 - u^M), the numerator terms are
// labelled by their character on the generators, and only trivial
// characters survive the average.
inline GradedSeries averaged_sector_series(const std::vector<int>& fixed, const WeightSystem& q,
                                           const DiagonalGroup& g)
{
    std::vector<Rational> qf;
    for (int i : fixed) qf.push_back(q[i]);
    const long d = qf.empty() ? 1 : detail::series_denominator(qf);
    Integer exponent = 1;
    for (const auto& gen : g.generators()) exponent = lcm_of(exponent, gen.order());
    const long big_m = exponent.get_si();
    const std::size_t ngen = g.generators().size();

    using Key = std::pair<std::vector<Rational>, long>;
    std::map<Key, Integer> acc{{{std::vector<Rational>(ngen, Rational(0)), 0}, 1}};
    for (std::size_t idx = 0; idx < fixed.size(); ++idx) {
        const int v = fixed[idx];
        const long a = to_long(qf[idx] * d);
        std::map<Key, Integer> next;
        auto push = [&](const Key& base, long power, long zexp, const Integer& c) {
            Key k = base;
            for (std::size_t j = 0; j < ngen; ++j) k.first[j] = frac(k.first[j] + power * g.generators()[j][v]);
            k.second += zexp;
            auto& slot = next[k];
            slot += c;
        };
        for (const auto& [key, c] : acc) {
            for (long k = 0; k < big_m; ++k) {
                push(key, k, d + k * a, c);
                push(key, k + 1, (k + 1) * a, -c);
            }
        }
        acc.clear();
        for (auto& [k, c] : next)
            if (c != 0) acc.emplace(k, c);
    }
    detail::ZPoly num;
    for (const auto& [key, c] : acc) {
        bool trivial = true;
        for (const auto& ph : key.first)
            if (!is_zero(ph)) trivial = false;
        if (trivial) detail::zadd(num, key.second, c);
    }
    for (std::size_t idx = 0; idx < fixed.size(); ++idx)
        num = detail::zdiv_one_minus(num, big_m * to_long(qf[idx] * d));
    return detail::to_series(num, d);
}

// Sum over sectors of y^{iota - chat/2} times the averaged sector series.
inline GradedSeries poincare_series_pair(const Polynomial& w, const DiagonalGroup& g)
{
    WeightSystem q = weight_system(w);
    Rational chat = central_charge(q);
    GradedSeries total;
    for (const auto& gamma : g.elements()) {
        SectorData sd = sector_data(gamma, q);
        GradedSeries part = averaged_sector_series(sd.fixed_indices, q, g);
        for (const auto& [e, c] : part.terms()) total.add(e + sd.iota - chat / 2, c);
    }
    return total;
}

// Direct census sum of parity * y^{mu^+} over the state-space basis.
inline GradedSeries basis_census(const StateSpace& s)
{
    GradedSeries p;
    for (const auto& e : s.basis) p.add(e.mu_plus, e.parity);
    return p;
}

struct PoincareCheck {
    std::size_t sectors = 0;
    std::vector<std::string> sector_mismatches;  // product formula != Milnor census of W_gamma
    GradedSeries averaged;
    GradedSeries census;
    SeriesLimits limits;
    bool averaged_equals_census = false;
    bool chi_limit = false;
    bool str_limit = false;
    bool passed() const
    {
        return sector_mismatches.empty() && averaged_equals_census && chi_limit && str_limit;
    }
};

// Product formula per sector, group-averaged series against the basis
// census, and the y -> 1 limits against chi and Str(theta^2).
inline PoincareCheck check_poincare(const StateSpace& s)
{
    PoincareCheck r;
    for (const auto& gamma : s.group.elements()) {
        const auto fixed = gamma.fixed_indices();
        ++r.sectors;
        std::vector<Rational> qf;
        for (int i : fixed) qf.push_back(s.q[i]);
        if (!(poincare_series_product(qf) == milnor_census(s.ring(fixed), qf))) r.sector_mismatches.push_back(gamma.to_string());
    }
    r.averaged = poincare_series_pair(s.w, s.group);
    r.census = basis_census(s);
    r.limits = series_limits(r.averaged);
    r.averaged_equals_census = r.averaged == r.census;
    const long chi = euler_characteristic(s);
    r.chi_limit = r.limits.chi == chi;
    r.str_limit = r.limits.str_theta2 == supertrace_theta(s) + Rational(chi) / 4;
    return r;
}

}  // namespace lgvw

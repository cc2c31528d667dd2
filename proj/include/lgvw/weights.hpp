#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/polynomial.hpp"

#include <vector>

namespace lgvw {

struct WeightSystem {
    std::vector<Rational> weights;

    std::size_t size() const { return weights.size(); }
    const Rational& operator[](std::size_t i) const { return weights[i]; }
    Rational sum() const
    {
        Rational s = 0;
        for (const auto& q : weights) s += q;
        return s;
    }
    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

// Rows are the monomials of W in the polynomial's internal order.
inline QMatrix exponent_matrix(const Polynomial& w)
{
    QMatrix e;
    for (const auto& [m, c] : w.terms()) {
        std::vector<Rational> row(w.nvars(), Rational(0));
        for (std::size_t i = 0; i < m.size(); ++i) row[i] = m[i];
        e.push_back(std::move(row));
    }
    return e;
}

inline WeightSystem weight_system(const Polynomial& w)
{
    QMatrix e = exponent_matrix(w);
    if (e.empty() || w.nvars() == 0) throw NotQuasiHomogeneous("polynomial has no variables");
    bool unique = false;
    auto q = solve_linear(e, std::vector<Rational>(e.size(), Rational(1)), unique);
    if (!q) throw NotQuasiHomogeneous("no weights give every monomial degree 1");
    if (!unique) throw NonUniqueWeights("exponent matrix has rank below the variable count");
    for (std::size_t i = 0; i < q->size(); ++i) {
        const Rational& qi = (*q)[i];
        if (sgn(qi) <= 0 || qi > make_rational(1, 2))
            throw WeightOutOfRange("q" + std::to_string(i + 1) + " = " + qi.get_str());
    }
    return WeightSystem{*q};
}

inline Rational central_charge(const WeightSystem& q)
{
    Rational c = 0;
    for (const auto& qi : q.weights) c += 1 - 2 * qi;
    return c;
}

inline bool is_calabi_yau(const Polynomial& w)
{
    return weight_system(w).sum() == 1;
}

inline Integer milnor_number(const WeightSystem& q)
{
    Rational mu = 1;
    for (const auto& qi : q.weights) mu *= 1 / qi - 1;
    if (!is_integer(mu) || sgn(mu) <= 0)
        throw NonIntegerMilnorNumber("product of (1/q_i - 1) is " + mu.get_str());
    return mu.get_num();
}

}  // namespace lgvw

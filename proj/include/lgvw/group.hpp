#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/invertible.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/weights.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lgvw {

// Diagonal group element exp(2 pi i theta_j) stored as phases in [0,1).
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(std::vector<Rational> phases) : phases_(std::move(phases))
    {
        for (auto& p : phases_) p = frac(p);
    }
    static PhaseVector identity(std::size_t n) { return PhaseVector(std::vector<Rational>(n, Rational(0))); }

    std::size_t size() const { return phases_.size(); }
    const Rational& operator[](std::size_t i) const { return phases_[i]; }
    const std::vector<Rational>& phases() const { return phases_; }

    bool is_identity() const
    {
        return std::all_of(phases_.begin(), phases_.end(), [](const Rational& p) { return is_zero(p); });
    }

    PhaseVector operator+(const PhaseVector& o) const
    {
        std::vector<Rational> out(phases_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = phases_[i] + o.phases_[i];
        return PhaseVector(std::move(out));
    }
    PhaseVector operator-() const
    {
        std::vector<Rational> out(phases_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = -phases_[i];
        return PhaseVector(std::move(out));
    }
    PhaseVector operator-(const PhaseVector& o) const { return *this + (-o); }
    PhaseVector times(long k) const
    {
        std::vector<Rational> out(phases_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = phases_[i] * k;
        return PhaseVector(std::move(out));
    }

    Integer order() const
    {
        Integer d = 1;
        for (const auto& p : phases_) d = lcm_of(d, p.get_den());
        return d;
    }

    Rational age() const
    {
        Rational a = 0;
        for (const auto& p : phases_) a += p;
        return a;
    }

    std::vector<int> fixed_indices() const
    {
        std::vector<int> fix;
        for (std::size_t i = 0; i < phases_.size(); ++i)
            if (is_zero(phases_[i])) fix.push_back(static_cast<int>(i));
        return fix;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < phases_.size(); ++i) os << (i ? "," : "") << phases_[i].get_str();
        os << ")";
        return os.str();
    }

    friend bool operator==(const PhaseVector& a, const PhaseVector& b) { return a.phases_ == b.phases_; }
    friend bool operator!=(const PhaseVector& a, const PhaseVector& b) { return !(a == b); }
    friend bool operator<(const PhaseVector& a, const PhaseVector& b) { return a.phases_ < b.phases_; }

private:
    std::vector<Rational> phases_;
};

class DiagonalGroup {
public:
    DiagonalGroup() = default;
    DiagonalGroup(std::size_t nvars, std::vector<PhaseVector> generators)
        : nvars_(nvars), generators_(std::move(generators))
    {
        std::set<PhaseVector> seen{PhaseVector::identity(nvars_)};
        std::deque<PhaseVector> todo{PhaseVector::identity(nvars_)};
        while (!todo.empty()) {
            PhaseVector g = todo.front();
            todo.pop_front();
            for (const auto& s : generators_) {
                PhaseVector h = g + s;
                if (seen.insert(h).second) todo.push_back(h);
            }
        }
        elements_.assign(seen.begin(), seen.end());
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<PhaseVector>& elements() const { return elements_; }
    const std::vector<PhaseVector>& generators() const { return generators_; }

    bool contains(const PhaseVector& g) const
    {
        return std::binary_search(elements_.begin(), elements_.end(), g);
    }

    bool is_subgroup_of(const DiagonalGroup& o) const
    {
        return std::all_of(generators_.begin(), generators_.end(),
                           [&](const PhaseVector& g) { return o.contains(g); });
    }

    friend bool operator==(const DiagonalGroup& a, const DiagonalGroup& b)
    {
        return a.elements_ == b.elements_;
    }

private:
    std::size_t nvars_ = 0;
    std::vector<PhaseVector> generators_;
    std::vector<PhaseVector> elements_;
};

inline DiagonalGroup subgroup_generated(const std::vector<PhaseVector>& gens, std::size_t nvars)
{
    return DiagonalGroup(nvars, gens);
}

// A small generating set for an explicit element list (greedy).
inline DiagonalGroup group_from_elements(const std::vector<PhaseVector>& elements, std::size_t nvars)
{
    std::vector<PhaseVector> sorted = elements;
    std::sort(sorted.begin(), sorted.end(), [](const PhaseVector& a, const PhaseVector& b) {
        Integer oa = a.order(), ob = b.order();
        if (oa != ob) return oa > ob;
        return a < b;
    });
    std::vector<PhaseVector> gens;
    DiagonalGroup cur(nvars, {});
    for (const auto& g : sorted) {
        if (cur.contains(g)) continue;
        gens.push_back(g);
        cur = DiagonalGroup(nvars, gens);
        if (cur.order() == elements.size()) break;
    }
    return cur;
}

inline PhaseVector exponential_grading_element(const WeightSystem& q)
{
    return PhaseVector(q.weights);
}

inline bool is_special_linear(const PhaseVector& g) { return is_integer(g.age()); }

// Integer-congruence solve of E theta in Z^m; the invertible route uses the
// columns of E^{-1}, otherwise a square full-rank row subset is enumerated
// and filtered against the remaining rows.
inline DiagonalGroup maximal_group(const Polynomial& w)
{
    const std::size_t n = w.nvars();
    QMatrix e = exponent_matrix(w);
    if (e.size() == n && !is_zero(determinant(e))) {
        auto inv = inverse(e);
        std::vector<PhaseVector> gens;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rational> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = (*inv)[i][k];
            gens.emplace_back(col);
        }
        return DiagonalGroup(n, gens);
    }
    if (e.size() > 24) throw NotInvertible("too many monomials for the congruence route");
    QMatrix square;
    for (const auto& row : e) {
        QMatrix trial = square;
        trial.push_back(row);
        if (matrix_rank(trial) == trial.size()) square = trial;
        if (square.size() == n) break;
    }
    if (square.size() != n) throw NotInvertible("diagonal symmetry group is infinite");
    auto inv = inverse(square);
    std::vector<PhaseVector> gens;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = (*inv)[i][k];
        gens.emplace_back(col);
    }
    DiagonalGroup big(n, gens);
    std::vector<PhaseVector> keep;
    for (const auto& g : big.elements()) {
        bool ok = true;
        for (const auto& row : e) {
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i) s += row[i] * g[i];
            if (!is_integer(s)) ok = false;
        }
        if (ok) keep.push_back(g);
    }
    return group_from_elements(keep, n);
}

inline bool preserves(const PhaseVector& g, const Polynomial& w)
{
    for (const auto& [m, c] : w.terms()) {
        Rational s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += g[i] * m[i];
        if (!is_integer(s)) return false;
    }
    return true;
}

inline bool is_admissible(const DiagonalGroup& g, const Polynomial& w)
{
    for (const auto& gen : g.generators())
        if (!preserves(gen, w))
            throw NotASymmetryGroup("generator " + gen.to_string() + " does not preserve W");
    return g.contains(exponential_grading_element(weight_system(w)));
}

struct SectorData {
    PhaseVector gamma;
    Rational age;
    Rational iota;
    std::vector<int> fixed_indices;
    int n_gamma = 0;
};

inline SectorData sector_data(const PhaseVector& gamma, const WeightSystem& q)
{
    SectorData s;
    s.gamma = gamma;
    s.age = gamma.age();
    s.iota = s.age - q.sum();
    s.fixed_indices = gamma.fixed_indices();
    s.n_gamma = static_cast<int>(s.fixed_indices.size());
    return s;
}

inline DiagonalGroup special_linear_part(const DiagonalGroup& g)
{
    std::vector<PhaseVector> keep;
    for (const auto& e : g.elements())
        if (is_special_linear(e)) keep.push_back(e);
    return group_from_elements(keep, g.nvars());
}

inline DiagonalGroup minimal_admissible_group(const Polynomial& w)
{
    return DiagonalGroup(w.nvars(), {exponential_grading_element(weight_system(w))});
}

// Dual group inside G_{W^T}: phi pairs integrally with every element of G
// through phi^T E theta, with E ordered so W^T's variable i is row i.
inline DiagonalGroup mirror_group(const DiagonalGroup& g, const Polynomial& w)
{
    QMatrix e = invertible_exponent_matrix(w);
    const std::size_t n = w.nvars();
    for (const auto& gen : g.generators()) {
        auto v = multiply(e, gen.phases());
        for (const auto& x : v)
            if (!is_integer(x)) throw NotASubgroup("generator " + gen.to_string() + " is not in G_W");
    }
    DiagonalGroup dual_max = maximal_group(transpose(w));
    std::vector<PhaseVector> keep;
    for (const auto& phi : dual_max.elements()) {
        bool ok = true;
        for (const auto& gen : g.generators()) {
            auto v = multiply(e, gen.phases());
            Rational s = 0;
            for (std::size_t i = 0; i < n; ++i) s += phi[i] * v[i];
            if (!is_integer(s)) {
                ok = false;
                break;
            }
        }
        if (ok) keep.push_back(phi);
    }
    return group_from_elements(keep, n);
}

}  // namespace lgvw

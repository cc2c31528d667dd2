#pragma once

#include "lgvw/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace lgvw {

using Monomial = std::vector<int>;

inline Monomial padded(const Monomial& m, std::size_t n)
{
    Monomial out = m;
    out.resize(std::max(n, m.size()), 0);
    return out;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline bool mono_divides(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > (i < b.size() ? b[i] : 0)) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a)
{
    Monomial out = padded(b, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= a[i];
    return out;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b)
{
    Monomial out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::max(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return out;
}

inline int mono_degree(const Monomial& m)
{
    int d = 0;
    for (int e : m) d += e;
    return d;
}

inline Rational weighted_degree(const Monomial& m, const std::vector<Rational>& q)
{
    Rational w = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) w += q.at(i) * m[i];
    return w;
}

// Sparse polynomial over Q. Operands with different variable counts are
// padded with trailing variables, so constants mix freely with anything.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(long c) : Polynomial(Rational(c)) {}
    Polynomial(const Rational& c, std::size_t nvars = 0) : nvars_(nvars)
    {
        if (!lgvw::is_zero(c)) terms_[Monomial(nvars, 0)] = c;
    }

    static Polynomial zero(std::size_t nvars)
    {
        Polynomial p;
        p.nvars_ = nvars;
        return p;
    }

    static Polynomial monomial(const Monomial& m, const Rational& c = 1)
    {
        Polynomial p = zero(m.size());
        if (!lgvw::is_zero(c)) p.terms_[m] = c;
        return p;
    }

    static Polynomial variable(std::size_t i, std::size_t nvars)
    {
        Monomial m(nvars, 0);
        m.at(i) = 1;
        return monomial(m);
    }

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(padded(m, nvars_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (lgvw::is_zero(c)) return;
        widen(m.size());
        Monomial key = padded(m, nvars_);
        auto [it, fresh] = terms_.emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (lgvw::is_zero(it->second)) terms_.erase(it);
        }
    }

    // Raises the ambient variable count; existing monomials are padded.
    void widen(std::size_t n)
    {
        if (n <= nvars_) return;
        Terms t;
        for (auto& [m, c] : terms_) t.emplace(padded(m, n), c);
        terms_ = std::move(t);
        nvars_ = n;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        widen(o.nvars_);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        widen(o.nvars_);
        return *this;
    }
    Polynomial& operator*=(const Rational& s)
    {
        if (lgvw::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out = zero(std::max(a.nvars_, b.nvars_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        std::size_t n = std::max(a.nvars_, b.nvars_);
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (padded(ia->first, n) != padded(ib->first, n) || ia->second != ib->second)
                return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const
    {
        Polynomial out(Rational(1), nvars_);
        for (unsigned i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    Polynomial derivative(std::size_t i) const
    {
        Polynomial out = zero(nvars_);
        for (const auto& [m, c] : terms_) {
            if (i >= m.size() || m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            out.add_term(d, c * m[i]);
        }
        return out;
    }

    // Sets every variable outside `keep` to zero and renumbers the rest
    // consecutively in the order given.
    Polynomial restrict_to(const std::vector<int>& keep) const
    {
        Polynomial out = zero(keep.size());
        for (const auto& [m, c] : terms_) {
            int total = 0;
            for (int e : m) total += e;
            Monomial r(keep.size(), 0);
            int used = 0;
            for (std::size_t j = 0; j < keep.size(); ++j) {
                r[j] = m[keep[j]];
                used += r[j];
            }
            if (used == total) out.add_term(r, c);
        }
        return out;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

inline std::string variable_name(std::size_t i, const std::vector<std::string>& names)
{
    if (i < names.size()) return names[i];
    return "x" + std::to_string(i + 1);
}

// Terms are printed by descending total degree, then descending lex, so the
// output is canonical and re-parses to the same polynomial.
inline std::string Polynomial::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        int da = mono_degree(a.first), db = mono_degree(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : order) {
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool constant = mono_degree(m) == 0;
        bool unit = mag == 1;
        if (!unit || constant) {
            os << mag.get_str();
            if (!constant) os << "*";
        }
        bool lead = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!lead) os << "*";
            lead = false;
            os << variable_name(i, names);
            if (m[i] != 1) os << "^" << m[i];
        }
    }
    return os.str();
}

// Determinant of a square matrix of polynomials by cofactor expansion along
// the sparsest row; intended for the small Hessians used here.
inline Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& a)
{
    std::size_t n = a.size();
    if (n == 0) return Polynomial(Rational(1));
    if (n == 1) return a[0][0];
    std::size_t best = 0, best_nz = n + 1;
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t nz = 0;
        for (const auto& e : a[r]) nz += !e.is_zero();
        if (nz < best_nz) {
            best_nz = nz;
            best = r;
        }
    }
    Polynomial det;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[best][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == best) continue;
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        Polynomial term = a[best][c] * polynomial_determinant(minor);
        if ((best + c) % 2 == 1) term = -term;
        det += term;
    }
    return det;
}

}  // namespace lgvw

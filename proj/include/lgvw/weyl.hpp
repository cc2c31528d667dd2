#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/polynomial.hpp"
#include "lgvw/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lgvw {

// Coefficient helpers so the algebra works over Rational and over
// polynomial coefficient rings alike.
inline bool coeff_is_zero(const Rational& c) { return lgvw::is_zero(c); }
inline bool coeff_is_zero(const Polynomial& c) { return c.is_zero(); }

inline std::string coeff_to_string(const Rational& c) { return c.get_str(); }
inline std::string coeff_to_string(const Polynomial& c, const std::vector<std::string>& names = {})
{
    return "(" + c.to_string(names) + ")";
}

// Variables t_m^a indexed by id = m * rank + a.
struct WeylSpace {
    std::size_t rank = 0;
    std::vector<bool> odd;
    std::vector<std::string> labels;

    int id(int level, int a) const { return level * static_cast<int>(rank) + a; }
    int level(int id) const { return id / static_cast<int>(rank); }
    int index(int id) const { return id % static_cast<int>(rank); }
    bool is_odd(int id) const { return odd[index(id)]; }

    std::string label(int id) const
    {
        int a = index(id);
        return "[" + std::to_string(level(id)) + "," + (labels.empty() ? std::to_string(a) : labels[a]) + "]";
    }
    friend bool operator==(const WeylSpace&, const WeylSpace&) = default;
};

// hbar^p * t... * d... * (hbar d/dhbar)^e, normal ordered with sorted ids.
struct WeylMonomial {
    int hbar = 0;
    int ehbar = 0;
    std::vector<int> creators;
    std::vector<int> annihilators;

    auto operator<=>(const WeylMonomial&) const = default;
    bool operator==(const WeylMonomial&) const = default;

    int max_level(const WeylSpace& sp) const
    {
        int m = -1;
        for (int v : creators) m = std::max(m, sp.level(v));
        for (int v : annihilators) m = std::max(m, sp.level(v));
        return m;
    }
    int odd_count(const WeylSpace& sp) const
    {
        int c = 0;
        for (int v : creators) c += sp.is_odd(v);
        for (int v : annihilators) c += sp.is_odd(v);
        return c;
    }
};

namespace detail {

struct WeylSymbol {
    bool derivative;
    int id;
};

// Sorts ids, returning the sign from odd transpositions, or 0 when an odd
// id repeats.
inline int sort_with_sign(std::vector<int>& ids, const WeylSpace& sp)
{
    int sign = 1;
    for (std::size_t i = 1; i < ids.size(); ++i)
        for (std::size_t j = i; j > 0 && ids[j - 1] >= ids[j]; --j) {
            if (ids[j - 1] == ids[j]) {
                if (sp.is_odd(ids[j])) return 0;
                break;
            }
            if (sp.is_odd(ids[j - 1]) && sp.is_odd(ids[j])) sign = -sign;
            std::swap(ids[j - 1], ids[j]);
        }
    return sign;
}

// Normal ordering of a word: d_i x_j = delta_ij + (-1)^{|i||j|} x_j d_i.
inline void normal_order(std::vector<WeylSymbol> word, int sign, const WeylSpace& sp,
                         std::vector<std::pair<int, std::vector<WeylSymbol>>>& out)
{
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (!word[i].derivative || word[i + 1].derivative) continue;
        const int a = word[i].id, b = word[i + 1].id;
        std::vector<WeylSymbol> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        normal_order(swapped, (sp.is_odd(a) && sp.is_odd(b)) ? -sign : sign, sp, out);
        if (a == b) {
            std::vector<WeylSymbol> contracted;
            contracted.reserve(word.size() - 2);
            for (std::size_t k = 0; k < word.size(); ++k)
                if (k != i && k != i + 1) contracted.push_back(word[k]);
            normal_order(contracted, sign, sp, out);
        }
        return;
    }
    out.emplace_back(sign, std::move(word));
}

inline Integer binomial(long n, long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace detail

template <typename Coeff>
class DiffOperator {
public:
    using Terms = std::map<WeylMonomial, Coeff>;

    DiffOperator() = default;
    explicit DiffOperator(WeylSpace sp, int truncation = -1) : space_(std::move(sp)), truncation_(truncation) {}

    const WeylSpace& space() const { return space_; }
    int truncation() const { return truncation_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const WeylMonomial& m, const Coeff& c)
    {
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (coeff_is_zero(it->second)) terms_.erase(it);
    }

    // Adds c * hbar^p * (product of creators in the given order) *
    // (product of derivatives in the given order).
    void add_word(const Coeff& c, int hbar, std::vector<int> creators, std::vector<int> annihilators, int ehbar = 0)
    {
        int s1 = detail::sort_with_sign(creators, space_);
        int s2 = detail::sort_with_sign(annihilators, space_);
        if (s1 * s2 == 0) return;
        add(WeylMonomial{hbar, ehbar, std::move(creators), std::move(annihilators)}, c * Rational(s1 * s2));
    }

    void add_constant(const Coeff& c) { add(WeylMonomial{}, c); }

    Coeff constant_term() const
    {
        auto it = terms_.find(WeylMonomial{});
        return it == terms_.end() ? Coeff(Rational(0)) : it->second;
    }

    DiffOperator& operator+=(const DiffOperator& o)
    {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    DiffOperator& operator-=(const DiffOperator& o)
    {
        for (const auto& [m, c] : o.terms_) add(m, c * Rational(-1));
        return *this;
    }
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
    friend DiffOperator operator*(const Rational& s, const DiffOperator& a) { return a.scaled(Coeff(s)); }

    DiffOperator scaled(const Coeff& s) const
    {
        DiffOperator out(space_, truncation_);
        for (const auto& [m, c] : terms_) out.add(m, c * s);
        return out;
    }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.terms_ == b.terms_; }

    // Product of two normal-ordered monomials.
    static void multiply_into(DiffOperator& out, const WeylMonomial& a, const Coeff& ca, const WeylMonomial& b,
                              const Coeff& cb)
    {
        const WeylSpace& sp = out.space_;
        // (hbar d/dhbar)^e hbar^p = hbar^p (hbar d/dhbar + p)^e
        std::vector<std::pair<int, Integer>> euler{{0, Integer(1)}};
        if (a.ehbar > 0) {
            euler.clear();
            for (int j = a.ehbar; j >= 0; --j) {
                // C(e, j) p^{e-j} E^j
                Integer c = detail::binomial(a.ehbar, j);
                Integer p = 1;
                for (int r = 0; r < a.ehbar - j; ++r) p *= b.hbar;
                if (c * p != 0) euler.emplace_back(j, c * p);
            }
        }
        std::vector<detail::WeylSymbol> word;
        for (int v : a.annihilators) word.push_back({true, v});
        for (int v : b.creators) word.push_back({false, v});
        std::vector<std::pair<int, std::vector<detail::WeylSymbol>>> ordered;
        detail::normal_order(word, 1, sp, ordered);
        for (const auto& [sign, w] : ordered) {
            std::vector<int> cre = a.creators, ann;
            for (const auto& s : w) (s.derivative ? ann : cre).push_back(s.id);
            ann.insert(ann.end(), b.annihilators.begin(), b.annihilators.end());
            int s1 = detail::sort_with_sign(cre, sp);
            int s2 = detail::sort_with_sign(ann, sp);
            if (s1 * s2 == 0) continue;
            for (const auto& [e, c] : euler) {
                WeylMonomial m{a.hbar + b.hbar, e + b.ehbar, cre, ann};
                out.add(m, ca * cb * Rational(Integer(sign * s1 * s2) * c));
            }
        }
    }

    friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b)
    {
        DiffOperator out(a.space_, std::max(a.truncation_, b.truncation_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) multiply_into(out, ma, ca, mb, cb);
        return out;
    }

    // Supercommutator; monomial pairs with nothing to contract commute up
    // to the sign and are skipped.
    friend DiffOperator commutator(const DiffOperator& a, const DiffOperator& b)
    {
        DiffOperator out(a.space_, std::max(a.truncation_, b.truncation_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                if (!interacts(ma, mb) && !interacts(mb, ma)) continue;
                multiply_into(out, ma, ca, mb, cb);
                int pa = ma.odd_count(a.space_) % 2, pb = mb.odd_count(a.space_) % 2;
                DiffOperator tmp(a.space_);
                multiply_into(tmp, mb, cb, ma, ca);
                for (const auto& [m, c] : tmp.terms_) out.add(m, c * Rational(pa && pb ? 1 : -1));
            }
        return out;
    }

    // Drops every term touching a level above `level`.
    DiffOperator restricted(int level) const
    {
        DiffOperator out(space_, level);
        for (const auto& [m, c] : terms_)
            if (m.max_level(space_) <= level) out.add(m, c);
        return out;
    }

    // Substitutes t_{level}^{a} -> t_{level}^{a} + shift in the creators.
    DiffOperator shifted(int level, int a, const Rational& shift) const
    {
        const int v = space_.id(level, a);
        DiffOperator out(space_, truncation_);
        for (const auto& [m, c] : terms_) {
            long k = std::count(m.creators.begin(), m.creators.end(), v);
            if (k == 0) {
                out.add(m, c);
                continue;
            }
            std::vector<int> rest;
            for (int x : m.creators)
                if (x != v) rest.push_back(x);
            for (long j = 0; j <= k; ++j) {
                WeylMonomial n = m;
                n.creators = rest;
                n.creators.insert(n.creators.end(), j, v);
                std::sort(n.creators.begin(), n.creators.end());
                Rational f = Rational(detail::binomial(k, j)) * rational_pow(shift, static_cast<unsigned>(k - j));
                out.add(n, c * f);
            }
        }
        return out;
    }

    template <typename... NameArgs>
    std::string dump(NameArgs&&... names) const
    {
        std::ostringstream os;
        for (const auto& [m, c] : terms_) {
            os << coeff_to_string(c, std::forward<NameArgs>(names)...);
            if (m.hbar != 0) os << " * hbar^" << m.hbar;
            for (int v : m.creators) os << " * t" << space_.label(v);
            for (int v : m.annihilators) os << " * d" << space_.label(v);
            for (int e = 0; e < m.ehbar; ++e) os << " * hdh";
            os << "\n";
        }
        return os.str();
    }

private:
    static bool interacts(const WeylMonomial& a, const WeylMonomial& b)
    {
        if (a.ehbar > 0 && b.hbar != 0) return true;
        for (int v : a.annihilators)
            if (std::binary_search(b.creators.begin(), b.creators.end(), v)) return true;
        return false;
    }

    WeylSpace space_;
    int truncation_ = -1;
    Terms terms_;
};

using QOperator = DiffOperator<Rational>;

}  // namespace lgvw

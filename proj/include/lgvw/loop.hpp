#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/linalg.hpp"
#include "lgvw/virasoro.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lgvw {

// Finite Laurent vector sum_s v_s z^s over the state-space basis.
struct LoopVector {
    std::size_t rank = 0;
    std::map<int, std::vector<Rational>> coeffs;

    explicit LoopVector(std::size_t n = 0) : rank(n) {}

    static LoopVector basis(std::size_t n, std::size_t a, int power, const Rational& c = 1)
    {
        LoopVector v(n);
        v.add(power, a, c);
        return v;
    }

    void add(int power, std::size_t a, const Rational& c)
    {
        if (lgvw::is_zero(c)) return;
        auto it = coeffs.try_emplace(power, std::vector<Rational>(rank, Rational(0))).first;
        it->second[a] += c;
    }

    void add(int power, const std::vector<Rational>& v, const Rational& scale = 1)
    {
        for (std::size_t a = 0; a < rank; ++a) add(power, a, v[a] * scale);
    }

    Rational at(int power, std::size_t a) const
    {
        auto it = coeffs.find(power);
        return it == coeffs.end() ? Rational(0) : it->second[a];
    }

    bool is_zero() const
    {
        for (const auto& [p, v] : coeffs)
            for (const auto& c : v)
                if (!lgvw::is_zero(c)) return false;
        return true;
    }
};

namespace detail {

inline Rational falling(const Rational& s, int j)
{
    Rational r = 1;
    for (int i = 0; i < j; ++i) r *= s - i;
    return r;
}

inline bool matrix_is_zero(const QMatrix& m)
{
    for (const auto& row : m)
        for (const auto& c : row)
            if (!is_zero(c)) return false;
    return true;
}

inline QMatrix matrix_add(QMatrix a, const QMatrix& b, const Rational& s = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += s * b[i][j];
    return a;
}

}  // namespace detail

// sum M_{s,e} z^s d_z^e with constant matrix coefficients. Keys store 2s so
// the half powers of z^{-1/2} can appear in intermediate products.
class LoopOperator {
public:
    using Key = std::pair<int, int>;  // (2 * power of z, order of d_z)

    explicit LoopOperator(std::size_t n = 0) : rank_(n) {}

    static LoopOperator identity(std::size_t n) { return z_power_twice(n, 0); }

    // z^{k/2} times the identity.
    static LoopOperator z_power_twice(std::size_t n, int twice)
    {
        LoopOperator o(n);
        o.add(twice, 0, identity_matrix(n));
        return o;
    }

    static LoopOperator z_power(std::size_t n, int power) { return z_power_twice(n, 2 * power); }

    static LoopOperator d_z(std::size_t n)
    {
        LoopOperator o(n);
        o.add(0, 1, identity_matrix(n));
        return o;
    }

    static LoopOperator constant(const QMatrix& m, int power = 0)
    {
        LoopOperator o(m.size());
        o.add(2 * power, 0, m);
        return o;
    }

    std::size_t rank() const { return rank_; }
    const std::map<Key, QMatrix>& blocks() const { return blocks_; }
    bool is_zero() const { return blocks_.empty(); }

    void add(int twice_power, int dz_order, const QMatrix& m, const Rational& s = 1)
    {
        if (detail::matrix_is_zero(m) || is_zero_scalar(s)) return;
        Key k{twice_power, dz_order};
        auto it = blocks_.find(k);
        if (it == blocks_.end()) {
            QMatrix scaled = zero_matrix(rank_, rank_);
            blocks_.emplace(k, detail::matrix_add(scaled, m, s));
            return;
        }
        it->second = detail::matrix_add(it->second, m, s);
        if (detail::matrix_is_zero(it->second)) blocks_.erase(it);
    }

    bool has_half_powers() const
    {
        for (const auto& [k, m] : blocks_)
            if (k.first % 2 != 0) return true;
        return false;
    }

    LoopOperator& operator+=(const LoopOperator& o)
    {
        for (const auto& [k, m] : o.blocks_) add(k.first, k.second, m);
        return *this;
    }
    LoopOperator& operator-=(const LoopOperator& o)
    {
        for (const auto& [k, m] : o.blocks_) add(k.first, k.second, m, -1);
        return *this;
    }
    friend LoopOperator operator+(LoopOperator a, const LoopOperator& b) { return a += b; }
    friend LoopOperator operator-(LoopOperator a, const LoopOperator& b) { return a -= b; }
    friend LoopOperator operator*(const Rational& s, const LoopOperator& a)
    {
        LoopOperator out(a.rank_);
        for (const auto& [k, m] : a.blocks_) out.add(k.first, k.second, m, s);
        return out;
    }

    // (A z^s d^e)(B z^t d^f) = AB sum_j C(e,j) t^(j) z^{s+t-j} d^{e-j+f}
    friend LoopOperator operator*(const LoopOperator& a, const LoopOperator& b)
    {
        LoopOperator out(a.rank_);
        for (const auto& [ka, ma] : a.blocks_)
            for (const auto& [kb, mb] : b.blocks_) {
                const QMatrix prod = multiply(ma, mb);
                if (detail::matrix_is_zero(prod)) continue;
                const Rational t = make_rational(kb.first, 2);
                for (int j = 0; j <= ka.second; ++j) {
                    Rational c = Rational(detail::binomial(ka.second, j)) * detail::falling(t, j);
                    if (lgvw::is_zero(c)) continue;
                    out.add(ka.first + kb.first - 2 * j, ka.second - j + kb.second, prod, c);
                }
            }
        return out;
    }

    friend LoopOperator commutator(const LoopOperator& a, const LoopOperator& b) { return a * b - b * a; }
    friend bool operator==(const LoopOperator& a, const LoopOperator& b) { return a.blocks_ == b.blocks_; }

    LoopVector apply(const LoopVector& f) const
    {
        if (has_half_powers()) throw HalfPowerResidue("operator with half-integer powers of z applied to a vector");
        LoopVector out(rank_);
        for (const auto& [k, m] : blocks_)
            for (const auto& [s, v] : f.coeffs) {
                Rational c = detail::falling(Rational(s), k.second);
                if (lgvw::is_zero(c)) continue;
                out.add(s + k.first / 2 - k.second, multiply(m, v), c);
            }
        return out;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        for (const auto& [k, m] : blocks_) {
            os << "z^" << make_rational(k.first, 2).get_str() << " dz^" << k.second << " [";
            for (std::size_t i = 0; i < m.size(); ++i) {
                os << (i ? "; " : "");
                for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? " " : "") << m[i][j].get_str();
            }
            os << "]\n";
        }
        return os.str();
    }

private:
    static bool is_zero_scalar(const Rational& s) { return lgvw::is_zero(s); }

    std::size_t rank_;
    std::map<Key, QMatrix> blocks_;
};

inline QMatrix theta_matrix(const GradedSpace& g)
{
    QMatrix t = zero_matrix(g.rank(), g.rank());
    for (std::size_t a = 0; a < g.rank(); ++a) t[a][a] = g.mu_plus[a];
    return t;
}

inline LoopOperator hodge_operator(const GradedSpace& g) { return LoopOperator::constant(theta_matrix(g)); }

// Res_{z=0} (f(-z), g(z)) with the pairing eta.
inline Rational symplectic_form(const LoopVector& f, const LoopVector& g, const QMatrix& eta)
{
    Rational total = 0;
    for (const auto& [s, u] : f.coeffs) {
        auto it = g.coeffs.find(-1 - s);
        if (it == g.coeffs.end()) continue;
        Rational pair = 0;
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (is_zero(u[a])) continue;
            for (std::size_t b = 0; b < u.size(); ++b) pair += u[a] * eta[a][b] * it->second[b];
        }
        total += (s % 2 == 0 ? 1 : -1) * pair;
    }
    return total;
}

// Checks Omega(Af, g) + Omega(f, Ag) = 0 on basis vectors phi_a z^s with
// |s| <= window.
inline bool is_infinitesimal_symplectic(const LoopOperator& a, const QMatrix& eta, int window = 6)
{
    const std::size_t n = a.rank();
    std::vector<LoopVector> vs, images;
    for (int s = -window; s <= window; ++s)
        for (std::size_t i = 0; i < n; ++i) {
            vs.push_back(LoopVector::basis(n, i, s));
            images.push_back(a.apply(vs.back()));
        }
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (symplectic_form(images[i], vs[j], eta) + symplectic_form(vs[i], images[j], eta) != 0) return false;
    return true;
}

// D = z^2 d_z + z (theta + 1).
inline LoopOperator auxiliary_D(const GradedSpace& g)
{
    const std::size_t n = g.rank();
    LoopOperator d(n);
    d.add(4, 1, identity_matrix(n));
    d.add(2, 0, detail::matrix_add(theta_matrix(g), identity_matrix(n)));
    return d;
}

// z^{-1/2} D^{k+1} z^{-1/2}.
inline LoopOperator script_L(const GradedSpace& g, int k)
{
    if (k < -1) throw PreconditionNotMet("k must be at least -1");
    const std::size_t n = g.rank();
    const LoopOperator d = auxiliary_D(g);
    LoopOperator op = LoopOperator::z_power_twice(n, -1);
    for (int i = 0; i <= k; ++i) op = op * d;
    op = op * LoopOperator::z_power_twice(n, -1);
    if (op.has_half_powers()) throw HalfPowerResidue("script L_" + std::to_string(k) + " kept a half power of z");
    return op;
}

}  // namespace lgvw

#pragma once

#include "lgvw/errors.hpp"
#include "lgvw/polynomial.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace lgvw {

namespace detail {

// Recursive-descent reader for
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := [coeff ['*']] factor (['*'] factor)* | coeff
//   factor := var ['^' posint]
//   coeff  := int ['/' posint]
//   var    := 'x' posint | 'x'          (bare x means x1)
// Juxtaposition such as x1^3x2 is read as a product.
class PolyReader {
public:
    explicit PolyReader(std::string_view s) : s_(s) {}

    Polynomial read()
    {
        Polynomial out;
        skip();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        Rational sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        add(out, sign);
        for (;;) {
            skip();
            if (at_end()) break;
            char c = peek();
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else throw ParseError(std::string("unexpected token '") + c + "'", pos_);
            ++pos_;
            add(out, sign);
        }
        out.widen(max_var_);
        return out;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;

    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    Integer read_uint()
    {
        skip();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", start);
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    void add(Polynomial& out, const Rational& sign)
    {
        skip();
        if (at_end()) throw ParseError("expected term", pos_);
        Rational coeff = sign;
        Monomial mono;
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer num = read_uint();
            Integer den = 1;
            skip();
            if (!at_end() && peek() == '/') {
                ++pos_;
                std::size_t at = pos_;
                den = read_uint();
                if (den == 0) throw ParseError("zero denominator", at);
            }
            coeff *= make_rational(num, den);
            skip();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip();
                if (at_end() || peek() != 'x') throw ParseError("expected variable after '*'", pos_);
            }
        }
        for (;;) {
            skip();
            if (at_end() || peek() != 'x') break;
            read_factor(mono);
            have_factor = true;
            skip();
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip();
                if (at_end() || peek() != 'x') throw ParseError("expected variable after '*'", pos_);
            }
        }
        skip();
        if (!at_end() && peek() != '+' && peek() != '-')
            throw ParseError(std::string("unknown token '") + peek() + "'", pos_);
        if (!have_factor && mono.empty()) mono = Monomial{};
        out.add_term(mono, coeff);
    }

    void read_factor(Monomial& mono)
    {
        ++pos_;  // 'x'
        std::size_t index = 1;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t at = pos_;
            Integer idx = read_uint();
            if (idx < 1 || idx > 64) throw ParseError("variable index out of range", at);
            index = idx.get_ui();
        }
        int exponent = 1;
        skip();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip();
            if (!at_end() && peek() == '-') throw ParseError("negative exponent", pos_);
            std::size_t at = pos_;
            Integer e = read_uint();
            if (e < 1 || e > 1000) throw ParseError("exponent out of range", at);
            exponent = static_cast<int>(e.get_si());
        }
        if (mono.size() < index) mono.resize(index, 0);
        mono[index - 1] += exponent;
        max_var_ = std::max(max_var_, index);
    }
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text)
{
    return detail::PolyReader(text).read();
}

}  // namespace lgvw

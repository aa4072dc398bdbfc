#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "orbistack/errors.hpp"
#include "orbistack/matrix.hpp"
#include "orbistack/quadratic.hpp"

namespace orbistack {

/// Abstract syntax for the quadratic-number expression grammar:
/// integer literals, sqrt(k) with a positive integer literal k, unary
/// minus, + - * /, parentheses. Offsets are byte positions into the
/// source text, kept for error reporting.
struct Expr {
    enum class Kind { Integer, Sqrt, Neg, Add, Sub, Mul, Div };
    Kind kind;
    Int value;  // Integer and Sqrt payload
    std::vector<Expr> kids;
    std::size_t offset = 0;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : s_(text) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        Expr lhs = parse_term();
        while (true) {
            skip_ws();
            std::size_t at = pos_;
            if (eat('+')) {
                Expr rhs = parse_term();
                lhs = Expr{Expr::Kind::Add, 0, {std::move(lhs), std::move(rhs)}, at};
            } else if (eat('-')) {
                Expr rhs = parse_term();
                lhs = Expr{Expr::Kind::Sub, 0, {std::move(lhs), std::move(rhs)}, at};
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (true) {
            skip_ws();
            std::size_t at = pos_;
            if (eat('*')) {
                Expr rhs = parse_factor();
                lhs = Expr{Expr::Kind::Mul, 0, {std::move(lhs), std::move(rhs)}, at};
            } else if (eat('/')) {
                Expr rhs = parse_factor();
                lhs = Expr{Expr::Kind::Div, 0, {std::move(lhs), std::move(rhs)}, at};
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor() {
        skip_ws();
        std::size_t at = pos_;
        if (eat('-')) {
            Expr kid = parse_factor();
            return Expr{Expr::Kind::Neg, 0, {std::move(kid)}, at};
        }
        return parse_primary();
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        std::size_t at = pos_;
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr{Expr::Kind::Integer, parse_int(), {}, at};
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return inner;
        }
        if (s_.compare(pos_, 4, "sqrt") == 0) {
            pos_ += 4;
            if (!eat('(')) throw SyntaxError("expected '(' after sqrt", pos_);
            skip_ws();
            std::size_t arg_at = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw SyntaxError("sqrt argument must be a positive integer literal", arg_at);
            Int k = parse_int();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            if (k <= 0) throw SyntaxError("sqrt argument must be positive", arg_at);
            return Expr{Expr::Kind::Sqrt, std::move(k), {}, at};
        }
        throw SyntaxError("expected a number, sqrt(...) or parenthesis", pos_);
    }

    Int parse_int() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        // base fixed to 10: the default would auto-detect octal on a
        // leading zero and reject digits 8 and 9
        return Int(std::string(s_.substr(start, pos_ - start)), 10);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Exact evaluation. MixedFieldsError surfaces when two distinct
/// radicands survive normalization (e.g. sqrt(2)+sqrt(3)); division by
/// zero is a DomainError.
inline QuadraticNumber eval_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Integer: return QuadraticNumber::rational(e.value);
        case Expr::Kind::Sqrt: return QuadraticNumber::sqrt_of(e.value);
        case Expr::Kind::Neg: return -eval_expr(e.kids[0]);
        case Expr::Kind::Add: return eval_expr(e.kids[0]) + eval_expr(e.kids[1]);
        case Expr::Kind::Sub: return eval_expr(e.kids[0]) - eval_expr(e.kids[1]);
        case Expr::Kind::Mul: return eval_expr(e.kids[0]) * eval_expr(e.kids[1]);
        case Expr::Kind::Div: {
            QuadraticNumber den = eval_expr(e.kids[1]);
            if (den.is_zero()) throw DomainError("division by zero in expression");
            return eval_expr(e.kids[0]) / den;
        }
    }
    throw InternalError("unreachable expression kind");
}

inline QuadraticNumber parse_quadratic(std::string_view text) { return eval_expr(parse_expr(text)); }

/// Canonical rendering, parseable by parse_quadratic; printing and
/// re-parsing is the identity on canonical values.
inline std::string print_quadratic(const QuadraticNumber& x) {
    if (x.is_rational()) {
        std::string s = x.a().get_str();
        if (x.c() != 1) s += "/" + x.c().get_str();
        return s;
    }
    std::string root = "sqrt(" + x.d().get_str() + ")";
    std::string term;
    if (x.b() == 1)
        term = root;
    else if (x.b() == -1)
        term = "-" + root;
    else
        term = x.b().get_str() + "*" + root;
    std::string inner;
    if (x.a() == 0)
        inner = term;
    else
        inner = x.a().get_str() + (term[0] == '-' ? "" : "+") + term;
    if (x.c() == 1) return inner;
    if (x.a() == 0) return inner + "/" + x.c().get_str();
    return "(" + inner + ")/" + x.c().get_str();
}

/// Square integer-matrix literal, [[2,1],[1,1]] style, whitespace
/// insensitive, entries may be negative.
inline IntegerMatrix parse_matrix(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw SyntaxError(std::string("expected '") + c + "' in matrix literal", pos);
        ++pos;
    };
    auto parse_int = [&]() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw SyntaxError("expected an integer entry", start);
        return Int(std::string(text.substr(start, pos - start)), 10);
    };

    expect('[');
    std::vector<std::vector<Int>> rows;
    while (true) {
        expect('[');
        std::vector<Int> row;
        row.push_back(parse_int());
        skip_ws();
        while (pos < text.size() && text[pos] == ',') {
            ++pos;
            row.push_back(parse_int());
            skip_ws();
        }
        expect(']');
        rows.push_back(std::move(row));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect(']');
    skip_ws();
    if (pos != text.size()) throw SyntaxError("unexpected trailing input after matrix", pos);
    std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw SyntaxError("matrix literal must be square", 0);
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace orbistack

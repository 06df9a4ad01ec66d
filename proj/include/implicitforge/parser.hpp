#ifndef IMPLICITFORGE_PARSER_HPP
#define IMPLICITFORGE_PARSER_HPP

// Surface syntax of the expression DSL.
//
//   expr    := term  (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' powexp)?
//   powexp  := '-' powexp | power
//   primary := NUMBER | VARIABLE | PARAM | FUNC '(' expr ')' | '(' expr ')'
//
// '^' is right-associative and binds tighter than unary minus, so -x^2 is -(x^2).
// A '-' directly followed by a numeric literal (and not by '^' after it) is folded
// into a negative constant; this is what lets printed negative constants round-trip.

#include <array>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "implicitforge/error.hpp"
#include "implicitforge/expr.hpp"

namespace implicitforge {

namespace detail {

enum class TokenKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    TokenKind kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({TokenKind::end, pos_, {}});
                return out;
            }
            char c = src_[pos_];
            if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
                out.push_back(number());
            } else if (is_alpha(c)) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_'))
                    ++pos_;
                out.push_back({TokenKind::ident, start, src_.substr(start, pos_ - start)});
            } else {
                TokenKind kind;
                switch (c) {
                    case '+': kind = TokenKind::plus; break;
                    case '-': kind = TokenKind::minus; break;
                    case '*': kind = TokenKind::star; break;
                    case '/': kind = TokenKind::slash; break;
                    case '^': kind = TokenKind::caret; break;
                    case '(': kind = TokenKind::lparen; break;
                    case ')': kind = TokenKind::rparen; break;
                    default:
                        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
                }
                out.push_back({kind, pos_, src_.substr(pos_, 1)});
                ++pos_;
            }
        }
    }

private:
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

    void skip_space() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }

    Token number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && is_digit(src_[pos_])) {
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            } else {
                pos_ = mark;  // "2e" is the literal 2 followed by an identifier
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc::result_out_of_range || !std::isfinite(value))
            throw ParseError("numeric literal out of range", start);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ParseError("malformed numeric literal", start);
        return {TokenKind::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

    Expr parse() {
        Expr e = expr();
        if (peek().kind != TokenKind::end)
            throw ParseError("unexpected token '" + std::string(peek().text) + "'", peek().offset,
                             {"operator", "')'", "end of input"});
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail_operand() const {
        const Token& t = peek();
        std::string what = t.kind == TokenKind::end ? "unexpected end of input"
                                                    : "unexpected token '" + std::string(t.text) + "'";
        throw ParseError(what, t.offset, {"number", "identifier", "'('", "'-'"});
    }

    Expr expr() {
        Expr e = term();
        while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
            BinaryOp op = next().kind == TokenKind::plus ? BinaryOp::add : BinaryOp::sub;
            e = Expr::binary(op, std::move(e), term());
        }
        return e;
    }

    Expr term() {
        Expr e = unary();
        while (peek().kind == TokenKind::star || peek().kind == TokenKind::slash) {
            BinaryOp op = next().kind == TokenKind::star ? BinaryOp::mul : BinaryOp::div;
            e = Expr::binary(op, std::move(e), unary());
        }
        return e;
    }

    // Shared by `unary` and `powexp`: a sign applied either to a literal (folded) or to
    // the next operand at the same grammar level.
    template <typename Rest>
    Expr signed_operand(Rest rest) {
        if (peek().kind != TokenKind::minus) return power();
        next();
        if (peek().kind == TokenKind::number && peek(1).kind != TokenKind::caret)
            return Expr::constant(-next().number);
        return Expr::unary(UnaryOp::neg, (this->*rest)());
    }

    Expr unary() { return signed_operand(&Parser::unary); }
    Expr powexp() { return signed_operand(&Parser::powexp); }

    Expr power() {
        Expr base = primary();
        if (peek().kind == TokenKind::caret) {
            next();
            return Expr::binary(BinaryOp::pow, std::move(base), powexp());
        }
        return base;
    }

    Expr primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::number: next(); return Expr::constant(t.number);
            case TokenKind::lparen: {
                next();
                Expr inner = expr();
                expect_rparen();
                return inner;
            }
            case TokenKind::ident: {
                next();
                if (auto v = variable_from_name(t.text)) {
                    if (peek().kind == TokenKind::lparen)
                        throw ParseError("unknown function '" + std::string(t.text) + "'", t.offset);
                    return Expr::variable(*v);
                }
                if (auto f = function_from_name(t.text)) {
                    if (peek().kind != TokenKind::lparen)
                        throw ParseError("function '" + std::string(t.text) + "' needs an argument list",
                                         peek().offset, {"'('"});
                    next();
                    Expr arg = expr();
                    expect_rparen();
                    return Expr::unary(*f, std::move(arg));
                }
                if (peek().kind == TokenKind::lparen)
                    throw ParseError("unknown function '" + std::string(t.text) + "'", t.offset);
                return Expr::parameter(std::string(t.text));
            }
            default: fail_operand();
        }
    }

    void expect_rparen() {
        if (peek().kind != TokenKind::rparen) {
            const Token& t = peek();
            std::string what = t.kind == TokenKind::end ? "unexpected end of input"
                                                        : "unexpected token '" + std::string(t.text) + "'";
            throw ParseError(what, t.offset, {"')'", "operator"});
        }
        next();
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Printing precedence levels; a subexpression is parenthesized when its level is
// below what the surrounding grammar slot accepts.
constexpr int kLevelSum = 1;
constexpr int kLevelProduct = 2;
constexpr int kLevelSigned = 3;
constexpr int kLevelPower = 4;
constexpr int kLevelAtom = 5;

inline bool is_negative_literal(const Expr& e) {
    return e.kind() == Expr::Kind::constant && std::signbit(e.value());
}

inline int print_level(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::constant: return is_negative_literal(e) ? kLevelSigned : kLevelAtom;
        case Expr::Kind::variable:
        case Expr::Kind::parameter: return kLevelAtom;
        case Expr::Kind::unary: return e.unary_op() == UnaryOp::neg ? kLevelSigned : kLevelAtom;
        case Expr::Kind::binary:
            switch (e.binary_op()) {
                case BinaryOp::add:
                case BinaryOp::sub: return kLevelSum;
                case BinaryOp::mul:
                case BinaryOp::div: return kLevelProduct;
                case BinaryOp::pow: return kLevelPower;
            }
    }
    return kLevelAtom;
}

inline void append_number(std::string& out, double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), ptr);
}

inline void print(const Expr& e, int min_level, std::string& out);

inline void print_node(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::constant: append_number(out, e.value()); return;
        case Expr::Kind::variable: out += variable_name(e.var()); return;
        case Expr::Kind::parameter: out += e.name(); return;
        case Expr::Kind::unary:
            if (e.unary_op() == UnaryOp::neg) {
                out += '-';
                Expr c = e.child();
                // "-2" would read back as a folded literal
                if (c.kind() == Expr::Kind::constant && !is_negative_literal(c)) {
                    out += '(';
                    append_number(out, c.value());
                    out += ')';
                } else {
                    print(c, kLevelSigned, out);
                }
            } else {
                out += unary_name(e.unary_op());
                out += '(';
                print(e.child(), 0, out);
                out += ')';
            }
            return;
        case Expr::Kind::binary: {
            int lhs_level = kLevelSum, rhs_level = kLevelProduct;
            switch (e.binary_op()) {
                case BinaryOp::add:
                case BinaryOp::sub: break;
                case BinaryOp::mul:
                case BinaryOp::div:
                    lhs_level = kLevelProduct;
                    rhs_level = kLevelSigned;
                    break;
                case BinaryOp::pow:
                    lhs_level = kLevelAtom;
                    rhs_level = kLevelSigned;
                    break;
            }
            print(e.lhs(), lhs_level, out);
            out += binary_symbol(e.binary_op());
            print(e.rhs(), rhs_level, out);
            return;
        }
    }
}

inline void print(const Expr& e, int min_level, std::string& out) {
    if (print_level(e) < min_level) {
        out += '(';
        print_node(e, out);
        out += ')';
    } else {
        print_node(e, out);
    }
}

}  // namespace detail

/// Parse DSL text. Throws ParseError with the byte offset of the offending token.
inline Expr parse(std::string_view source) { return detail::Parser(source).parse(); }

/// Canonical text: no whitespace, minimal parentheses, shortest round-trip literals.
inline std::string format(const Expr& e) {
    std::string out;
    detail::print(e, 0, out);
    return out;
}

}  // namespace implicitforge

#endif

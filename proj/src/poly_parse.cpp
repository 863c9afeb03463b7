// Recursive-descent parser for the canonical polynomial text format.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | name | '(' expr ')'

#include <cctype>

#include "kpalg/error.hpp"
#include "kpalg/poly.hpp"

namespace kpalg {

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const ScopePtr& scope) : text_(text), scope_(scope) {}

    Poly parse() {
        skip_ws();
        if (at_end()) fail("empty expression");
        Poly p = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    Poly expr() {
        Poly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = unary();
        for (;;) {
            skip_ws();
            if (!accept('*')) return acc;
            acc *= unary();
        }
    }

    Poly unary() {
        skip_ws();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = primary();
        skip_ws();
        if (!accept('^')) return base;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a nonnegative integer exponent after '^'");
        std::size_t start = pos_;
        std::string digits = integer();
        if (digits.size() > 5 || std::stoul(digits) > 65535) fail_at(start, "exponent too large");
        return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }

    Poly primary() {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(integer());
            skip_ws();
            if (accept('/')) {
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("expected an integer denominator after '/'");
                std::size_t start = pos_;
                mpz_class den(integer());
                if (den == 0) fail_at(start, "zero denominator in rational literal");
                Rat r(num, den);
                r.canonicalize();
                return Poly(scope_, r);
            }
            return Poly(scope_, Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            auto idx = scope_->index_of(name);
            if (!idx)
                throw SemanticError("unknown identifier '" + std::string(name) + "' at column " +
                                    std::to_string(start + 1));
            return Poly::generator(scope_, *idx);
        }
        if (accept('(')) {
            Poly inner = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string integer() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool accept(char c) {
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
        throw ParseError(msg, pos + 1);
    }

    std::string_view text_;
    const ScopePtr& scope_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const ScopePtr& scope) { return PolyParser(text, scope).parse(); }

}  // namespace kpalg

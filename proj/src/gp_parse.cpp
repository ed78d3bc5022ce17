// Recursive-descent parser for the expression language.
//
//   expr  := term { ("+" | "-") term }
//   term  := unary { "*" unary | "/" nat }
//   unary := ["-"] power
//   power := atom ["^" nat]
//   atom  := "n" | number | "sqrt" "(" nat ")" | "floor" "(" expr ")"
//          | "frac" "(" expr ")" | "(" expr ")"
//   number := nat ["/" nat]
//
// Whitespace is ignored between tokens. Constant-only subtrees are folded as
// they are built, so "sqrt(2) - 1" yields a single constant node.

#include "gpseq/errors.hpp"
#include "gpseq/gp_expr.hpp"

#include <cctype>
#include <limits>

namespace gpseq {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    GPExpr parse_all()
    {
        GPExpr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    GPExpr expr()
    {
        GPExpr acc = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc = make_add(std::move(acc), term());
            else if (accept('-'))
                acc = make_sub(std::move(acc), term());
            else
                return acc;
        }
    }

    GPExpr term()
    {
        GPExpr acc = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc = make_mul(std::move(acc), unary());
            } else if (accept('/')) {
                skip_ws();
                const std::size_t at = pos_;
                Integer d = nat();
                if (d == 0)
                    throw SyntaxError(at, "division by zero");
                acc = make_mul(GPExpr::constant(ExactReal(Rational(Integer(1), d))), std::move(acc));
            } else {
                return acc;
            }
        }
    }

    GPExpr unary()
    {
        skip_ws();
        if (accept('-')) {
            GPExpr p = power();
            if (p.is_constant())
                return GPExpr::constant(-p.value());
            return GPExpr::mul(GPExpr::constant(ExactReal(-1)), std::move(p));
        }
        return power();
    }

    GPExpr power()
    {
        GPExpr base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            Integer k = nat();
            if (k > 64)
                throw SyntaxError(at, "exponent too large");
            const auto exponent = static_cast<unsigned>(k.get_ui());
            if (base.is_constant())
                return fold_constants(GPExpr::pow(std::move(base), exponent));
            return GPExpr::pow(std::move(base), exponent);
        }
        return base;
    }

    GPExpr atom()
    {
        skip_ws();
        if (pos_ >= text_.size())
            throw SyntaxError(pos_, "unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return GPExpr::constant(ExactReal(number()));
        if (accept('(')) {
            GPExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t at = pos_;
            std::string ident;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
                ident += text_[pos_++];
            if (ident == "n")
                return GPExpr::var();
            if (ident == "sqrt") {
                expect('(');
                skip_ws();
                const std::size_t arg_at = pos_;
                Integer d = nat();
                expect(')');
                if (d < 2 || !d.fits_ulong_p() || !is_squarefree(d.get_ui()))
                    throw UnsupportedConstant(arg_at, "sqrt radicand must be squarefree and >= 2, got " + d.get_str());
                return GPExpr::constant(ExactReal::sqrt(d.get_ui()));
            }
            if (ident == "floor" || ident == "frac") {
                expect('(');
                GPExpr inner = expr();
                expect(')');
                if (inner.is_constant()) {
                    const ExactReal& v = inner.value();
                    return GPExpr::constant(ident == "floor" ? ExactReal(floor_exact(v)) : gpseq::frac(v));
                }
                return ident == "floor" ? GPExpr::floor(std::move(inner)) : GPExpr::frac(std::move(inner));
            }
            static const char* const transcendental[] = {"pi", "e", "tau", "gamma", "exp", "log", "ln", "sin", "cos", "tan"};
            for (const char* name : transcendental)
                if (ident == name)
                    throw UnsupportedConstant(at, "'" + ident + "' is not a quadratic constant");
            throw SyntaxError(at, "unknown identifier '" + ident + "'");
        }
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    Rational number()
    {
        Integer num = nat();
        const std::size_t save = pos_;
        skip_ws();
        if (accept('/')) {
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                const std::size_t at = pos_;
                Integer den = nat();
                if (den == 0)
                    throw SyntaxError(at, "zero denominator");
                Rational q(num, den);
                q.canonicalize();
                return q;
            }
        }
        pos_ = save;
        return Rational(num);
    }

    Integer nat()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            throw SyntaxError(pos_, pos_ < text_.size() ? "expected a natural number" : "unexpected end of input");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= text_.size())
            throw SyntaxError(pos_, std::string("expected '") + c + "' but input ended");
        if (!accept(c))
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }

    static GPExpr make_add(GPExpr a, GPExpr b)
    {
        if (a.is_constant() && b.is_constant())
            return GPExpr::constant(a.value() + b.value());
        return GPExpr::add(std::move(a), std::move(b));
    }

    static GPExpr make_sub(GPExpr a, GPExpr b)
    {
        if (a.is_constant() && b.is_constant())
            return GPExpr::constant(a.value() - b.value());
        return GPExpr::sub(std::move(a), std::move(b));
    }

    static GPExpr make_mul(GPExpr a, GPExpr b)
    {
        if (a.is_constant() && b.is_constant())
            return GPExpr::constant(a.value() * b.value());
        return GPExpr::mul(std::move(a), std::move(b));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

GPExpr parse(std::string_view text)
{
    return Parser(text).parse_all();
}

ExactReal parse_constant(std::string_view text)
{
    GPExpr e = parse(text);
    if (!e.is_constant())
        throw ValidationError("expected a constant expression, got '" + std::string(text) + "'");
    return e.value();
}

} // namespace gpseq

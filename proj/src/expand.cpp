#include "gpseq/errors.hpp"
#include "gpseq/gp_expr.hpp"

#include <algorithm>

namespace gpseq {

namespace {

bool is_const_value(const GPExpr& e, long v)
{
    return e.kind() == NodeKind::constant && e.value() == ExactReal(v);
}

// Constant folding only; fractional-part atoms are never merged or rewritten.
GPExpr cadd(const GPExpr& a, const GPExpr& b)
{
    if (a.kind() == NodeKind::constant && b.kind() == NodeKind::constant)
        return GPExpr::constant(a.value() + b.value());
    if (is_const_value(a, 0))
        return b;
    if (is_const_value(b, 0))
        return a;
    return GPExpr::add(a, b);
}

GPExpr csub(const GPExpr& a, const GPExpr& b)
{
    if (a.kind() == NodeKind::constant && b.kind() == NodeKind::constant)
        return GPExpr::constant(a.value() - b.value());
    if (is_const_value(b, 0))
        return a;
    if (is_const_value(a, 0))
        return GPExpr::mul(GPExpr::constant(ExactReal(-1)), b);
    return GPExpr::sub(a, b);
}

GPExpr cmul(const GPExpr& a, const GPExpr& b)
{
    if (a.kind() == NodeKind::constant && b.kind() == NodeKind::constant)
        return GPExpr::constant(a.value() * b.value());
    if (is_const_value(a, 0) || is_const_value(b, 0))
        return GPExpr::constant(ExactReal(0));
    if (is_const_value(a, 1))
        return b;
    if (is_const_value(b, 1))
        return a;
    return GPExpr::mul(a, b);
}

using Coeffs = std::vector<GPExpr>;

Coeffs zip(const Coeffs& a, const Coeffs& b, bool subtract)
{
    const std::size_t n = std::max(a.size(), b.size());
    const GPExpr zero = GPExpr::constant(ExactReal(0));
    Coeffs out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const GPExpr& x = i < a.size() ? a[i] : zero;
        const GPExpr& y = i < b.size() ? b[i] : zero;
        out.push_back(subtract ? csub(x, y) : cadd(x, y));
    }
    return out;
}

Coeffs convolve(const Coeffs& a, const Coeffs& b)
{
    Coeffs out(a.size() + b.size() - 1, GPExpr::constant(ExactReal(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = cadd(out[i + j], cmul(a[i], b[j]));
    return out;
}

Coeffs expand_rec(const GPExpr& e)
{
    switch (e.kind()) {
    case NodeKind::constant: return {e};
    case NodeKind::var: return {GPExpr::constant(ExactReal(0)), GPExpr::constant(ExactReal(1))};
    case NodeKind::add: return zip(expand_rec(e.lhs()), expand_rec(e.rhs()), false);
    case NodeKind::sub: return zip(expand_rec(e.lhs()), expand_rec(e.rhs()), true);
    case NodeKind::mul: return convolve(expand_rec(e.lhs()), expand_rec(e.rhs()));
    case NodeKind::pow: {
        Coeffs acc{GPExpr::constant(ExactReal(1))};
        if (e.exponent() == 0)
            return acc;
        const Coeffs base = expand_rec(e.lhs());
        for (unsigned k = 0; k < e.exponent(); ++k)
            acc = convolve(acc, base);
        return acc;
    }
    case NodeKind::floor: {
        // floor(g) = g - frac(g): only the constant coefficient changes.
        Coeffs inner = expand_rec(e.lhs());
        inner[0] = csub(inner[0], GPExpr::frac(e.lhs()));
        return inner;
    }
    case NodeKind::frac: return {GPExpr::frac(e.lhs())};
    }
    return {};
}

} // namespace

BoundedExpansion expand(const GPExpr& expr)
{
    return BoundedExpansion{expand_rec(expr)};
}

ExactReal eval_expansion(const BoundedExpansion& expansion, const Integer& n)
{
    if (n < 0)
        throw DomainError("eval_expansion: n must be >= 0");
    // Horner over the coefficient list.
    ExactReal acc;
    const ExactReal x(n);
    for (auto it = expansion.coeffs.rbegin(); it != expansion.coeffs.rend(); ++it) {
        acc *= x;
        acc += eval(*it, n);
    }
    return acc;
}

bool is_bounded_form(const GPExpr& expr)
{
    switch (expr.kind()) {
    case NodeKind::constant:
    case NodeKind::frac: return true;
    case NodeKind::var:
    case NodeKind::floor: return expr.is_constant();
    case NodeKind::pow: return is_bounded_form(expr.lhs());
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul: return is_bounded_form(expr.lhs()) && is_bounded_form(expr.rhs());
    }
    return false;
}

Rational coefficient_bound(const GPExpr& expr)
{
    switch (expr.kind()) {
    case NodeKind::constant: {
        const IntervalApprox iv = approx(expr.value(), 16);
        return std::max(Rational(abs(iv.lo)), Rational(abs(iv.hi)));
    }
    case NodeKind::frac: return Rational(1);
    case NodeKind::add:
    case NodeKind::sub: return coefficient_bound(expr.lhs()) + coefficient_bound(expr.rhs());
    case NodeKind::mul: return coefficient_bound(expr.lhs()) * coefficient_bound(expr.rhs());
    case NodeKind::pow: {
        Rational b = coefficient_bound(expr.lhs());
        Rational r = 1;
        for (unsigned k = 0; k < expr.exponent(); ++k)
            r *= b;
        return r;
    }
    case NodeKind::var:
    case NodeKind::floor:
        if (expr.is_constant())
            return coefficient_bound(fold_constants(expr));
        break;
    }
    throw ValidationError("coefficient_bound: expression is not a bounded combination of fractional parts");
}

} // namespace gpseq

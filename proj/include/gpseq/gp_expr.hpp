#pragma once

#include "gpseq/exact_real.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpseq {

enum class NodeKind { constant, var, add, sub, mul, pow, floor, frac };

/// Immutable AST of a generalised polynomial in the single variable n.
///
/// Nodes are shared and never mutated, so copies are cheap and expressions
/// may be evaluated concurrently.
class GPExpr {
public:
    static GPExpr constant(ExactReal value);
    static GPExpr var();
    static GPExpr add(GPExpr lhs, GPExpr rhs);
    static GPExpr sub(GPExpr lhs, GPExpr rhs);
    static GPExpr mul(GPExpr lhs, GPExpr rhs);
    static GPExpr pow(GPExpr base, unsigned exponent);
    static GPExpr floor(GPExpr operand);
    static GPExpr frac(GPExpr operand);

    NodeKind kind() const noexcept;
    /// Payload of a constant node.
    const ExactReal& value() const;
    /// First child (operand of unary nodes, base of pow).
    const GPExpr& lhs() const;
    const GPExpr& rhs() const;
    unsigned exponent() const;

    /// True when the expression does not mention n.
    bool is_constant() const noexcept;
    /// Number of nodes.
    std::size_t size() const noexcept;

    friend bool operator==(const GPExpr& a, const GPExpr& b);
    friend bool operator!=(const GPExpr& a, const GPExpr& b) { return !(a == b); }

private:
    struct Node;
    explicit GPExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Complex-valued generalised polynomial re + i*im.
struct ComplexGP {
    GPExpr re;
    GPExpr im;
};

/// Expansion g(n) = sum_i coeffs[i](n) * n^i with bounded coefficients.
struct BoundedExpansion {
    std::vector<GPExpr> coeffs;

    unsigned degree() const { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
};

/// Parses the expression grammar (see README). Constant-only subtrees are
/// folded into a single constant node.
GPExpr parse(std::string_view text);

/// Parses text that must denote a constant, e.g. "(sqrt(5)-1)/2".
ExactReal parse_constant(std::string_view text);

/// Inverse of parse for expressions in folded form: parse(render(e)) == e
/// whenever fold_constants(e) == e.
std::string render(const GPExpr& expr);

std::ostream& operator<<(std::ostream& os, const GPExpr& expr);

/// Replaces every constant-only subtree by a single constant node.
GPExpr fold_constants(const GPExpr& expr);

/// Exact value at n >= 0.
ExactReal eval(const GPExpr& expr, const Integer& n);
inline ExactReal eval(const GPExpr& expr, long n) { return eval(expr, Integer(n)); }
std::pair<ExactReal, ExactReal> eval(const ComplexGP& expr, const Integer& n);

BoundedExpansion expand(const GPExpr& expr);
ExactReal eval_expansion(const BoundedExpansion& expansion, const Integer& n);
inline ExactReal eval_expansion(const BoundedExpansion& expansion, long n)
{
    return eval_expansion(expansion, Integer(n));
}

/// True when n and floor occur only inside frac, i.e. the expression is a
/// ring combination of constants and fractional parts.
bool is_bounded_form(const GPExpr& expr);

/// Structural bound B with |expr(n)| <= B for all n; requires is_bounded_form.
Rational coefficient_bound(const GPExpr& expr);

} // namespace gpseq

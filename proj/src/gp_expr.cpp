#include "gpseq/gp_expr.hpp"

#include "gpseq/errors.hpp"

#include <ostream>
#include <variant>

namespace gpseq {

struct GPExpr::Node {
    NodeKind kind;
    ExactReal value;
    std::vector<GPExpr> children;
    unsigned exponent = 0;
    bool constant_only = true;
    std::size_t size = 1;
};

namespace {

std::size_t child_size(const std::vector<GPExpr>& children)
{
    std::size_t s = 1;
    for (const auto& c : children)
        s += c.size();
    return s;
}

} // namespace

GPExpr GPExpr::constant(ExactReal value)
{
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::constant;
    node->value = std::move(value);
    return GPExpr(std::move(node));
}

GPExpr GPExpr::var()
{
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::var;
    node->constant_only = false;
    return GPExpr(std::move(node));
}

#define GPSEQ_BINARY(name, tag)                                                          \
    GPExpr GPExpr::name(GPExpr lhs, GPExpr rhs)                                          \
    {                                                                                    \
        auto node = std::make_shared<Node>();                                            \
        node->kind = NodeKind::tag;                                                      \
        node->constant_only = lhs.is_constant() && rhs.is_constant();                    \
        node->children = {std::move(lhs), std::move(rhs)};                               \
        node->size = child_size(node->children);                                         \
        return GPExpr(std::move(node));                                                  \
    }

GPSEQ_BINARY(add, add)
GPSEQ_BINARY(sub, sub)
GPSEQ_BINARY(mul, mul)
#undef GPSEQ_BINARY

GPExpr GPExpr::pow(GPExpr base, unsigned exponent)
{
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::pow;
    node->constant_only = base.is_constant();
    node->exponent = exponent;
    node->children = {std::move(base)};
    node->size = child_size(node->children);
    return GPExpr(std::move(node));
}

GPExpr GPExpr::floor(GPExpr operand)
{
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::floor;
    node->constant_only = operand.is_constant();
    node->children = {std::move(operand)};
    node->size = child_size(node->children);
    return GPExpr(std::move(node));
}

GPExpr GPExpr::frac(GPExpr operand)
{
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::frac;
    node->constant_only = operand.is_constant();
    node->children = {std::move(operand)};
    node->size = child_size(node->children);
    return GPExpr(std::move(node));
}

NodeKind GPExpr::kind() const noexcept { return node_->kind; }

const ExactReal& GPExpr::value() const
{
    if (node_->kind != NodeKind::constant)
        throw Error("GPExpr::value on a non-constant node");
    return node_->value;
}

const GPExpr& GPExpr::lhs() const
{
    if (node_->children.empty())
        throw Error("GPExpr::lhs on a leaf node");
    return node_->children[0];
}

const GPExpr& GPExpr::rhs() const
{
    if (node_->children.size() < 2)
        throw Error("GPExpr::rhs on a node without a second child");
    return node_->children[1];
}

unsigned GPExpr::exponent() const { return node_->exponent; }

bool GPExpr::is_constant() const noexcept { return node_->constant_only; }

std::size_t GPExpr::size() const noexcept { return node_->size; }

bool operator==(const GPExpr& a, const GPExpr& b)
{
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.exponent != y.exponent || x.size != y.size)
        return false;
    if (x.kind == NodeKind::constant)
        return x.value == y.value;
    return x.children == y.children;
}

namespace {

ExactReal power(const ExactReal& base, unsigned k)
{
    ExactReal result(1);
    ExactReal b = base;
    while (k > 0) {
        if (k & 1u)
            result *= b;
        k >>= 1u;
        if (k > 0)
            b = b * b;
    }
    return result;
}

ExactReal eval_node(const GPExpr& e, const Integer& n)
{
    switch (e.kind()) {
    case NodeKind::constant: return e.value();
    case NodeKind::var: return ExactReal(n);
    case NodeKind::add: return eval_node(e.lhs(), n) + eval_node(e.rhs(), n);
    case NodeKind::sub: return eval_node(e.lhs(), n) - eval_node(e.rhs(), n);
    case NodeKind::mul: {
        ExactReal l = eval_node(e.lhs(), n);
        if (l.is_zero())
            return l;
        return l * eval_node(e.rhs(), n);
    }
    case NodeKind::pow: return power(eval_node(e.lhs(), n), e.exponent());
    case NodeKind::floor: return ExactReal(floor_exact(eval_node(e.lhs(), n)));
    case NodeKind::frac: return frac(eval_node(e.lhs(), n));
    }
    return {};
}

} // namespace

ExactReal eval(const GPExpr& expr, const Integer& n)
{
    if (n < 0)
        throw DomainError("eval: n must be >= 0");
    return eval_node(expr, n);
}

std::pair<ExactReal, ExactReal> eval(const ComplexGP& expr, const Integer& n)
{
    return {eval(expr.re, n), eval(expr.im, n)};
}

GPExpr fold_constants(const GPExpr& expr)
{
    if (expr.kind() == NodeKind::constant || expr.kind() == NodeKind::var)
        return expr;
    if (expr.is_constant())
        return GPExpr::constant(eval_node(expr, Integer(0)));
    switch (expr.kind()) {
    case NodeKind::add: return GPExpr::add(fold_constants(expr.lhs()), fold_constants(expr.rhs()));
    case NodeKind::sub: return GPExpr::sub(fold_constants(expr.lhs()), fold_constants(expr.rhs()));
    case NodeKind::mul: return GPExpr::mul(fold_constants(expr.lhs()), fold_constants(expr.rhs()));
    case NodeKind::pow: return GPExpr::pow(fold_constants(expr.lhs()), expr.exponent());
    case NodeKind::floor: return GPExpr::floor(fold_constants(expr.lhs()));
    case NodeKind::frac: return GPExpr::frac(fold_constants(expr.lhs()));
    default: return expr;
    }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const GPExpr& e)
{
    switch (e.kind()) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul: return 2;
    case NodeKind::pow: return 3;
    default: return 4;
    }
}

std::string render_constant(const ExactReal& c)
{
    if (auto q = c.as_rational()) {
        if (*q >= 0)
            return q->get_str();
        return "(" + q->get_str() + ")";
    }
    if (c.terms().size() == 1 && c.terms()[0].second == 1)
        return "sqrt(" + std::to_string(c.terms()[0].first) + ")";
    return "(" + to_string(c) + ")";
}

std::string render_at(const GPExpr& e, int min_prec);

std::string render_node(const GPExpr& e)
{
    switch (e.kind()) {
    case NodeKind::constant: return render_constant(e.value());
    case NodeKind::var: return "n";
    case NodeKind::add: return render_at(e.lhs(), 1) + " + " + render_at(e.rhs(), 2);
    case NodeKind::sub: return render_at(e.lhs(), 1) + " - " + render_at(e.rhs(), 2);
    case NodeKind::mul: return render_at(e.lhs(), 2) + "*" + render_at(e.rhs(), 3);
    case NodeKind::pow: return render_at(e.lhs(), 4) + "^" + std::to_string(e.exponent());
    case NodeKind::floor: return "floor(" + render_node(e.lhs()) + ")";
    case NodeKind::frac: return "frac(" + render_node(e.lhs()) + ")";
    }
    return {};
}

std::string render_at(const GPExpr& e, int min_prec)
{
    std::string s = render_node(e);
    if (precedence(e) < min_prec)
        return "(" + s + ")";
    return s;
}

} // namespace

std::string render(const GPExpr& expr)
{
    return render_node(expr);
}

std::ostream& operator<<(std::ostream& os, const GPExpr& expr)
{
    return os << render(expr);
}

} // namespace gpseq

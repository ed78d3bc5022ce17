#include "gpseq/polynomial.hpp"

#include "gpseq/errors.hpp"

namespace gpseq {

std::string to_string(Basis b)
{
    return b == Basis::binomial ? "binomial" : "monomial";
}

namespace {

void trim(std::vector<ExactReal>& c)
{
    while (c.size() > 1 && c.back().is_zero())
        c.pop_back();
    if (c.empty())
        c.emplace_back();
}

} // namespace

RealPolynomial RealPolynomial::from_binomial(std::vector<ExactReal> coeffs)
{
    trim(coeffs);
    RealPolynomial p;
    p.binomial_ = std::move(coeffs);
    return p;
}

RealPolynomial RealPolynomial::from_monomial(std::vector<ExactReal> coeffs)
{
    trim(coeffs);
    RealPolynomial p;
    p.monomial_ = std::move(coeffs);
    return p;
}

bool RealPolynomial::has(Basis b) const noexcept
{
    return b == Basis::binomial ? binomial_.has_value() : monomial_.has_value();
}

const std::vector<ExactReal>& RealPolynomial::coeffs(Basis b) const
{
    const auto& c = b == Basis::binomial ? binomial_ : monomial_;
    if (!c)
        throw ValidationError("polynomial has no " + to_string(b) + " coefficients; convert first");
    return *c;
}

unsigned RealPolynomial::degree() const
{
    const auto& c = binomial_ ? *binomial_ : monomial_ ? *monomial_ : std::vector<ExactReal>{};
    return c.empty() ? 0 : static_cast<unsigned>(c.size() - 1);
}

bool RealPolynomial::is_zero() const
{
    const auto& c = binomial_ ? *binomial_ : *monomial_;
    return c.size() == 1 && c[0].is_zero();
}

ExactReal RealPolynomial::eval(const Integer& n) const
{
    ExactReal acc;
    if (monomial_) {
        const ExactReal x(n);
        for (auto it = monomial_->rbegin(); it != monomial_->rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }
    if (!binomial_)
        return acc;
    for (unsigned i = 0; i < binomial_->size(); ++i)
        acc += (*binomial_)[i] * ExactReal(binomial(n, i));
    return acc;
}

bool operator==(const RealPolynomial& a, const RealPolynomial& b)
{
    if (a.binomial_ && b.binomial_)
        return *a.binomial_ == *b.binomial_;
    if (a.monomial_ && b.monomial_)
        return *a.monomial_ == *b.monomial_;
    return convert_basis(a, Basis::monomial).coeffs(Basis::monomial) ==
           convert_basis(b, Basis::monomial).coeffs(Basis::monomial);
}

std::vector<std::vector<Integer>> stirling_first(unsigned max_n)
{
    std::vector<std::vector<Integer>> s(max_n + 1, std::vector<Integer>(max_n + 1, 0));
    s[0][0] = 1;
    for (unsigned n = 1; n <= max_n; ++n)
        for (unsigned k = 1; k <= n; ++k)
            s[n][k] = s[n - 1][k - 1] - Integer(n - 1) * s[n - 1][k];
    return s;
}

std::vector<std::vector<Integer>> stirling_second(unsigned max_n)
{
    std::vector<std::vector<Integer>> S(max_n + 1, std::vector<Integer>(max_n + 1, 0));
    S[0][0] = 1;
    for (unsigned n = 1; n <= max_n; ++n)
        for (unsigned k = 1; k <= n; ++k)
            S[n][k] = S[n - 1][k - 1] + Integer(k) * S[n - 1][k];
    return S;
}

Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(const Integer& n, unsigned k)
{
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

RealPolynomial convert_basis(const RealPolynomial& p, Basis to)
{
    RealPolynomial out = p;
    if (p.has(to))
        return out;
    const Basis from = to == Basis::binomial ? Basis::monomial : Basis::binomial;
    const auto& c = p.coeffs(from);
    const unsigned d = static_cast<unsigned>(c.size() - 1);
    std::vector<ExactReal> r(d + 1);
    if (to == Basis::monomial) {
        // C(n, i) = (1/i!) sum_j s(i, j) n^j
        const auto s = stirling_first(d);
        for (unsigned i = 0; i <= d; ++i) {
            const Rational inv(Integer(1), factorial(i));
            for (unsigned j = 0; j <= i; ++j) {
                if (s[i][j] == 0)
                    continue;
                ExactReal t = c[i];
                t *= Rational(s[i][j]) * inv;
                r[j] += t;
            }
        }
        trim(r);
        out.monomial_ = std::move(r);
    } else {
        // n^j = sum_i S(j, i) i! C(n, i)
        const auto S = stirling_second(d);
        for (unsigned j = 0; j <= d; ++j) {
            for (unsigned i = 0; i <= j; ++i) {
                if (S[j][i] == 0)
                    continue;
                ExactReal t = c[j];
                t *= Rational(Integer(S[j][i] * factorial(i)));
                r[i] += t;
            }
        }
        trim(r);
        out.binomial_ = std::move(r);
    }
    return out;
}

} // namespace gpseq

#pragma once

#include "gpseq/exact_real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpseq {

/// binomial: p(n) = sum a_i C(n, i).  monomial: p(n) = sum a'_i n^i.
enum class Basis { binomial, monomial };

std::string to_string(Basis b);

/// Real polynomial in one integer variable, held in one or both bases.
class RealPolynomial {
public:
    RealPolynomial() = default;
    static RealPolynomial from_binomial(std::vector<ExactReal> coeffs);
    static RealPolynomial from_monomial(std::vector<ExactReal> coeffs);

    bool has(Basis b) const noexcept;
    /// Coefficients a_0..a_d; throws ValidationError when the basis is absent.
    const std::vector<ExactReal>& coeffs(Basis b) const;
    unsigned degree() const;
    bool is_zero() const;

    ExactReal eval(const Integer& n) const;

    friend bool operator==(const RealPolynomial& a, const RealPolynomial& b);

private:
    std::optional<std::vector<ExactReal>> binomial_;
    std::optional<std::vector<ExactReal>> monomial_;

    friend RealPolynomial convert_basis(const RealPolynomial& p, Basis to);
};

/// Exact change of basis; the result carries both coefficient lists.
RealPolynomial convert_basis(const RealPolynomial& p, Basis to);

/// Signed Stirling numbers of the first kind s(n, k) and Stirling numbers of
/// the second kind S(n, k) for 0 <= k <= n <= max_n.
std::vector<std::vector<Integer>> stirling_first(unsigned max_n);
std::vector<std::vector<Integer>> stirling_second(unsigned max_n);

Integer binomial(const Integer& n, unsigned k);
Integer factorial(unsigned n);

} // namespace gpseq

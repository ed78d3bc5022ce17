#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gpseq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Certified enclosure of a real number: lo <= x <= hi and
/// hi - lo <= 2^-precision_bits.
struct IntervalApprox {
    Rational lo;
    Rational hi;
    unsigned precision_bits = 1;
};

/// An element of a multi-quadratic field Q(sqrt(d1), ..., sqrt(dm)).
///
/// The value is stored as sum_s c_s * sqrt(s) over distinct squarefree
/// integers s, with s = 1 carrying the rational part. Square roots of
/// distinct squarefree integers are linearly independent over Q, so this
/// representation is canonical and equality is structural.
class ExactReal {
public:
    using Term = std::pair<std::uint64_t, Rational>;

    ExactReal() = default;
    ExactReal(long value);  // NOLINT(google-explicit-constructor)
    ExactReal(const Integer& value);  // NOLINT(google-explicit-constructor)
    ExactReal(const Rational& value);  // NOLINT(google-explicit-constructor)

    /// sqrt(d) for squarefree d >= 2; throws DomainError otherwise.
    static ExactReal sqrt(std::uint64_t d);

    /// Terms with nonzero coefficient, sorted by squarefree key.
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Coefficient of sqrt(key); zero when absent.
    Rational coefficient(std::uint64_t key) const;

    /// The squarefree radicands (> 1) that carry a nonzero coefficient.
    std::vector<std::uint64_t> radicands() const;

    std::optional<Rational> as_rational() const;
    bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
    bool is_zero() const noexcept { return terms_.empty(); }

    ExactReal& operator+=(const ExactReal& rhs);
    ExactReal& operator-=(const ExactReal& rhs);
    ExactReal& operator*=(const ExactReal& rhs);
    ExactReal& operator*=(const Rational& rhs);

    friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
    friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
    friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a);

    friend bool operator==(const ExactReal& a, const ExactReal& b);
    friend bool operator!=(const ExactReal& a, const ExactReal& b) { return !(a == b); }

private:
    void normalize();

    std::vector<Term> terms_;
};

enum class ArithOp { add, sub, mul, neg };

/// Single entry point for the four field operations; `b` is ignored for neg.
ExactReal field_arith(const ExactReal& a, const ExactReal& b, ArithOp op);

/// Enclosure of width <= 2^-bits. Rational inputs yield the point interval.
IntervalApprox approx(const ExactReal& x, unsigned bits);

/// Sign of x in {-1, 0, 1}; exact.
int sign(const ExactReal& x);
int compare(const ExactReal& a, const ExactReal& b);

Integer floor_exact(const ExactReal& x);
/// {x} = x - floor(x), in [0, 1).
ExactReal frac(const ExactReal& x);
/// ||x|| = min({x}, 1 - {x}), in [0, 1/2].
ExactReal circle_norm(const ExactReal& x);
ExactReal abs(const ExactReal& x);

/// Nearest double to x (display and floating-point diagnostics only).
double to_double(const ExactReal& x);

/// Constant syntax shared with the expression language, e.g. "1/2 + 3*sqrt(2)".
std::string to_string(const ExactReal& x);
std::ostream& operator<<(std::ostream& os, const ExactReal& x);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const ExactReal& x, int digits = 12);

/// Upper bound on interval refinement precision (bits). Default 4096.
unsigned refinement_cap();
void set_refinement_cap(unsigned bits);

bool is_squarefree(std::uint64_t d);

} // namespace gpseq

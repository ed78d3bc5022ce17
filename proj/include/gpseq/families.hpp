#pragma once

#include "gpseq/exact_real.hpp"
#include "gpseq/gp_expr.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace gpseq {

/// Exact sequence value: zero, or e(phase) * magnitude with magnitude > 0
/// and phase in Q/Z. Covers integers, real quadratic surds and character
/// values times powers; products stay in the same class.
class Value {
public:
    Value() = default;  // zero
    Value(const ExactReal& real);  // NOLINT(google-explicit-constructor)
    Value(long v) : Value(ExactReal(v)) {}  // NOLINT(google-explicit-constructor)

    /// e(num/den) * magnitude; magnitude must be positive.
    static Value root(std::int64_t num, std::int64_t den, const ExactReal& magnitude = ExactReal(1));

    bool is_zero() const noexcept { return zero_; }
    std::int64_t phase_num() const noexcept { return num_; }
    std::int64_t phase_den() const noexcept { return den_; }
    const ExactReal& magnitude() const noexcept { return mag_; }
    /// Real value when the phase is 0 or 1/2.
    std::optional<ExactReal> as_real() const;

    Value& operator*=(const Value& rhs);
    friend Value operator*(Value a, const Value& b) { return a *= b; }
    /// Scales the magnitude by a positive rational.
    Value scaled(const Rational& factor) const;

    friend bool operator==(const Value& a, const Value& b);
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    /// e.g. "0", "-9", "sqrt(2)", "i", "e(1/3)*4".
    std::string to_string() const;
    double re() const;
    double im() const;

private:
    bool zero_ = true;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    ExactReal mag_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

enum class ValueType { integer, exact_real, complex_rootofunity_times_power };

std::string to_string(ValueType t);

/// Uniform handle on a sequence n -> f(n), n >= 1.
class SequenceSource {
public:
    using Fn = std::function<Value(std::uint64_t)>;

    SequenceSource(std::string kind, ValueType type, Fn fn);

    const std::string& kind() const noexcept { return kind_; }
    ValueType value_type() const noexcept { return type_; }
    /// Throws DomainError for n = 0.
    Value operator()(std::uint64_t n) const;

    /// Growth validation result for sparse constructions; empty otherwise.
    std::optional<bool> growth_ok;
    /// Defining expression when the family has one.
    std::optional<GPExpr> expr;

private:
    std::string kind_;
    ValueType type_;
    Fn fn_;
};

/// Dirichlet character mod q with values e(e_r / order).
struct DirichletCharacter {
    std::uint64_t q = 1;
    std::uint64_t order = 1;
    /// exponent[r] for r in [0, q); -1 where gcd(r, q) > 1.
    std::vector<std::int64_t> exponent;

    Value operator()(std::uint64_t n) const;
    bool is_principal() const;
};

/// Periodic sequence given by one table entry per residue mod Q.
struct PeriodicMultiplicative {
    std::uint64_t Q = 1;
    std::vector<Value> table;

    Value operator()(std::uint64_t n) const { return table[n % Q]; }
    /// Smallest period of the table (a divisor of Q).
    std::uint64_t minimal_period() const;
    friend bool operator==(const PeriodicMultiplicative& a, const PeriodicMultiplicative& b)
    {
        return a.Q == b.Q && a.table == b.table;
    }
};

PeriodicMultiplicative to_periodic(const DirichletCharacter& chi);

/// f(n) = floor(alpha*(n+1) + beta) - floor(alpha*n + beta).
struct Sturmian {
    SequenceSource source;
    GPExpr expr;
};
Sturmian sturmian(const ExactReal& alpha, const ExactReal& beta);

/// Indicator of a strictly increasing set. The optional generator supplies
/// element i (0-based) beyond the explicit list on demand.
SequenceSource sparse_indicator(std::vector<Integer> elements, const Rational& c,
                                std::function<Integer(std::size_t)> generator = {});

/// Indicator of {2^a : a in A}.
SequenceSource geometric_sparse_multiplicative(const std::vector<std::uint64_t>& A, const Rational& c);

/// All phi(q) characters mod q; the principal character comes first.
std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t q);

SequenceSource chi_times_power(const DirichletCharacter& chi, unsigned a);
SequenceSource chi_times_power(const PeriodicMultiplicative& chi, unsigned a);

/// Indicator of squarefree products (completely = false) or of arbitrary
/// products (completely = true) of the listed primes.
SequenceSource fp_multiplicative(const std::vector<std::uint64_t>& primes, bool completely);

SequenceSource constant_source(const Value& v);
/// f(1) = v1, f(n) = 0 for n >= 2.
SequenceSource delta_one(long v1);
SequenceSource from_expr(const GPExpr& expr);

} // namespace gpseq

#include "gpseq/families.hpp"

#include "gpseq/errors.hpp"
#include "gpseq/number_theory.hpp"

#include <ostream>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace gpseq {

// ---------------------------------------------------------------------------
// Value

Value::Value(const ExactReal& real)
{
    const int s = sign(real);
    if (s == 0)
        return;
    zero_ = false;
    num_ = s > 0 ? 0 : 1;
    den_ = s > 0 ? 1 : 2;
    mag_ = s > 0 ? real : -real;
}

Value Value::root(std::int64_t num, std::int64_t den, const ExactReal& magnitude)
{
    if (den <= 0)
        throw DomainError("Value::root: denominator must be positive");
    if (sign(magnitude) <= 0)
        throw DomainError("Value::root: magnitude must be positive");
    Value v;
    v.zero_ = false;
    num %= den;
    if (num < 0)
        num += den;
    const std::int64_t g = std::gcd(num, den);
    v.num_ = num / g;
    v.den_ = den / g;
    v.mag_ = magnitude;
    return v;
}

std::optional<ExactReal> Value::as_real() const
{
    if (zero_)
        return ExactReal();
    if (den_ == 1)
        return mag_;
    if (den_ == 2)
        return -mag_;
    return std::nullopt;
}

Value& Value::operator*=(const Value& rhs)
{
    if (zero_ || rhs.zero_) {
        *this = Value();
        return *this;
    }
    const std::int64_t g = std::gcd(den_, rhs.den_);
    const __int128 den = static_cast<__int128>(den_ / g) * rhs.den_;
    const __int128 num = static_cast<__int128>(num_) * (rhs.den_ / g) + static_cast<__int128>(rhs.num_) * (den_ / g);
    if (den > INT64_MAX)
        throw Error("Value: phase denominator overflow");
    ExactReal mag = mag_ * rhs.mag_;
    *this = root(static_cast<std::int64_t>(num % den), static_cast<std::int64_t>(den), mag);
    return *this;
}

Value Value::scaled(const Rational& factor) const
{
    if (factor <= 0)
        throw DomainError("Value::scaled: factor must be positive");
    Value v = *this;
    v.mag_ *= factor;
    return v;
}

bool operator==(const Value& a, const Value& b)
{
    if (a.zero_ || b.zero_)
        return a.zero_ == b.zero_;
    return a.num_ == b.num_ && a.den_ == b.den_ && a.mag_ == b.mag_;
}

std::string Value::to_string() const
{
    if (zero_)
        return "0";
    const bool unit = mag_ == ExactReal(1);
    std::string m = gpseq::to_string(mag_);
    if (mag_.terms().size() > 1)
        m = "(" + m + ")";
    if (den_ == 1)
        return unit ? "1" : m;
    if (den_ == 2)
        return "-" + (unit ? std::string("1") : m);
    std::string phase;
    if (den_ == 4)
        phase = num_ == 1 ? "i" : "-i";
    else
        phase = "e(" + std::to_string(num_) + "/" + std::to_string(den_) + ")";
    return unit ? phase : phase + "*" + m;
}

double Value::re() const
{
    if (zero_)
        return 0.0;
    return to_double(mag_) * std::cos(2 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_));
}

double Value::im() const
{
    if (zero_)
        return 0.0;
    return to_double(mag_) * std::sin(2 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_));
}

std::string to_string(ValueType t)
{
    switch (t) {
    case ValueType::integer: return "integer";
    case ValueType::exact_real: return "exact_real";
    case ValueType::complex_rootofunity_times_power: return "complex_rootofunity_times_power";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// SequenceSource

SequenceSource::SequenceSource(std::string kind, ValueType type, Fn fn)
    : kind_(std::move(kind)), type_(type), fn_(std::move(fn))
{
}

Value SequenceSource::operator()(std::uint64_t n) const
{
    if (n == 0)
        throw DomainError("sequence index must be >= 1");
    return fn_(n);
}

// ---------------------------------------------------------------------------
// Characters

Value DirichletCharacter::operator()(std::uint64_t n) const
{
    const std::int64_t e = exponent[n % q];
    if (e < 0)
        return Value();
    return Value::root(e, static_cast<std::int64_t>(order));
}

bool DirichletCharacter::is_principal() const
{
    return order == 1;
}

std::uint64_t PeriodicMultiplicative::minimal_period() const
{
    for (std::uint64_t d = 1; d < Q; ++d) {
        if (Q % d != 0)
            continue;
        bool ok = true;
        for (std::uint64_t r = d; r < Q && ok; ++r)
            ok = table[r] == table[r % d];
        if (ok)
            return d;
    }
    return Q;
}

PeriodicMultiplicative to_periodic(const DirichletCharacter& chi)
{
    PeriodicMultiplicative p;
    p.Q = chi.q;
    p.table.reserve(chi.q);
    for (std::uint64_t r = 0; r < chi.q; ++r)
        p.table.push_back(chi(r));
    return p;
}

namespace {

// One cyclic factor of (Z/q)^*: residues mod `modulus` generated by `gen`
// with the given order. For 2^k, k >= 3, the group is <-1> x <5>; the two
// factors share the modulus and a residue's logs are read off jointly.
struct CyclicFactor {
    std::uint64_t modulus;
    std::uint64_t gen;
    std::uint64_t order;
    std::vector<std::int64_t> log;  // indexed by residue mod modulus, -1 if not a unit
};

std::uint64_t smallest_primitive_root(std::uint64_t pk, std::uint64_t phi)
{
    const auto prime_divisors = factorize(phi);
    for (std::uint64_t g = 2; g < pk; ++g) {
        if (std::gcd(g, pk) != 1)
            continue;
        bool ok = true;
        for (auto [r, e] : prime_divisors)
            ok = ok && powmod(g, phi / r, pk) != 1;
        if (ok)
            return g;
    }
    return 1;
}

std::vector<CyclicFactor> unit_group_factors(std::uint64_t q)
{
    std::vector<CyclicFactor> out;
    for (auto [p, k] : factorize(q)) {
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < k; ++i)
            pk *= p;
        if (p == 2 && k >= 3) {
            // (Z/2^k)^* = {+-1} x <5>, 5 of order 2^(k-2).
            CyclicFactor sgn{pk, pk - 1, 2, std::vector<std::int64_t>(pk, -1)};
            CyclicFactor five{pk, 5, pk / 4, std::vector<std::int64_t>(pk, -1)};
            std::uint64_t x = 1;
            for (std::uint64_t e = 0; e < pk / 4; ++e) {
                sgn.log[x] = 0;
                five.log[x] = static_cast<std::int64_t>(e);
                sgn.log[pk - x] = 1;
                five.log[pk - x] = static_cast<std::int64_t>(e);
                x = x * 5 % pk;
            }
            out.push_back(std::move(sgn));
            out.push_back(std::move(five));
            continue;
        }
        const std::uint64_t phi = pk / p * (p - 1);
        const std::uint64_t g = phi == 1 ? 1 : smallest_primitive_root(pk, phi);
        CyclicFactor f{pk, g, phi, std::vector<std::int64_t>(pk, -1)};
        std::uint64_t x = 1 % pk;
        for (std::uint64_t e = 0; e < phi; ++e) {
            f.log[x] = static_cast<std::int64_t>(e);
            x = x * g % pk;
        }
        if (pk == 1)
            f.log[0] = 0;
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

std::vector<DirichletCharacter> dirichlet_characters(std::uint64_t q)
{
    if (q == 0)
        throw ValidationError("dirichlet_characters: q must be >= 1");
    if (q == 1)
        return {DirichletCharacter{1, 1, {0}}};
    const auto factors = unit_group_factors(q);
    std::uint64_t lcm_order = 1;
    for (const auto& f : factors)
        lcm_order = std::lcm(lcm_order, f.order);

    // Log vectors of every residue.
    std::vector<std::vector<std::int64_t>> logs(q);
    for (std::uint64_t r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1)
            continue;
        for (const auto& f : factors)
            logs[r].push_back(f.log[r % f.modulus]);
    }

    std::vector<DirichletCharacter> out;
    std::vector<std::uint64_t> c(factors.size(), 0);
    for (;;) {
        DirichletCharacter chi;
        chi.q = q;
        chi.exponent.assign(q, -1);
        std::uint64_t g = lcm_order;
        for (std::uint64_t r = 0; r < q; ++r) {
            if (logs[r].empty())
                continue;
            std::uint64_t e = 0;
            for (std::size_t j = 0; j < factors.size(); ++j)
                e += c[j] * static_cast<std::uint64_t>(logs[r][j]) * (lcm_order / factors[j].order);
            e %= lcm_order;
            chi.exponent[r] = static_cast<std::int64_t>(e);
            g = std::gcd(g, e);
        }
        chi.order = lcm_order / g;
        for (auto& e : chi.exponent)
            if (e >= 0)
                e /= static_cast<std::int64_t>(g);
        out.push_back(std::move(chi));

        // Lexicographic increment, last factor fastest.
        std::size_t j = factors.size();
        while (j > 0) {
            --j;
            if (++c[j] < factors[j].order)
                break;
            c[j] = 0;
            if (j == 0)
                return out;
        }
        if (factors.empty())
            return out;
    }
}

// ---------------------------------------------------------------------------
// Families

Sturmian sturmian(const ExactReal& alpha, const ExactReal& beta)
{
    if (alpha.is_rational())
        throw DomainError("sturmian: alpha must be irrational, got " + to_string(alpha));
    if (sign(alpha) <= 0 || compare(alpha, ExactReal(1)) >= 0)
        throw DomainError("sturmian: alpha must lie in (0,1), got " + to_string(alpha));
    if (sign(beta) < 0 || compare(beta, ExactReal(1)) >= 0)
        throw DomainError("sturmian: beta must lie in [0,1), got " + to_string(beta));

    const GPExpr a = GPExpr::constant(alpha);
    auto shifted = [&](GPExpr e) { return beta.is_zero() ? e : GPExpr::add(e, GPExpr::constant(beta)); };
    GPExpr expr = GPExpr::sub(
        GPExpr::floor(shifted(GPExpr::mul(a, GPExpr::add(GPExpr::var(), GPExpr::constant(ExactReal(1)))))),
        GPExpr::floor(shifted(GPExpr::mul(a, GPExpr::var()))));

    SequenceSource src("sturmian", ValueType::integer, [alpha, beta](std::uint64_t n) {
        const ExactReal x = alpha * ExactReal(Integer(static_cast<unsigned long>(n))) + beta;
        return Value(ExactReal(Integer(floor_exact(x + alpha) - floor_exact(x))));
    });
    src.expr = expr;
    return Sturmian{std::move(src), std::move(expr)};
}

namespace {

// n_{i+1} > n_i^(1+c) with c = p/q  <=>  n_{i+1}^q > n_i^(p+q).
bool sparse_growth(const Integer& a, const Integer& b, const Rational& c)
{
    const unsigned long p = c.get_num().get_ui();
    const unsigned long q = c.get_den().get_ui();
    Integer lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), b.get_mpz_t(), q);
    mpz_pow_ui(rhs.get_mpz_t(), a.get_mpz_t(), p + q);
    return lhs > rhs;
}

struct SparseSet {
    std::mutex mutex;
    std::vector<Integer> elements;
    std::function<Integer(std::size_t)> generator;

    bool contains(const Integer& n)
    {
        std::lock_guard lock(mutex);
        if (generator) {
            while (elements.empty() || elements.back() < n) {
                Integer next = generator(elements.size());
                if (!elements.empty() && next <= elements.back())
                    throw ValidationError("sparse_indicator: generator must be strictly increasing");
                elements.push_back(std::move(next));
            }
        }
        return std::binary_search(elements.begin(), elements.end(), n);
    }
};

} // namespace

SequenceSource sparse_indicator(std::vector<Integer> elements, const Rational& c,
                                std::function<Integer(std::size_t)> generator)
{
    if (c <= 0)
        throw ValidationError("sparse_indicator: c must be positive");
    for (std::size_t i = 1; i < elements.size(); ++i)
        if (elements[i] <= elements[i - 1])
            throw ValidationError("sparse_indicator: elements must be strictly increasing");
    bool growth = true;
    for (std::size_t i = 1; i < elements.size(); ++i)
        growth = growth && sparse_growth(elements[i - 1], elements[i], c);

    auto set = std::make_shared<SparseSet>();
    set->elements = std::move(elements);
    set->generator = std::move(generator);
    SequenceSource src("sparse_indicator", ValueType::integer, [set](std::uint64_t n) {
        return Value(set->contains(Integer(static_cast<unsigned long>(n))) ? 1L : 0L);
    });
    src.growth_ok = growth;
    return src;
}

SequenceSource geometric_sparse_multiplicative(const std::vector<std::uint64_t>& A, const Rational& c)
{
    if (c <= 0)
        throw ValidationError("geometric_sparse_multiplicative: c must be positive");
    for (std::size_t i = 1; i < A.size(); ++i)
        if (A[i] <= A[i - 1])
            throw ValidationError("geometric_sparse_multiplicative: A must be strictly increasing");
    bool growth = true;
    for (std::size_t i = 1; i < A.size(); ++i)
        growth = growth && Rational(Integer(static_cast<unsigned long>(A[i]))) >
                               (1 + c) * Rational(Integer(static_cast<unsigned long>(A[i - 1])));
    SequenceSource src("geometric_sparse_multiplicative", ValueType::integer, [A](std::uint64_t n) {
        if ((n & (n - 1)) != 0)
            return Value(0L);
        const auto k = static_cast<std::uint64_t>(std::countr_zero(n));
        return Value(std::binary_search(A.begin(), A.end(), k) ? 1L : 0L);
    });
    src.growth_ok = growth;
    return src;
}

SequenceSource chi_times_power(const PeriodicMultiplicative& chi, unsigned a)
{
    if (chi.Q == 0 || chi.table.size() != chi.Q)
        throw ValidationError("chi_times_power: table size must equal the period");
    return SequenceSource("chi_times_power", ValueType::complex_rootofunity_times_power,
                          [chi, a](std::uint64_t n) {
                              Value v = chi(n);
                              if (v.is_zero() || a == 0)
                                  return v;
                              Integer p;
                              mpz_ui_pow_ui(p.get_mpz_t(), n, a);
                              return v.scaled(Rational(p));
                          });
}

SequenceSource chi_times_power(const DirichletCharacter& chi, unsigned a)
{
    return chi_times_power(to_periodic(chi), a);
}

SequenceSource fp_multiplicative(const std::vector<std::uint64_t>& primes, bool completely)
{
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime(primes[i]))
            throw NotPrime("fp_multiplicative: " + std::to_string(primes[i]) + " is not prime");
        for (std::size_t j = 0; j < i; ++j)
            if (primes[j] == primes[i])
                throw ValidationError("fp_multiplicative: primes must be distinct");
    }
    return SequenceSource(completely ? "fp_completely_multiplicative" : "fp_multiplicative", ValueType::integer,
                          [primes, completely](std::uint64_t n) {
                              for (std::uint64_t p : primes) {
                                  unsigned k = 0;
                                  while (n % p == 0) {
                                      n /= p;
                                      ++k;
                                  }
                                  if (!completely && k > 1)
                                      return Value(0L);
                              }
                              return Value(n == 1 ? 1L : 0L);
                          });
}

SequenceSource constant_source(const Value& v)
{
    return SequenceSource("constant", ValueType::complex_rootofunity_times_power, [v](std::uint64_t) { return v; });
}

SequenceSource delta_one(long v1)
{
    return SequenceSource("delta_one", ValueType::integer,
                          [v1](std::uint64_t n) { return n == 1 ? Value(v1) : Value(0L); });
}

SequenceSource from_expr(const GPExpr& expr)
{
    SequenceSource src("expr", ValueType::exact_real, [expr](std::uint64_t n) {
        return Value(eval(expr, Integer(static_cast<unsigned long>(n))));
    });
    src.expr = expr;
    return src;
}

std::ostream& operator<<(std::ostream& os, const Value& v)
{
    return os << v.to_string();
}

} // namespace gpseq

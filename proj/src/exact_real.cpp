#include "gpseq/exact_real.hpp"

#include "gpseq/errors.hpp"

#include <ostream>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <numeric>
#include <vector>

namespace gpseq {

namespace {

std::atomic<unsigned> g_refinement_cap{4096};

constexpr unsigned kInitialBits = 64;

// sqrt(s) * sqrt(t) = g * sqrt((s/g) * (t/g)) with g = gcd(s, t).
std::pair<std::uint64_t, std::uint64_t> multiply_keys(std::uint64_t s, std::uint64_t t)
{
    const std::uint64_t g = std::gcd(s, t);
    const unsigned __int128 key = static_cast<unsigned __int128>(s / g) * (t / g);
    if (key > static_cast<unsigned __int128>(UINT64_MAX))
        throw Error("ExactReal: radicand product overflows 64 bits");
    return {static_cast<std::uint64_t>(key), g};
}

// floor(sqrt(s) * 2^k)
Integer scaled_isqrt(std::uint64_t s, unsigned k)
{
    Integer v(static_cast<unsigned long>(s));
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 2 * k);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

Integer floor_rational(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string rational_text(const Rational& q)
{
    return q.get_str();
}

} // namespace

ExactReal::ExactReal(long value)
{
    if (value != 0)
        terms_.emplace_back(1, Rational(value));
}

ExactReal::ExactReal(const Integer& value)
{
    if (value != 0)
        terms_.emplace_back(1, Rational(value));
}

ExactReal::ExactReal(const Rational& value)
{
    Rational v = value;
    v.canonicalize();
    if (v != 0)
        terms_.emplace_back(1, std::move(v));
}

ExactReal ExactReal::sqrt(std::uint64_t d)
{
    if (d < 2 || !is_squarefree(d))
        throw DomainError("sqrt(" + std::to_string(d) + "): radicand must be squarefree and >= 2");
    ExactReal r;
    r.terms_.emplace_back(d, Rational(1));
    return r;
}

Rational ExactReal::coefficient(std::uint64_t key) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, std::uint64_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == key)
        return it->second;
    return Rational(0);
}

std::vector<std::uint64_t> ExactReal::radicands() const
{
    std::vector<std::uint64_t> out;
    for (const auto& [key, c] : terms_)
        if (key != 1)
            out.push_back(key);
    return out;
}

std::optional<Rational> ExactReal::as_rational() const
{
    if (terms_.empty())
        return Rational(0);
    if (terms_.size() == 1 && terms_[0].first == 1)
        return terms_[0].second;
    return std::nullopt;
}

void ExactReal::normalize()
{
    std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs)
{
    std::vector<Term> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    auto a = terms_.begin();
    auto b = rhs.terms_.begin();
    while (a != terms_.end() || b != rhs.terms_.end()) {
        if (b == rhs.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            merged.push_back(*b++);
        } else {
            Rational sum = a->second + b->second;
            if (sum != 0)
                merged.emplace_back(a->first, std::move(sum));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs)
{
    return *this += -rhs;
}

ExactReal& ExactReal::operator*=(const ExactReal& rhs)
{
    *this = *this * rhs;
    return *this;
}

ExactReal& ExactReal::operator*=(const Rational& rhs)
{
    Rational r = rhs;
    r.canonicalize();
    if (r == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.second *= r;
    return *this;
}

ExactReal operator*(const ExactReal& a, const ExactReal& b)
{
    ExactReal out;
    if (a.terms_.empty() || b.terms_.empty())
        return out;
    if (b.terms_.size() == 1 && b.terms_[0].first == 1) {
        out = a;
        return out *= b.terms_[0].second;
    }
    if (a.terms_.size() == 1 && a.terms_[0].first == 1) {
        out = b;
        return out *= a.terms_[0].second;
    }
    std::map<std::uint64_t, Rational> acc;
    for (const auto& [s, cs] : a.terms_) {
        for (const auto& [t, ct] : b.terms_) {
            auto [key, factor] = multiply_keys(s, t);
            Rational prod = cs * ct;
            if (factor != 1)
                prod *= Rational(Integer(static_cast<unsigned long>(factor)));
            acc[key] += prod;
        }
    }
    out.terms_.reserve(acc.size());
    for (auto& [key, c] : acc)
        if (c != 0)
            out.terms_.emplace_back(key, std::move(c));
    return out;
}

ExactReal operator-(const ExactReal& a)
{
    ExactReal out = a;
    for (auto& t : out.terms_)
        t.second = -t.second;
    return out;
}

bool operator==(const ExactReal& a, const ExactReal& b)
{
    return a.terms_ == b.terms_;
}

ExactReal field_arith(const ExactReal& a, const ExactReal& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    }
    return {};
}

IntervalApprox approx(const ExactReal& x, unsigned bits)
{
    if (bits < 1)
        throw ValidationError("approx: bits must be >= 1");
    IntervalApprox out;
    out.precision_bits = bits;
    if (auto q = x.as_rational()) {
        out.lo = *q;
        out.hi = *q;
        return out;
    }
    Rational weight = 0;
    for (const auto& [key, c] : x.terms())
        if (key != 1)
            weight += abs(c);
    const Integer ceil_weight = floor_rational(weight) + 1;
    const unsigned k = bits + static_cast<unsigned>(mpz_sizeinbase(ceil_weight.get_mpz_t(), 2)) + 1;

    Integer denom = 1;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), k);
    out.lo = x.coefficient(1);
    out.hi = out.lo;
    for (const auto& [key, c] : x.terms()) {
        if (key == 1)
            continue;
        const Integer r = scaled_isqrt(key, k);
        Rational lo(r, denom);
        Rational hi(Integer(r + 1), denom);
        lo.canonicalize();
        hi.canonicalize();
        if (c > 0) {
            out.lo += c * lo;
            out.hi += c * hi;
        } else {
            out.lo += c * hi;
            out.hi += c * lo;
        }
    }
    return out;
}

int sign(const ExactReal& x)
{
    if (auto q = x.as_rational())
        return sgn(*q);
    const unsigned cap = refinement_cap();
    for (unsigned bits = kInitialBits;; bits *= 2) {
        const IntervalApprox iv = approx(x, bits);
        if (iv.lo > 0)
            return 1;
        if (iv.hi < 0)
            return -1;
        if (bits >= cap)
            throw RefinementBudgetExceeded("sign: refinement exceeded " + std::to_string(cap) + " bits");
    }
}

int compare(const ExactReal& a, const ExactReal& b)
{
    return sign(a - b);
}

Integer floor_exact(const ExactReal& x)
{
    if (auto q = x.as_rational())
        return floor_rational(*q);
    const unsigned cap = refinement_cap();
    for (unsigned bits = kInitialBits;; bits *= 2) {
        const IntervalApprox iv = approx(x, bits);
        Integer lo = floor_rational(iv.lo);
        if (lo == floor_rational(iv.hi))
            return lo;
        if (bits >= cap)
            throw RefinementBudgetExceeded("floor: refinement exceeded " + std::to_string(cap) + " bits");
    }
}

ExactReal frac(const ExactReal& x)
{
    return x - ExactReal(floor_exact(x));
}

ExactReal circle_norm(const ExactReal& x)
{
    ExactReal f = frac(x);
    ExactReal g = ExactReal(1) - f;
    return compare(f, g) <= 0 ? f : g;
}

ExactReal abs(const ExactReal& x)
{
    return sign(x) < 0 ? -x : x;
}

double to_double(const ExactReal& x)
{
    if (auto q = x.as_rational())
        return q->get_d();
    const IntervalApprox iv = approx(x, 64);
    Rational mid = (iv.lo + iv.hi) / 2;
    return mid.get_d();
}

std::string to_string(const ExactReal& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : x.terms()) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (key == 1) {
            out += rational_text(mag);
        } else {
            if (mag != 1)
                out += rational_text(mag) + "*";
            out += "sqrt(" + std::to_string(key) + ")";
        }
    }
    return out;
}

std::string to_decimal(const ExactReal& x, int digits)
{
    if (digits < 1)
        digits = 1;
    Rational value;
    if (auto q = x.as_rational()) {
        value = *q;
    } else {
        const IntervalApprox iv = approx(x, static_cast<unsigned>(digits) * 4 + 64);
        value = (iv.lo + iv.hi) / 2;
    }
    if (value.get_den() == 1)
        return value.get_num().get_str();
    mpf_class f(value, static_cast<mp_bitcnt_t>(digits) * 4 + 64);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    int n = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    if (n < 0)
        return "nan";
    if (static_cast<std::size_t>(n) >= buf.size()) {
        buf.resize(static_cast<std::size_t>(n) + 1);
        gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    }
    return std::string(buf.data());
}

unsigned refinement_cap()
{
    return g_refinement_cap.load(std::memory_order_relaxed);
}

void set_refinement_cap(unsigned bits)
{
    g_refinement_cap.store(std::max(bits, kInitialBits), std::memory_order_relaxed);
}

bool is_squarefree(std::uint64_t d)
{
    if (d == 0)
        return false;
    for (std::uint64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0)
                return false;
        }
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const ExactReal& x)
{
    return os << to_string(x);
}

} // namespace gpseq

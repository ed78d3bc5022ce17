#pragma once

#include "gpseq/equidist.hpp"
#include "gpseq/nil.hpp"
#include "gpseq/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gpseq {

struct PrimeRange {
    std::uint64_t X = 0;
    std::uint64_t Q = 1;
    std::uint64_t r = 0;
    std::vector<std::uint64_t> primes;
};

/// Primes p in [X, 2X) with p = r mod Q, by a segmented sieve.
PrimeRange primes_in(std::uint64_t X, std::uint64_t Q = 1, std::uint64_t r = 0);

struct RhinReport {
    std::uint64_t count_in_I = 0;
    std::uint64_t prime_count = 0;
    double fraction = 0.0;
    Rational lo;
    Rational hi;
    /// |I|
    Rational expected;
    /// Some non-constant coefficient is irrational.
    bool hypothesis = false;
};

/// Counts primes q in [X, 2X) with {p(q)} in [lo, hi).
RhinReport rhin_fraction(const RealPolynomial& p, std::uint64_t X, const Rational& lo, const Rational& hi);

/// Product points (g(n) Gamma, g(m n) Gamma), n < N, checked for delta-density.
DenseReport joint_orbit_dense(const PolySequence& g, std::uint64_t m, std::uint64_t N, const Rational& delta);

struct CensusRow {
    std::uint64_t p = 0;
    bool bad = false;
    /// Bad through a pair with lambda = 0.
    bool bad_lambda_zero = false;
    std::vector<long> kappa;
    std::vector<long> lambda;
};

struct CensusReport {
    std::vector<CensusRow> rows;
    std::uint64_t bad_count = 0;
    double bad_fraction = 0.0;
    std::uint64_t N = 0;
    std::uint64_t X = 0;
    unsigned K = 0;
};

/// A prime p in [X, 2X) is bad when some (kappa, lambda) with entries in
/// [-K, K], not both zero, has max_i N^i ||p^i a_i + b_i|| <= C, where
/// a_i, b_i are the monomial coefficients of lambda o g and kappa o g.
CensusReport bad_prime_census(const PolySequence& g, std::uint64_t N, std::uint64_t X, unsigned K, const ExactReal& C);

} // namespace gpseq

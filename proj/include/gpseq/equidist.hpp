#pragma once

#include "gpseq/nil.hpp"
#include "gpseq/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gpseq {

/// max_{1<=i<=d} N^i ||a_i|| over the coefficients of the requested basis.
ExactReal smoothness_norm(const RealPolynomial& p, std::uint64_t N, Basis basis);

/// Monomial coefficients of n -> p(a*n + b).
RealPolynomial restrict_to_ap(const RealPolynomial& p, const Integer& a, const Integer& b);

/// Constants of the two norm comparisons and of the progression bound, for
/// degree d <= smoothness::kMaxDegree.
Integer norm_constant_binomial_to_monomial(unsigned d);
Integer norm_constant_monomial_to_binomial(unsigned d);
Integer progression_constant(unsigned d);

struct EquiReport {
    /// Lower estimate of the best delta: max |avg F - int F| / ||F||_Lip.
    double estimate = 0.0;
    std::string worst;
    std::uint64_t N = 0;
    unsigned K = 0;
    std::size_t dictionary_size = 0;
};

/// Test dictionary: characters e(k.x) on the horizontal coordinates with
/// sign-canonical 0 < |k|_inf <= K, and centred tents
/// max(0, 1 - d(x, z)/r) - 1/2 for r in {1/2, 1/4, 1/8} (at most 1/4 on a
/// Heisenberg factor) with centres on the (r/2)-grid.
EquiReport delta_equi_estimate(const std::vector<NilPoint>& points, unsigned K);

/// D*_N of points in [0,1).
double star_discrepancy(std::vector<double> points);

struct DenseWitness {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t M = 0;
    std::vector<double> center;
};

struct DenseReport {
    bool dense = true;
    std::optional<DenseWitness> witness;
    std::uint64_t M = 0;
    std::uint64_t centers = 0;
};

/// Every progression P = a[M] + b inside [0, N) with M = ceil(rho N) and
/// a <= floor(1/rho) must meet every ball B(c, rho), c on the (1/net)-grid.
/// net = 0 selects 2*ceil(1/rho).
DenseReport rho_dense_check(const std::vector<NilPoint>& points, const Rational& rho, unsigned net = 0);

/// First sign-canonical horizontal character (lexicographic over the
/// horizontal coordinates, components in [-K, K]) with
/// ||eta o g||_{C[N]} <= C.
std::optional<HorizontalCharacter> character_search(const PolySequence& g, std::uint64_t N, unsigned K,
                                                    const ExactReal& C);

/// Sign-canonical integer vectors of length h with 0 < |k|_inf <= K in
/// lexicographic order.
std::vector<std::vector<long>> canonical_vectors(std::size_t h, unsigned K);

} // namespace gpseq

#pragma once

#include "gpseq/families.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gpseq {

struct MultWitness {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    Value fn;
    Value fm;
    Value fnm;
};

struct MultReport {
    std::string check;
    bool holds = true;
    std::optional<MultWitness> witness;
    std::uint64_t pairs_checked = 0;
};

/// counts[k] = #{n <= 2^k : f(n) != 0}, densities[k] = counts[k] / 2^k.
struct DensityProfile {
    std::vector<std::uint64_t> counts;
    std::vector<Rational> densities;
};

struct Classification {
    enum class Variant { polynomial, almost_everywhere_zero, unclassified };

    Variant variant = Variant::unclassified;
    std::uint64_t Q = 0;
    unsigned a = 0;
    PeriodicMultiplicative chi;
    Rational final_density;
    std::string reason;
};

std::string to_string(Classification::Variant v);

/// f(nm) = f(n) f(m) for coprime 2 <= n <= m with nm <= N, and f(1) in {0, 1}.
/// The reported witness is the violating pair with the smallest nm.
MultReport is_multiplicative(const SequenceSource& f, std::uint64_t N);
/// As above without the coprimality requirement.
MultReport is_completely_multiplicative(const SequenceSource& f, std::uint64_t N);

DensityProfile support_density(const SequenceSource& f, std::uint64_t N);

/// Fits f(n) = chi(n) n^a with chi periodic of period <= Qmax, or detects a
/// vanishing support density. Polynomial results are verified for every n <= N.
Classification classify(const SequenceSource& f, std::uint64_t N, std::uint64_t Qmax, unsigned amax,
                        const Rational& theta);

/// f(kn) = f(n) for all n <= N/k.
MultReport dilation_invariance(const SequenceSource& f, std::uint64_t k, std::uint64_t N);

/// f(1), ..., f(N) evaluated in parallel; index 0 holds f(1).
std::vector<Value> sample(const SequenceSource& f, std::uint64_t N);

} // namespace gpseq

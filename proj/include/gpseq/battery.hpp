#pragma once

#include "gpseq/multclass.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpseq {

struct BatteryItem {
    std::string name;
    SequenceSource source;
    /// Dilation factor to check alongside the classification.
    std::optional<std::uint64_t> dilation_k;
};

/// chi(n) n^a for every character of modulus <= 12 and a <= 3, the
/// {2^a : a in {1,2,4,8}} indicator, squarefree and arbitrary products of
/// {3, 7}, and the zero sequence.
std::vector<BatteryItem> default_battery();

struct SweepRow {
    std::string name;
    Classification classification;
    MultReport multiplicative;
    MultReport completely_multiplicative;
    std::optional<MultReport> dilation;
    bool in_dichotomy = false;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    bool all_in_dichotomy = true;
};

/// Classifies each item and checks (complete) multiplicativity on
/// [1, mult_N]. Throws ValidationError on an empty battery.
SweepReport dichotomy_sweep(const std::vector<BatteryItem>& battery, std::uint64_t N, std::uint64_t Qmax, unsigned amax,
                            const Rational& theta, std::uint64_t mult_N = 1000);

} // namespace gpseq

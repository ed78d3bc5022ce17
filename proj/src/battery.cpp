#include "gpseq/battery.hpp"

#include "gpseq/errors.hpp"

namespace gpseq {

std::vector<BatteryItem> default_battery()
{
    std::vector<BatteryItem> out;
    for (std::uint64_t q = 1; q <= 12; ++q) {
        const auto chars = dirichlet_characters(q);
        for (std::size_t c = 0; c < chars.size(); ++c)
            for (unsigned a = 0; a <= 3; ++a)
                out.push_back({"chi-power q=" + std::to_string(q) + " char=" + std::to_string(c) +
                                   " a=" + std::to_string(a),
                               chi_times_power(chars[c], a), std::nullopt});
    }
    out.push_back({"geometric A={1,2,4,8}", geometric_sparse_multiplicative({1, 2, 4, 8}, Rational(1, 2)), 2});
    out.push_back({"fp {3,7} squarefree", fp_multiplicative({3, 7}, false), std::nullopt});
    out.push_back({"fp {3,7} complete", fp_multiplicative({3, 7}, true), 3});
    out.push_back({"zero", constant_source(Value()), 2});
    return out;
}

SweepReport dichotomy_sweep(const std::vector<BatteryItem>& battery, std::uint64_t N, std::uint64_t Qmax, unsigned amax,
                            const Rational& theta, std::uint64_t mult_N)
{
    if (battery.empty())
        throw ValidationError("dichotomy sweep: empty battery");
    SweepReport report;
    for (const auto& item : battery) {
        SweepRow row;
        row.name = item.name;
        row.classification = classify(item.source, N, Qmax, amax, theta);
        row.multiplicative = is_multiplicative(item.source, mult_N);
        row.completely_multiplicative = is_completely_multiplicative(item.source, mult_N);
        if (item.dilation_k)
            row.dilation = dilation_invariance(item.source, *item.dilation_k, N);
        row.in_dichotomy = row.classification.variant != Classification::Variant::unclassified;
        report.all_in_dichotomy = report.all_in_dichotomy && row.in_dichotomy;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace gpseq

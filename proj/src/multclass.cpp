#include "gpseq/multclass.hpp"

#include "gpseq/errors.hpp"
#include "gpseq/parallel.hpp"

#include <numeric>

namespace gpseq {

std::string to_string(Classification::Variant v)
{
    switch (v) {
    case Classification::Variant::polynomial: return "Polynomial";
    case Classification::Variant::almost_everywhere_zero: return "AlmostEverywhereZero";
    case Classification::Variant::unclassified: return "Unclassified";
    }
    return "Unclassified";
}

std::vector<Value> sample(const SequenceSource& f, std::uint64_t N)
{
    return parallel_map<Value>(N, [&](std::size_t i) { return f(i + 1); });
}

namespace {

bool earlier(const MultWitness& a, const MultWitness& b)
{
    const std::uint64_t pa = a.n * a.m;
    const std::uint64_t pb = b.n * b.m;
    return pa != pb ? pa < pb : a.n < b.n;
}

MultReport pair_check(const SequenceSource& f, std::uint64_t N, bool coprime_only, const char* name)
{
    if (N < 2)
        throw ValidationError(std::string(name) + ": N must be >= 2");
    const std::vector<Value> v = sample(f, N);
    MultReport report;
    report.check = name;

    // Partition by n; each worker keeps its earliest violation.
    std::uint64_t n_max = 1;
    while ((n_max + 1) * (n_max + 1) <= N)
        ++n_max;
    const std::size_t rows = n_max >= 2 ? n_max - 1 : 0;
    struct Partial {
        std::optional<MultWitness> witness;
        std::uint64_t pairs = 0;
    };
    std::vector<Partial> partial = parallel_map<Partial>(rows, [&](std::size_t i) {
        Partial p;
        const std::uint64_t n = i + 2;
        for (std::uint64_t m = n; n * m <= N; ++m) {
            if (coprime_only && std::gcd(n, m) != 1)
                continue;
            ++p.pairs;
            if (p.witness)
                continue;
            const Value& fn = v[n - 1];
            const Value& fm = v[m - 1];
            const Value& fnm = v[n * m - 1];
            if (fn * fm != fnm)
                p.witness = MultWitness{n, m, fn, fm, fnm};
        }
        return p;
    });
    report.pairs_checked = 1;
    for (auto& p : partial) {
        report.pairs_checked += p.pairs;
        if (p.witness && (!report.witness || earlier(*p.witness, *report.witness)))
            report.witness = std::move(p.witness);
    }
    // f(1) in {0, 1} is only reported when no pair n, m >= 2 fails.
    const Value& f1 = v[0];
    if (!report.witness && !(f1.is_zero() || f1 == Value(1L)))
        report.witness = MultWitness{1, 1, f1, f1, f1};
    report.holds = !report.witness.has_value();
    return report;
}

} // namespace

MultReport is_multiplicative(const SequenceSource& f, std::uint64_t N)
{
    return pair_check(f, N, true, "multiplicative");
}

MultReport is_completely_multiplicative(const SequenceSource& f, std::uint64_t N)
{
    return pair_check(f, N, false, "completely_multiplicative");
}

namespace {

DensityProfile profile_of(const std::vector<Value>& v)
{
    DensityProfile out;
    std::uint64_t count = 0;
    std::uint64_t next = 1;
    for (std::uint64_t n = 1; n <= v.size(); ++n) {
        if (!v[n - 1].is_zero())
            ++count;
        if (n == next) {
            out.counts.push_back(count);
            Rational d(Integer(static_cast<unsigned long>(count)), Integer(static_cast<unsigned long>(n)));
            d.canonicalize();
            out.densities.push_back(d);
            next *= 2;
        }
    }
    return out;
}

Integer power_of(std::uint64_t n, unsigned a)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, a);
    return p;
}

} // namespace

DensityProfile support_density(const SequenceSource& f, std::uint64_t N)
{
    if (N < 2)
        throw ValidationError("support_density: N must be >= 2");
    return profile_of(sample(f, N));
}

Classification classify(const SequenceSource& f, std::uint64_t N, std::uint64_t Qmax, unsigned amax,
                        const Rational& theta)
{
    if (Qmax < 1 || N < 4 * Qmax * Qmax)
        throw ValidationError("classify: requires Qmax >= 1 and N >= 4*Qmax^2");
    if (theta <= 0 || theta >= 1)
        throw ValidationError("classify: theta must lie in (0,1)");

    const std::vector<Value> v = sample(f, N);
    Classification out;

    const DensityProfile profile = profile_of(v);
    const std::size_t K = profile.densities.size();
    out.final_density = profile.densities.back();
    if (out.final_density < theta && K >= 3 && profile.densities[K - 1] <= profile.densities[K - 2] &&
        profile.densities[K - 2] <= profile.densities[K - 3]) {
        out.variant = Classification::Variant::almost_everywhere_zero;
        return out;
    }

    // Exponent: |f(n)| / n^a must take at most Qmax values on the top half.
    std::vector<unsigned> survivors;
    for (unsigned a = 0; a <= amax; ++a) {
        std::vector<ExactReal> seen;
        bool ok = true;
        for (std::uint64_t n = N / 2; n <= N && ok; ++n) {
            if (n == 0 || v[n - 1].is_zero())
                continue;
            ExactReal r = v[n - 1].magnitude();
            r *= Rational(Integer(1), power_of(n, a));
            if (std::find(seen.begin(), seen.end(), r) == seen.end()) {
                seen.push_back(std::move(r));
                ok = seen.size() <= Qmax;
            }
        }
        if (ok && !seen.empty())
            survivors.push_back(a);
    }
    if (survivors.size() != 1) {
        out.reason = survivors.empty() ? "no exponent a <= amax gives finitely many values of |f(n)|/n^a"
                                       : "several exponents fit; refusing to choose";
        return out;
    }
    const unsigned a = survivors[0];
    out.a = a;

    std::vector<Value> normalised(N);
    for (std::uint64_t n = 1; n <= N; ++n)
        if (!v[n - 1].is_zero())
            normalised[n - 1] = v[n - 1].scaled(Rational(Integer(1), power_of(n, a)));

    for (std::uint64_t Q = 1; Q <= Qmax; ++Q) {
        std::vector<std::optional<Value>> table(Q);
        bool ok = true;
        for (std::uint64_t n = 1; n <= N && ok; ++n) {
            if (v[n - 1].is_zero())
                continue;
            auto& slot = table[n % Q];
            if (!slot)
                slot = normalised[n - 1];
            else
                ok = *slot == normalised[n - 1];
        }
        if (!ok)
            continue;
        PeriodicMultiplicative chi;
        chi.Q = Q;
        for (auto& s : table)
            chi.table.push_back(s ? *s : Value());
        for (std::uint64_t n = 1; n <= N && ok; ++n)
            ok = chi(n) == normalised[n - 1];
        if (!ok)
            continue;
        const MultReport m = is_multiplicative(chi_times_power(chi, 0), std::min<std::uint64_t>(N, 4 * Q * Q + 4));
        if (!m.holds) {
            out.reason = "periodic factor mod " + std::to_string(Q) + " is not multiplicative";
            return out;
        }
        out.variant = Classification::Variant::polynomial;
        out.Q = Q;
        out.chi = std::move(chi);
        return out;
    }
    out.reason = "no period Q <= " + std::to_string(Qmax) + " reproduces f(n)/n^" + std::to_string(a);
    return out;
}

MultReport dilation_invariance(const SequenceSource& f, std::uint64_t k, std::uint64_t N)
{
    if (k < 2)
        throw ValidationError("dilation_invariance: k must be >= 2");
    MultReport report;
    report.check = "dilation_invariance";
    const Value fk = f(k);
    for (std::uint64_t n = 1; n <= N / k; ++n) {
        ++report.pairs_checked;
        const Value fn = f(n);
        const Value fkn = f(k * n);
        if (fn != fkn) {
            report.holds = false;
            report.witness = MultWitness{n, k, fn, fk, fkn};
            break;
        }
    }
    return report;
}

} // namespace gpseq

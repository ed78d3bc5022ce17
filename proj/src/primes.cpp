#include "gpseq/primes.hpp"

#include "gpseq/errors.hpp"
#include "gpseq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gpseq {

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit)
{
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = 1;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n)
{
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

PrimeRange primes_in(std::uint64_t X, std::uint64_t Q, std::uint64_t r)
{
    if (X < 2)
        throw ValidationError("primes_in: X must be >= 2");
    if (Q == 0)
        throw ValidationError("primes_in: Q must be >= 1");
    if (Q > 1 && std::gcd(r, Q) != 1)
        throw BadResidue("primes_in: gcd(" + std::to_string(r) + ", " + std::to_string(Q) + ") != 1");
    if (X > (UINT64_MAX >> 2))
        throw ValidationError("primes_in: X too large");

    const std::uint64_t hi = 2 * X;
    const auto base = small_primes(isqrt(hi - 1));
    constexpr std::uint64_t kSegment = 1u << 18;
    const std::uint64_t segments = (hi - X + kSegment - 1) / kSegment;

    auto parts = parallel_map<std::vector<std::uint64_t>>(segments, [&](std::size_t s) {
        const std::uint64_t lo = X + s * kSegment;
        const std::uint64_t end = std::min(hi, lo + kSegment);
        std::vector<char> composite(end - lo, 0);
        for (std::uint64_t p : base) {
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j < end; j += p)
                composite[j - lo] = 1;
        }
        std::vector<std::uint64_t> out;
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < end; ++n)
            if (!composite[n - lo] && n % Q == r % Q)
                out.push_back(n);
        return out;
    });

    PrimeRange range{X, Q, r % Q, {}};
    for (auto& p : parts)
        range.primes.insert(range.primes.end(), p.begin(), p.end());
    return range;
}

RhinReport rhin_fraction(const RealPolynomial& p, std::uint64_t X, const Rational& lo, const Rational& hi)
{
    if (p.degree() < 1)
        throw ValidationError("rhin_fraction: polynomial must have degree >= 1");
    if (lo < 0 || hi > 1 || lo > hi)
        throw ValidationError("rhin_fraction: interval must satisfy 0 <= lo <= hi <= 1");
    const RealPolynomial mono = convert_basis(p, Basis::monomial);
    RhinReport report;
    report.lo = lo;
    report.hi = hi;
    report.expected = hi - lo;
    const auto& c = mono.coeffs(Basis::monomial);
    for (std::size_t i = 1; i < c.size(); ++i)
        report.hypothesis = report.hypothesis || !c[i].is_rational();

    const PrimeRange range = primes_in(X);
    const ExactReal elo(lo);
    const ExactReal ehi(hi);
    const auto inside = parallel_map<char>(range.primes.size(), [&](std::size_t i) {
        const ExactReal f = frac(mono.eval(Integer(static_cast<unsigned long>(range.primes[i]))));
        return static_cast<char>(compare(f, elo) >= 0 && compare(f, ehi) < 0);
    });
    report.prime_count = range.primes.size();
    for (char v : inside)
        report.count_in_I += static_cast<std::uint64_t>(v);
    report.fraction = report.prime_count == 0 ? 0.0
                                              : static_cast<double>(report.count_in_I) /
                                                    static_cast<double>(report.prime_count);
    return report;
}

DenseReport joint_orbit_dense(const PolySequence& g, std::uint64_t m, std::uint64_t N, const Rational& delta)
{
    if (m < 1)
        throw ValidationError("joint_orbit_dense: m must be >= 1");
    const auto first = orbit(g, N);
    const auto second = orbit(g, N, m, 0);
    const NilEntry product = NilEntry::product(g.entry(), g.entry());
    std::vector<NilPoint> points;
    points.reserve(N);
    for (std::size_t n = 0; n < N; ++n) {
        NilPoint p{product, first[n].coords};
        p.coords.insert(p.coords.end(), second[n].coords.begin(), second[n].coords.end());
        points.push_back(std::move(p));
    }
    return rho_dense_check(points, delta);
}

CensusReport bad_prime_census(const PolySequence& g, std::uint64_t N, std::uint64_t X, unsigned K, const ExactReal& C)
{
    if (K < 1)
        throw ValidationError("bad_prime_census: K must be >= 1");
    const NilEntry& entry = g.entry();
    const auto horizontal = entry.horizontal();
    std::vector<std::size_t> hidx;
    for (std::size_t j = 0; j < horizontal.size(); ++j)
        if (horizontal[j])
            hidx.push_back(j);
    const std::size_t h = hidx.size();

    // Monomial coefficients of eta o g for each single-factor character.
    auto coefficients = [&](const std::vector<long>& k) {
        HorizontalCharacter eta{entry, std::vector<Integer>(entry.dim(), 0)};
        for (std::size_t j = 0; j < h; ++j)
            eta.k[hidx[j]] = k[j];
        return convert_basis(char_compose(eta, g), Basis::monomial).coeffs(Basis::monomial);
    };

    // (kappa, lambda) and (-kappa, -lambda) give the same norm, so only
    // sign-canonical concatenations are scanned.
    struct Pair {
        std::vector<long> kappa;
        std::vector<long> lambda;
        std::vector<ExactReal> b;
        std::vector<ExactReal> a;
        bool lambda_zero;
    };
    std::vector<Pair> pairs;
    for (const auto& v : canonical_vectors(2 * h, K)) {
        Pair pr;
        pr.kappa.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h));
        pr.lambda.assign(v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
        pr.b = coefficients(pr.kappa);
        pr.a = coefficients(pr.lambda);
        pr.lambda_zero = std::all_of(pr.lambda.begin(), pr.lambda.end(), [](long x) { return x == 0; });
        pairs.push_back(std::move(pr));
    }

    const PrimeRange range = primes_in(X);
    const Integer n_big(static_cast<unsigned long>(N));
    CensusReport report;
    report.N = N;
    report.X = X;
    report.K = K;
    report.rows = parallel_map<CensusRow>(range.primes.size(), [&](std::size_t idx) {
        CensusRow row;
        row.p = range.primes[idx];
        const Integer p(static_cast<unsigned long>(row.p));
        for (const auto& pr : pairs) {
            if (row.bad && (row.bad_lambda_zero || !pr.lambda_zero))
                continue;
            const std::size_t d = std::max(pr.a.size(), pr.b.size());
            Integer pi = 1;
            Integer ni = 1;
            bool small = true;
            for (std::size_t i = 1; i < d && small; ++i) {
                pi *= p;
                ni *= n_big;
                ExactReal c;
                if (i < pr.a.size()) {
                    c = pr.a[i];
                    c *= Rational(pi);
                }
                if (i < pr.b.size())
                    c += pr.b[i];
                ExactReal v = circle_norm(c);
                v *= Rational(ni);
                small = compare(v, C) <= 0;
            }
            if (!small)
                continue;
            if (!row.bad) {
                row.bad = true;
                row.kappa = pr.kappa;
                row.lambda = pr.lambda;
            }
            if (pr.lambda_zero)
                row.bad_lambda_zero = true;
        }
        return row;
    });
    for (const auto& row : report.rows)
        report.bad_count += row.bad ? 1 : 0;
    report.bad_fraction = report.rows.empty() ? 0.0
                                              : static_cast<double>(report.bad_count) /
                                                    static_cast<double>(report.rows.size());
    return report;
}

} // namespace gpseq

#include "gpseq/equidist.hpp"

#include "gpseq/errors.hpp"
#include "gpseq/parallel.hpp"
#include "gpseq/smoothness_constants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace gpseq {

ExactReal smoothness_norm(const RealPolynomial& p, std::uint64_t N, Basis basis)
{
    if (N < 1)
        throw ValidationError("smoothness_norm: N must be >= 1");
    const auto& c = p.coeffs(basis);
    const Integer n(static_cast<unsigned long>(N));
    Integer scale = 1;
    ExactReal best;
    for (std::size_t i = 1; i < c.size(); ++i) {
        scale *= n;
        ExactReal v = circle_norm(c[i]);
        v *= Rational(scale);
        if (compare(v, best) > 0)
            best = std::move(v);
    }
    return best;
}

RealPolynomial restrict_to_ap(const RealPolynomial& p, const Integer& a, const Integer& b)
{
    if (a < 1)
        throw ValidationError("restrict_to_ap: a must be >= 1");
    const std::vector<ExactReal> c = convert_basis(p, Basis::monomial).coeffs(Basis::monomial);
    const std::size_t d = c.size() - 1;
    std::vector<ExactReal> out(d + 1);
    // (a n + b)^i = sum_j C(i, j) a^j b^(i-j) n^j
    for (std::size_t i = 0; i <= d; ++i) {
        if (c[i].is_zero())
            continue;
        for (std::size_t j = 0; j <= i; ++j) {
            Integer w = binomial(Integer(static_cast<unsigned long>(i)), static_cast<unsigned>(j));
            Integer t;
            mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), j);
            w *= t;
            mpz_pow_ui(t.get_mpz_t(), b.get_mpz_t(), i - j);
            w *= t;
            if (w == 0)
                continue;
            ExactReal term = c[i];
            term *= Rational(w);
            out[j] += term;
        }
    }
    return RealPolynomial::from_monomial(std::move(out));
}

namespace {

unsigned checked_degree(unsigned d)
{
    if (d > smoothness::kMaxDegree)
        throw ValidationError("norm constants are tabulated up to degree " + std::to_string(smoothness::kMaxDegree));
    return d;
}

} // namespace

Integer norm_constant_binomial_to_monomial(unsigned d)
{
    return Integer(static_cast<unsigned long>(smoothness::kC1[checked_degree(d)]));
}

Integer norm_constant_monomial_to_binomial(unsigned d)
{
    return Integer(static_cast<unsigned long>(smoothness::kC2[checked_degree(d)]));
}

Integer progression_constant(unsigned d)
{
    return Integer(static_cast<unsigned long>(smoothness::kCAP[checked_degree(d)]));
}

std::vector<std::vector<long>> canonical_vectors(std::size_t h, unsigned K)
{
    std::vector<std::vector<long>> out;
    if (h == 0)
        return out;
    const long k = static_cast<long>(K);
    std::vector<long> v(h, -k);
    for (;;) {
        auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
        if (first != v.end() && *first > 0)
            out.push_back(v);
        std::size_t j = h;
        while (j > 0) {
            --j;
            if (++v[j] <= k)
                break;
            v[j] = -k;
            if (j == 0)
                return out;
        }
    }
}

// ---------------------------------------------------------------------------
// delta-equidistribution

namespace {

std::string vec_text(const std::vector<long>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string vec_text(const std::vector<double>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v[i]);
        s += (i ? "," : "") + std::string(buf);
    }
    return s + ")";
}

struct Candidate {
    double value = -1.0;
    std::string descriptor;
};

} // namespace

EquiReport delta_equi_estimate(const std::vector<NilPoint>& points, unsigned K)
{
    if (points.empty())
        throw ValidationError("delta_equi_estimate: need at least one point");
    const NilEntry& entry = points.front().entry;
    for (const auto& p : points)
        if (!(p.entry == entry))
            throw EntryMismatch("delta_equi_estimate: points live on different nilmanifolds");

    const std::size_t D = entry.dim();
    const std::size_t N = points.size();
    std::vector<double> x(N * D);
    for (std::size_t n = 0; n < N; ++n) {
        const auto d = to_doubles(points[n]);
        std::copy(d.begin(), d.end(), x.begin() + static_cast<std::ptrdiff_t>(n * D));
    }
    const auto horizontal = entry.horizontal();
    std::vector<std::size_t> hidx;
    for (std::size_t j = 0; j < D; ++j)
        if (horizontal[j])
            hidx.push_back(j);

    const auto chars = canonical_vectors(hidx.size(), K);

    struct Tent {
        double radius;
        std::vector<double> center;
    };
    std::vector<Tent> tents;
    bool has_heisenberg = false;
    for (const auto& f : entry.factors())
        has_heisenberg = has_heisenberg || f.kind == NilFactor::Kind::heisenberg;
    for (double r : {0.5, 0.25, 0.125}) {
        if (has_heisenberg && r > 0.25)
            continue;
        const auto per_axis = static_cast<std::size_t>(std::lround(2.0 / r));
        double total = 1.0;
        for (std::size_t j = 0; j < D; ++j)
            total *= static_cast<double>(per_axis);
        if (total > 4096.0)
            continue;
        std::vector<std::size_t> idx(D, 0);
        for (;;) {
            Tent t{r, std::vector<double>(D)};
            for (std::size_t j = 0; j < D; ++j)
                t.center[j] = static_cast<double>(idx[j]) * r / 2.0;
            tents.push_back(std::move(t));
            std::size_t j = D;
            bool done = true;
            while (j > 0) {
                --j;
                if (++idx[j] < per_axis) {
                    done = false;
                    break;
                }
                idx[j] = 0;
            }
            if (done)
                break;
        }
    }

    const std::size_t total = chars.size() + tents.size();
    const auto scores = parallel_map<Candidate>(total, [&](std::size_t t) {
        Candidate c;
        if (t < chars.size()) {
            const auto& k = chars[t];
            std::complex<double> acc = 0.0;
            long l1 = 0;
            for (long v : k)
                l1 += std::labs(v);
            for (std::size_t n = 0; n < N; ++n) {
                double phase = 0.0;
                for (std::size_t j = 0; j < hidx.size(); ++j)
                    phase += static_cast<double>(k[j]) * x[n * D + hidx[j]];
                phase -= std::floor(phase);
                acc += std::polar(1.0, 2.0 * std::numbers::pi * phase);
            }
            const double avg = std::abs(acc) / static_cast<double>(N);
            c.value = avg / (1.0 + 2.0 * std::numbers::pi * static_cast<double>(l1));
            c.descriptor = "character k=" + vec_text(k);
        } else {
            const auto& tent = tents[t - chars.size()];
            double sum = 0.0;
            for (std::size_t n = 0; n < N; ++n) {
                const double d = metric(entry, &x[n * D], tent.center.data());
                sum += std::max(0.0, 1.0 - d / tent.radius);
            }
            const double avg = sum / static_cast<double>(N);
            const double integral = tent_integral(entry, tent.radius);
            c.value = std::fabs(avg - integral) / (0.5 + 1.0 / tent.radius);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", tent.radius);
            c.descriptor = "tent center=" + vec_text(tent.center) + " radius=" + buf;
        }
        return c;
    });

    EquiReport report;
    report.N = N;
    report.K = K;
    report.dictionary_size = total;
    for (const auto& c : scores) {
        if (c.value > report.estimate) {
            report.estimate = c.value;
            report.worst = c.descriptor;
        }
    }
    return report;
}

double star_discrepancy(std::vector<double> points)
{
    if (points.empty())
        throw ValidationError("star_discrepancy: need at least one point");
    std::sort(points.begin(), points.end());
    const double N = static_cast<double>(points.size());
    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double lo = static_cast<double>(i) / N;
        const double hi = static_cast<double>(i + 1) / N;
        d = std::max({d, std::fabs(points[i] - lo), std::fabs(points[i] - hi)});
    }
    return d;
}

// ---------------------------------------------------------------------------
// rho-density

DenseReport rho_dense_check(const std::vector<NilPoint>& points, const Rational& rho, unsigned net)
{
    if (rho <= 0 || rho >= Rational(1, 2))
        throw ValidationError("rho_dense_check: rho must lie in (0, 1/2)");
    if (points.empty())
        throw ValidationError("rho_dense_check: need at least one point");
    const NilEntry& entry = points.front().entry;
    const std::size_t D = entry.dim();
    const std::uint64_t N = points.size();

    Integer inv_ceil;
    mpz_cdiv_q(inv_ceil.get_mpz_t(), rho.get_den_mpz_t(), rho.get_num_mpz_t());
    if (net == 0)
        net = static_cast<unsigned>(2 * inv_ceil.get_ui());
    Integer a_max_z;
    mpz_fdiv_q(a_max_z.get_mpz_t(), rho.get_den_mpz_t(), rho.get_num_mpz_t());
    const std::uint64_t a_max = a_max_z.get_ui();
    Rational mq = rho * Rational(Integer(static_cast<unsigned long>(N)));
    Integer M_z;
    mpz_cdiv_q(M_z.get_mpz_t(), mq.get_num_mpz_t(), mq.get_den_mpz_t());
    const std::uint64_t M = std::max<std::uint64_t>(1, M_z.get_ui());
    const double r = rho.get_d();

    std::vector<double> x(N * D);
    for (std::size_t n = 0; n < N; ++n) {
        const auto d = to_doubles(points[n]);
        std::copy(d.begin(), d.end(), x.begin() + static_cast<std::ptrdiff_t>(n * D));
    }

    double total = 1.0;
    for (std::size_t j = 0; j < D; ++j)
        total *= net;
    if (total > 1e7)
        throw ValidationError("rho_dense_check: grid of centres too large; lower net");
    const auto centers = static_cast<std::size_t>(total);

    struct Miss {
        bool found = false;
        DenseWitness w;
    };
    const auto misses = parallel_map<Miss>(centers, [&](std::size_t ci) {
        Miss miss;
        std::vector<double> c(D);
        std::size_t rem = ci;
        for (std::size_t j = D; j-- > 0;) {
            c[j] = static_cast<double>(rem % net) / net;
            rem /= net;
        }
        std::vector<char> hit(N);
        for (std::size_t n = 0; n < N; ++n)
            hit[n] = metric(entry, &x[n * D], c.data()) < r;
        for (std::uint64_t a = 1; a <= a_max; ++a) {
            // A progression a[M] + b fits iff b + a(M-1) <= N-1.
            if (a * (M - 1) > N - 1)
                break;
            for (std::uint64_t res = 0; res < a && res < N; ++res) {
                std::uint64_t run = 0;
                for (std::uint64_t n = res; n < N; n += a) {
                    run = hit[n] ? 0 : run + 1;
                    if (run >= M) {
                        miss.found = true;
                        miss.w = DenseWitness{a, n - a * (M - 1), M, c};
                        return miss;
                    }
                }
            }
        }
        return miss;
    });

    DenseReport report;
    report.M = M;
    report.centers = centers;
    for (const auto& m : misses) {
        if (m.found) {
            report.dense = false;
            report.witness = m.w;
            break;
        }
    }
    return report;
}

std::optional<HorizontalCharacter> character_search(const PolySequence& g, std::uint64_t N, unsigned K,
                                                    const ExactReal& C)
{
    if (K < 1)
        throw ValidationError("character_search: K must be >= 1");
    const NilEntry& entry = g.entry();
    const auto horizontal = entry.horizontal();
    std::vector<std::size_t> hidx;
    for (std::size_t j = 0; j < horizontal.size(); ++j)
        if (horizontal[j])
            hidx.push_back(j);
    for (const auto& k : canonical_vectors(hidx.size(), K)) {
        HorizontalCharacter eta{entry, std::vector<Integer>(entry.dim(), 0)};
        for (std::size_t j = 0; j < hidx.size(); ++j)
            eta.k[hidx[j]] = k[j];
        if (compare(smoothness_norm(char_compose(eta, g), N, Basis::binomial), C) <= 0)
            return eta;
    }
    return std::nullopt;
}

} // namespace gpseq

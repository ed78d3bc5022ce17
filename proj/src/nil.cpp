#include "gpseq/nil.hpp"

#include "gpseq/errors.hpp"
#include "gpseq/parallel.hpp"

#include <ostream>
#include <algorithm>
#include <cmath>

namespace gpseq {

// ---------------------------------------------------------------------------
// Catalog

NilEntry NilEntry::torus(unsigned D, unsigned d)
{
    if (D == 0 || d == 0)
        throw ValidationError("torus: dimension and degree must be >= 1");
    NilEntry e;
    e.factors_.push_back({NilFactor::Kind::torus, D, d});
    return e;
}

NilEntry NilEntry::heisenberg()
{
    NilEntry e;
    e.factors_.push_back({NilFactor::Kind::heisenberg, 3, 2});
    return e;
}

NilEntry NilEntry::product(const NilEntry& a, const NilEntry& b)
{
    NilEntry e = a;
    e.factors_.insert(e.factors_.end(), b.factors_.begin(), b.factors_.end());
    return e;
}

unsigned NilEntry::dim() const
{
    unsigned s = 0;
    for (const auto& f : factors_)
        s += f.D;
    return s;
}

unsigned NilEntry::step() const
{
    unsigned s = 1;
    for (const auto& f : factors_)
        if (f.kind == NilFactor::Kind::heisenberg)
            s = 2;
    return s;
}

unsigned NilEntry::degree() const
{
    unsigned d = 0;
    for (const auto& f : factors_)
        d = std::max(d, f.d);
    return d;
}

std::vector<unsigned> NilEntry::subgroup_dims() const
{
    const unsigned d = degree();
    std::vector<unsigned> dims(d + 2, 0);
    for (unsigned i = 0; i <= d + 1; ++i) {
        for (const auto& f : factors_) {
            if (f.kind == NilFactor::Kind::torus)
                dims[i] += i <= f.d ? f.D : 0;
            else
                dims[i] += i <= 1 ? 3 : i == 2 ? 1 : 0;
        }
    }
    return dims;
}

std::vector<bool> NilEntry::horizontal() const
{
    std::vector<bool> h;
    for (const auto& f : factors_) {
        if (f.kind == NilFactor::Kind::torus) {
            h.insert(h.end(), f.D, true);
        } else {
            h.push_back(true);
            h.push_back(true);
            h.push_back(false);
        }
    }
    return h;
}

std::string NilEntry::name() const
{
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty())
            s += " x ";
        if (f.kind == NilFactor::Kind::torus)
            s += "T^" + std::to_string(f.D) + "(d=" + std::to_string(f.d) + ")";
        else
            s += "Heisenberg";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Group law

namespace {

void require_same(const NilEntry& a, const NilEntry& b)
{
    if (!(a == b))
        throw EntryMismatch("nilmanifold mismatch: " + a.name() + " vs " + b.name());
}

void require_dim(const NilEntry& e, std::size_t n)
{
    if (n != e.dim())
        throw ValidationError("expected " + std::to_string(e.dim()) + " coordinates for " + e.name() + ", got " +
                              std::to_string(n));
}

} // namespace

GroupElement identity(const NilEntry& entry)
{
    return GroupElement{entry, std::vector<ExactReal>(entry.dim())};
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b)
{
    require_same(a.entry, b.entry);
    require_dim(a.entry, a.coords.size());
    require_dim(b.entry, b.coords.size());
    GroupElement out{a.entry, std::vector<ExactReal>(a.coords.size())};
    std::size_t o = 0;
    for (const auto& f : a.entry.factors()) {
        for (unsigned j = 0; j < f.D; ++j)
            out.coords[o + j] = a.coords[o + j] + b.coords[o + j];
        if (f.kind == NilFactor::Kind::heisenberg)
            out.coords[o + 2] += a.coords[o] * b.coords[o + 1];
        o += f.D;
    }
    return out;
}

GroupElement group_inv(const GroupElement& a)
{
    require_dim(a.entry, a.coords.size());
    GroupElement out{a.entry, std::vector<ExactReal>(a.coords.size())};
    std::size_t o = 0;
    for (const auto& f : a.entry.factors()) {
        for (unsigned j = 0; j < f.D; ++j)
            out.coords[o + j] = -a.coords[o + j];
        if (f.kind == NilFactor::Kind::heisenberg)
            out.coords[o + 2] += a.coords[o] * a.coords[o + 1];
        o += f.D;
    }
    return out;
}

GroupElement group_pow_binomial(const GroupElement& a, const Integer& n)
{
    require_dim(a.entry, a.coords.size());
    const ExactReal nn(n);
    const ExactReal c2(binomial(n, 2));
    GroupElement out{a.entry, std::vector<ExactReal>(a.coords.size())};
    std::size_t o = 0;
    for (const auto& f : a.entry.factors()) {
        for (unsigned j = 0; j < f.D; ++j)
            out.coords[o + j] = nn * a.coords[o + j];
        if (f.kind == NilFactor::Kind::heisenberg)
            out.coords[o + 2] += c2 * a.coords[o] * a.coords[o + 1];
        o += f.D;
    }
    return out;
}

bool operator==(const GroupElement& a, const GroupElement& b)
{
    return a.entry == b.entry && a.coords == b.coords;
}

std::pair<NilPoint, std::vector<Integer>> reduce(const GroupElement& g)
{
    require_dim(g.entry, g.coords.size());
    NilPoint p{g.entry, g.coords};
    std::vector<Integer> gamma(g.coords.size());
    std::size_t o = 0;
    for (const auto& f : g.entry.factors()) {
        if (f.kind == NilFactor::Kind::torus) {
            for (unsigned j = 0; j < f.D; ++j) {
                gamma[o + j] = -floor_exact(p.coords[o + j]);
                p.coords[o + j] += ExactReal(gamma[o + j]);
            }
        } else {
            // (x,y,z)(a,0,0)(0,b,0)(0,0,c) = (x+a, y+b, z + (x+a)b + c)
            const Integer a = -floor_exact(p.coords[o]);
            p.coords[o] += ExactReal(a);
            const Integer b = -floor_exact(p.coords[o + 1]);
            p.coords[o + 1] += ExactReal(b);
            p.coords[o + 2] += p.coords[o] * ExactReal(b);
            const Integer c = -floor_exact(p.coords[o + 2]);
            p.coords[o + 2] += ExactReal(c);
            gamma[o] = a;
            gamma[o + 1] = b;
            gamma[o + 2] = a * b + c;
        }
        o += f.D;
    }
    return {std::move(p), std::move(gamma)};
}

GroupElement as_element(const NilPoint& p)
{
    return GroupElement{p.entry, p.coords};
}

// ---------------------------------------------------------------------------
// Polynomial sequences

PolySequence::PolySequence(NilEntry entry, std::vector<GroupElement> g) : entry_(std::move(entry)), g_(std::move(g))
{
    if (g_.empty())
        g_.push_back(identity(entry_));
    for (std::size_t i = 0; i < g_.size(); ++i) {
        require_same(entry_, g_[i].entry);
        require_dim(entry_, g_[i].coords.size());
        std::size_t o = 0;
        for (const auto& f : entry_.factors()) {
            for (unsigned j = 0; j < f.D; ++j) {
                bool allowed;
                if (f.kind == NilFactor::Kind::torus)
                    allowed = i <= f.d;
                else
                    allowed = i <= 1 || (i == 2 && j == 2);
                if (!allowed && !g_[i].coords[o + j].is_zero())
                    throw ValidationError("polynomial sequence: g_" + std::to_string(i) + " is not in G_" +
                                          std::to_string(i));
            }
            o += f.D;
        }
    }
}

GroupElement PolySequence::at(const Integer& n) const
{
    GroupElement acc = g_[0];
    for (unsigned i = 1; i < g_.size(); ++i)
        acc = group_mul(acc, group_pow_binomial(g_[i], binomial(n, i)));
    return acc;
}

std::vector<NilPoint> orbit(const PolySequence& g, std::uint64_t N, std::uint64_t a, std::uint64_t b)
{
    if (N == 0)
        throw ValidationError("orbit: N must be >= 1");
    return parallel_map<NilPoint>(N, [&](std::size_t n) {
        const Integer m = Integer(static_cast<unsigned long>(a)) * static_cast<unsigned long>(n) +
                          static_cast<unsigned long>(b);
        return reduce(g.at(m)).first;
    });
}

Integer HorizontalCharacter::norm() const
{
    Integer m = 0;
    for (const auto& x : k)
        m = std::max(m, Integer(abs(x)));
    return m;
}

RealPolynomial char_compose(const HorizontalCharacter& eta, const PolySequence& g)
{
    require_same(eta.entry, g.entry());
    require_dim(eta.entry, eta.k.size());
    const auto h = eta.entry.horizontal();
    for (std::size_t j = 0; j < h.size(); ++j)
        if (!h[j] && eta.k[j] != 0)
            throw CentralComponentNonzero("horizontal character has a nonzero central component");
    std::vector<ExactReal> coeffs;
    for (const auto& gi : g.terms()) {
        ExactReal a;
        for (std::size_t j = 0; j < h.size(); ++j)
            if (h[j] && eta.k[j] != 0)
                a += ExactReal(eta.k[j]) * gi.coords[j];
        coeffs.push_back(std::move(a));
    }
    return RealPolynomial::from_binomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Metric

namespace {

double circle(double t)
{
    t = std::fabs(t);
    t -= std::floor(t);
    return std::min(t, 1.0 - t);
}

double heisenberg_gauge(double x, double y, double z)
{
    const double t = std::fabs(z - 0.5 * x * y);
    return std::max({std::fabs(x), std::fabs(y), std::sqrt(1.0 + 2.0 * t) - 1.0});
}

double heisenberg_distance(const double* p, const double* q)
{
    double best = INFINITY;
    for (int g1 = -1; g1 <= 1; ++g1) {
        for (int g2 = -1; g2 <= 1; ++g2) {
            // h = q * (g1, g2, 0); w = p * h^-1
            const double hx = q[0] + g1;
            const double hy = q[1] + g2;
            const double hz = q[2] + q[0] * g2;
            const double wx = p[0] - hx;
            const double wy = p[1] - hy;
            const double wz0 = p[2] - hz + hx * hy - p[0] * hy;
            // A central lattice step g3 shifts wz by -g3.
            const double t0 = wz0 - 0.5 * wx * wy;
            const double r = std::round(t0);
            for (int s = -1; s <= 1; ++s)
                best = std::min(best, heisenberg_gauge(wx, wy, wz0 - (r + s)));
        }
    }
    return best;
}

} // namespace

double metric(const NilEntry& entry, const double* x, const double* y)
{
    double d = 0.0;
    std::size_t o = 0;
    for (const auto& f : entry.factors()) {
        if (f.kind == NilFactor::Kind::torus) {
            for (unsigned j = 0; j < f.D; ++j)
                d = std::max(d, circle(x[o + j] - y[o + j]));
        } else {
            d = std::max(d, heisenberg_distance(x + o, y + o));
        }
        o += f.D;
    }
    return d;
}

double metric(const NilPoint& x, const NilPoint& y)
{
    require_same(x.entry, y.entry);
    bool all_torus = true;
    for (const auto& f : x.entry.factors())
        all_torus = all_torus && f.kind == NilFactor::Kind::torus;
    if (all_torus) {
        ExactReal best;
        for (std::size_t j = 0; j < x.coords.size(); ++j) {
            ExactReal c = circle_norm(x.coords[j] - y.coords[j]);
            if (compare(c, best) > 0)
                best = std::move(c);
        }
        return to_double(best);
    }
    const auto a = to_doubles(x);
    const auto b = to_doubles(y);
    return metric(x.entry, a.data(), b.data());
}

namespace {

// Ball volume as a polynomial in r, coefficients by power.
std::vector<double> ball_volume_poly(const NilEntry& entry)
{
    std::vector<double> v{1.0};
    for (const auto& f : entry.factors()) {
        std::vector<double> g;
        if (f.kind == NilFactor::Kind::torus) {
            g.assign(f.D + 1, 0.0);
            g[f.D] = std::ldexp(1.0, static_cast<int>(f.D));
        } else {
            // |x| < r, |y| < r, |z - xy/2| < r + r^2/2
            g = {0.0, 0.0, 0.0, 8.0, 4.0};
        }
        std::vector<double> p(v.size() + g.size() - 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                p[i + j] += v[i] * g[j];
        v = std::move(p);
    }
    return v;
}

} // namespace

double ball_volume(const NilEntry& entry, double r)
{
    const auto v = ball_volume_poly(entry);
    double s = 0.0;
    for (std::size_t k = v.size(); k-- > 0;)
        s = s * r + v[k];
    return s;
}

double tent_integral(const NilEntry& entry, double rho)
{
    // (1/rho) * integral_0^rho V(r) dr
    const auto v = ball_volume_poly(entry);
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += v[k] * std::pow(rho, static_cast<double>(k)) / static_cast<double>(k + 1);
    return s;
}

std::vector<double> to_doubles(const NilPoint& p)
{
    std::vector<double> out;
    out.reserve(p.coords.size());
    for (const auto& c : p.coords)
        out.push_back(to_double(c));
    return out;
}

// ---------------------------------------------------------------------------
// Piecewise polynomial maps

CoordPolynomial CoordPolynomial::constant(const ExactReal& c)
{
    CoordPolynomial p;
    p.terms.push_back({{}, c});
    return p;
}

ExactReal CoordPolynomial::eval(const std::vector<ExactReal>& x) const
{
    ExactReal acc;
    for (const auto& t : terms) {
        ExactReal m = t.coeff;
        for (std::size_t j = 0; j < t.exps.size(); ++j)
            for (unsigned e = 0; e < t.exps[j]; ++e)
                m *= x.at(j);
        acc += m;
    }
    return acc;
}

bool Box::contains(const std::vector<ExactReal>& x) const
{
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (compare(x[j], lo[j]) < 0 || compare(x[j], hi[j]) >= 0)
            return false;
    return true;
}

namespace {

bool boxes_disjoint(const Box& a, const Box& b)
{
    for (std::size_t j = 0; j < a.lo.size(); ++j)
        if (compare(a.hi[j], b.lo[j]) <= 0 || compare(b.hi[j], a.lo[j]) <= 0)
            return true;
    return false;
}

} // namespace

PiecewisePoly::PiecewisePoly(unsigned dim, std::vector<std::pair<Box, CoordPolynomial>> pieces,
                             CoordPolynomial otherwise)
    : dim_(dim), pieces_(std::move(pieces)), otherwise_(std::move(otherwise))
{
    for (const auto& [box, poly] : pieces_)
        if (box.lo.size() != dim_ || box.hi.size() != dim_)
            throw ValidationError("piecewise map: box dimension mismatch");
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!boxes_disjoint(pieces_[i].first, pieces_[j].first))
                throw ValidationError("piecewise map: boxes " + std::to_string(j) + " and " + std::to_string(i) +
                                      " overlap");
}

ExactReal PiecewisePoly::eval(const std::vector<ExactReal>& x) const
{
    if (x.size() != dim_)
        throw ValidationError("piecewise map: point dimension mismatch");
    for (const auto& [box, poly] : pieces_)
        if (box.contains(x))
            return poly.eval(x);
    return otherwise_.eval(x);
}

ExactReal piecewise_eval(const PiecewisePoly& F, const NilPoint& x)
{
    if (F.dim() != x.entry.dim())
        throw EntryMismatch("piecewise map dimension does not match the nilmanifold");
    return F.eval(x.coords);
}

RepresentationReport representation_check(const SequenceSource& f, const PolySequence& g, const PiecewisePoly& F,
                                          std::uint64_t N)
{
    if (F.dim() != g.entry().dim())
        throw EntryMismatch("piecewise map dimension does not match the nilmanifold");
    struct Row {
        bool ok = true;
        Value expected;
        Value actual;
    };
    const auto rows = parallel_map<Row>(N, [&](std::size_t i) {
        const std::uint64_t n = i + 1;
        Row r;
        r.expected = f(n);
        r.actual = Value(F.eval(reduce(g.at(Integer(static_cast<unsigned long>(n)))).first.coords));
        r.ok = r.expected == r.actual;
        return r;
    });
    RepresentationReport report;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ++report.checked;
        if (!rows[i].ok) {
            report.matches = false;
            report.first_mismatch = i + 1;
            report.expected = rows[i].expected;
            report.actual = rows[i].actual;
            break;
        }
    }
    return report;
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g)
{
    os << g.entry.name() << "(";
    for (std::size_t i = 0; i < g.coords.size(); ++i)
        os << (i ? ", " : "") << to_string(g.coords[i]);
    return os << ")";
}

} // namespace gpseq

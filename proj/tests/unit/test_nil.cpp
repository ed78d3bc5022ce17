#include "gpseq/errors.hpp"
#include "gpseq/nil.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gpseq;

namespace {

GroupElement heis(const ExactReal& x, const ExactReal& y, const ExactReal& z)
{
    return GroupElement{NilEntry::heisenberg(), {x, y, z}};
}

GroupElement torus1(const ExactReal& x) { return GroupElement{NilEntry::torus(1), {x}}; }

ExactReal random_coord(std::mt19937_64& rng)
{
    ExactReal v(Rational(std::uniform_int_distribution<int>(-20, 20)(rng), std::uniform_int_distribution<int>(1, 7)(rng)));
    if (rng() % 2) {
        ExactReal s = ExactReal::sqrt(rng() % 2 ? 2 : 5);
        s *= Rational(std::uniform_int_distribution<int>(-3, 3)(rng), std::uniform_int_distribution<int>(1, 4)(rng));
        v += s;
    }
    return v;
}

GroupElement random_heis(std::mt19937_64& rng)
{
    return heis(random_coord(rng), random_coord(rng), random_coord(rng));
}

NilPoint heis_point(double x, double y, double z)
{
    auto q = [](double v) { return ExactReal(Rational(static_cast<long>(std::lround(v * 1000)), 1000)); };
    return NilPoint{NilEntry::heisenberg(), {q(x), q(y), q(z)}};
}

ExactReal golden()
{
    ExactReal a = ExactReal::sqrt(5) - ExactReal(1);
    a *= Rational(1, 2);
    return a;
}

} // namespace

TEST(Catalog, Filtrations)
{
    const NilEntry t = NilEntry::torus(2, 3);
    EXPECT_EQ(t.dim(), 2u);
    EXPECT_EQ(t.step(), 1u);
    EXPECT_EQ(t.degree(), 3u);
    EXPECT_EQ(t.subgroup_dims(), (std::vector<unsigned>{2, 2, 2, 2, 0}));
    const NilEntry h = NilEntry::heisenberg();
    EXPECT_EQ(h.dim(), 3u);
    EXPECT_EQ(h.step(), 2u);
    EXPECT_EQ(h.subgroup_dims(), (std::vector<unsigned>{3, 3, 1, 0}));
    EXPECT_EQ(h.horizontal(), (std::vector<bool>{true, true, false}));
    EXPECT_THROW(NilEntry::torus(0), ValidationError);
}

TEST(Group, HeisenbergLaw)
{
    const GroupElement a = heis(1, 0, 0);
    const GroupElement b = heis(0, 1, 0);
    EXPECT_EQ(group_mul(a, b), heis(1, 1, 1));
    EXPECT_EQ(group_mul(b, a), heis(1, 1, 0));
    const GroupElement comm = group_mul(group_mul(a, b), group_mul(group_inv(a), group_inv(b)));
    EXPECT_EQ(comm, heis(0, 0, 1));
    EXPECT_EQ(group_mul(a, group_inv(a)), identity(NilEntry::heisenberg()));
}

TEST(Group, EntryMismatch)
{
    EXPECT_THROW(group_mul(heis(1, 0, 0), torus1(1)), EntryMismatch);
}

TEST(Group, AxiomsOnRandomTriples)
{
    std::mt19937_64 rng(3);
    const GroupElement e = identity(NilEntry::heisenberg());
    for (int t = 0; t < 1000; ++t) {
        const GroupElement a = random_heis(rng);
        const GroupElement b = random_heis(rng);
        const GroupElement c = random_heis(rng);
        ASSERT_EQ(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)));
        ASSERT_EQ(group_mul(a, e), a);
        ASSERT_EQ(group_mul(e, a), a);
        ASSERT_EQ(group_mul(a, group_inv(a)), e);
        ASSERT_EQ(group_mul(group_inv(a), a), e);
    }
}

TEST(Group, PowerMatchesIteratedProduct)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const GroupElement a = random_heis(rng);
        GroupElement up = identity(a.entry);
        GroupElement down = identity(a.entry);
        const GroupElement inv = group_inv(a);
        for (long n = 0; n <= 30; ++n) {
            ASSERT_EQ(group_pow_binomial(a, n), up);
            ASSERT_EQ(group_pow_binomial(a, -n), down);
            up = group_mul(up, a);
            down = group_mul(down, inv);
        }
    }
    const GroupElement x = heis(ExactReal::sqrt(2), 3, Rational(1, 2));
    EXPECT_EQ(group_pow_binomial(x, 3),
              heis(ExactReal(3) * ExactReal::sqrt(2), 9, ExactReal(Rational(3, 2)) + ExactReal(9) * ExactReal::sqrt(2)));
    EXPECT_EQ(group_pow_binomial(x, 1), x);
    EXPECT_EQ(group_pow_binomial(x, 0), identity(x.entry));
}

TEST(Reduce, Examples)
{
    const auto [p, gamma] = reduce(heis(Rational(3, 2), Rational(-1, 4), Rational(23, 10)));
    EXPECT_EQ(p.coords, (std::vector<ExactReal>{Rational(1, 2), Rational(3, 4), Rational(4, 5)}));
    EXPECT_EQ(gamma, (std::vector<Integer>{-1, 1, -3}));

    const auto [q, g2] = reduce(GroupElement{NilEntry::torus(2), {Rational(5, 2), Rational(-1, 3)}});
    EXPECT_EQ(q.coords, (std::vector<ExactReal>{Rational(1, 2), Rational(2, 3)}));
    EXPECT_EQ(g2, (std::vector<Integer>{-2, 1}));
}

TEST(Reduce, ProductWithGammaAndIdempotence)
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 300; ++t) {
        const GroupElement g = random_heis(rng);
        const auto [p, gamma] = reduce(g);
        std::vector<ExactReal> gc;
        for (const auto& v : gamma)
            gc.emplace_back(v);
        ASSERT_EQ(group_mul(g, GroupElement{g.entry, gc}), as_element(p));
        for (const auto& c : p.coords) {
            ASSERT_GE(sign(c), 0);
            ASSERT_LT(compare(c, ExactReal(1)), 0);
        }
        const auto again = reduce(as_element(p));
        ASSERT_EQ(again.second, (std::vector<Integer>{0, 0, 0}));
        ASSERT_EQ(again.first.coords, p.coords);
    }
}

TEST(Orbit, TorusRotation)
{
    const ExactReal alpha = ExactReal::sqrt(2) - ExactReal(1);
    const PolySequence g(NilEntry::torus(1), {torus1(0), torus1(alpha)});
    const auto pts = orbit(g, 4);
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_EQ(pts[0].coords[0], ExactReal(0));
    EXPECT_EQ(pts[1].coords[0], alpha);
    EXPECT_EQ(pts[2].coords[0], ExactReal(2) * alpha);
    EXPECT_EQ(pts[3].coords[0], ExactReal(3) * alpha - ExactReal(1));
    EXPECT_NEAR(to_double(pts[3].coords[0]), 0.2426, 1e-4);
}

TEST(Orbit, HeisenbergClosedForm)
{
    const ExactReal a = ExactReal::sqrt(2);
    const ExactReal b = ExactReal::sqrt(5) * ExactReal(Rational(1, 3));
    const NilEntry h = NilEntry::heisenberg();
    const PolySequence g(h, {identity(h), heis(a, b, 0), identity(h)});
    GroupElement iter = identity(h);
    for (long n = 0; n <= 50; ++n) {
        const Integer c2 = Integer(n) * (n - 1) / 2;
        const GroupElement expected = heis(ExactReal(n) * a, ExactReal(n) * b, ExactReal(c2) * a * b);
        ASSERT_EQ(g.at(n), expected);
        ASSERT_EQ(g.at(n), iter);
        iter = group_mul(iter, heis(a, b, 0));
    }
    const auto pts = orbit(g, 51);
    for (long n = 0; n <= 50; ++n)
        ASSERT_EQ(pts[static_cast<std::size_t>(n)].coords, reduce(g.at(n)).first.coords);
}

TEST(Orbit, ProgressionAndConstant)
{
    const NilEntry h = NilEntry::heisenberg();
    const PolySequence g(h, {heis(Rational(1, 3), 0, 0), heis(ExactReal::sqrt(3), Rational(1, 7), 0),
                             heis(0, 0, ExactReal::sqrt(2))});
    const auto sub = orbit(g, 20, 3, 2);
    for (long n = 0; n < 20; ++n)
        ASSERT_EQ(sub[static_cast<std::size_t>(n)].coords, reduce(g.at(3 * n + 2)).first.coords);

    const PolySequence c(h, {heis(Rational(1, 3), Rational(1, 5), Rational(1, 7))});
    for (const auto& p : orbit(c, 10))
        EXPECT_EQ(p.coords, (std::vector<ExactReal>{Rational(1, 3), Rational(1, 5), Rational(1, 7)}));
    EXPECT_THROW(PolySequence(h, {identity(h), identity(h), heis(1, 0, 0)}), ValidationError);
}

TEST(Characters, Compose)
{
    const ExactReal alpha = ExactReal::sqrt(2);
    const ExactReal beta = ExactReal::sqrt(3);
    const PolySequence t(NilEntry::torus(1), {torus1(0), torus1(alpha)});
    const RealPolynomial p = char_compose(HorizontalCharacter{t.entry(), {3}}, t);
    EXPECT_EQ(p.coeffs(Basis::binomial), (std::vector<ExactReal>{0, ExactReal(3) * alpha}));

    const NilEntry h = NilEntry::heisenberg();
    const PolySequence g(h, {identity(h), heis(alpha, beta, 0), heis(0, 0, 1)});
    const RealPolynomial q = char_compose(HorizontalCharacter{h, {1, 0, 0}}, g);
    EXPECT_EQ(q.coeffs(Basis::binomial)[1], alpha);
    EXPECT_TRUE(char_compose(HorizontalCharacter{h, {0, 0, 0}}, g).is_zero());
    EXPECT_THROW(char_compose(HorizontalCharacter{h, {0, 0, 1}}, g), CentralComponentNonzero);
    EXPECT_EQ((HorizontalCharacter{h, {2, -5, 0}}).norm(), 5);
}

TEST(Characters, Homomorphism)
{
    const NilEntry h = NilEntry::heisenberg();
    const PolySequence g(h, {heis(Rational(1, 2), ExactReal::sqrt(7), 0), heis(ExactReal::sqrt(2), ExactReal::sqrt(3), 5),
                             heis(0, 0, Rational(1, 3))});
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const long a = std::uniform_int_distribution<long>(-5, 5)(rng);
        const long b = std::uniform_int_distribution<long>(-5, 5)(rng);
        const long c = std::uniform_int_distribution<long>(-5, 5)(rng);
        const long d = std::uniform_int_distribution<long>(-5, 5)(rng);
        const RealPolynomial p = char_compose(HorizontalCharacter{h, {a, b, 0}}, g);
        const RealPolynomial q = char_compose(HorizontalCharacter{h, {c, d, 0}}, g);
        const RealPolynomial s = char_compose(HorizontalCharacter{h, {a + c, b + d, 0}}, g);
        const auto& pc = p.coeffs(Basis::binomial);
        const auto& qc = q.coeffs(Basis::binomial);
        const auto& sc = s.coeffs(Basis::binomial);
        for (std::size_t i = 0; i < sc.size(); ++i) {
            const ExactReal lhs = (i < pc.size() ? pc[i] : ExactReal()) + (i < qc.size() ? qc[i] : ExactReal());
            ASSERT_EQ(lhs, sc[i]);
        }
        // eta(g(n)) agrees with the horizontal coordinates of g(n).
        for (long n = 0; n < 10; ++n) {
            const GroupElement x = g.at(n);
            ASSERT_EQ(s.eval(n), ExactReal(a + c) * x.coords[0] + ExactReal(b + d) * x.coords[1]);
        }
    }
}

TEST(Metric, Examples)
{
    const NilEntry t = NilEntry::torus(1);
    const NilPoint a{t, {Rational(1, 10)}};
    const NilPoint b{t, {Rational(9, 10)}};
    EXPECT_NEAR(metric(a, b), 0.2, 1e-12);
    EXPECT_EQ(metric(a, a), 0.0);
    // Central separation 0.2 has gauge sqrt(1 + 2*0.2) - 1.
    EXPECT_NEAR(metric(heis_point(0, 0, 0.1), heis_point(0, 0, 0.9)), std::sqrt(1.4) - 1, 1e-12);
    EXPECT_NEAR(metric(heis_point(0.1, 0, 0), heis_point(0.9, 0, 0)), 0.2, 1e-12);
    EXPECT_THROW(metric(a, heis_point(0, 0, 0)), EntryMismatch);
}

TEST(Metric, AxiomsOnRandomTriples)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const NilEntry& e : {NilEntry::torus(2), NilEntry::heisenberg(),
                              NilEntry::product(NilEntry::heisenberg(), NilEntry::torus(1))}) {
        for (int t = 0; t < 1000; ++t) {
            std::vector<double> x(e.dim()), y(e.dim()), z(e.dim());
            for (unsigned j = 0; j < e.dim(); ++j) {
                x[j] = u(rng);
                y[j] = u(rng);
                z[j] = u(rng);
            }
            const double dxy = metric(e, x.data(), y.data());
            const double dyx = metric(e, y.data(), x.data());
            ASSERT_NEAR(dxy, dyx, 1e-12);
            ASSERT_GE(dxy, 0.0);
            ASSERT_EQ(metric(e, x.data(), x.data()), 0.0);
            ASSERT_LE(dxy, metric(e, x.data(), z.data()) + metric(e, z.data(), y.data()) + 1e-12) << e.name();
        }
    }
}

TEST(Metric, BallVolumeAndTent)
{
    EXPECT_NEAR(ball_volume(NilEntry::torus(2), 0.25), 0.25, 1e-12);
    EXPECT_NEAR(ball_volume(NilEntry::heisenberg(), 0.1), 8e-3 + 4e-4, 1e-12);
    // (1/rho) * int_0^rho 2r dr = rho on the circle.
    EXPECT_NEAR(tent_integral(NilEntry::torus(1), 0.2), 0.2, 1e-12);

    // Monte Carlo cross-check of the Heisenberg ball volume.
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const NilEntry h = NilEntry::heisenberg();
    const double origin[3] = {0.5, 0.5, 0.5};
    int inside = 0;
    const int samples = 400000;
    for (int i = 0; i < samples; ++i) {
        const double p[3] = {u(rng), u(rng), u(rng)};
        inside += metric(h, origin, p) < 0.2 ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(inside) / samples, ball_volume(h, 0.2), 0.003);
}

TEST(Piecewise, Validation)
{
    Box a{{Rational(0)}, {Rational(1, 2)}};
    Box b{{Rational(1, 4)}, {Rational(3, 4)}};
    EXPECT_THROW(PiecewisePoly(1, {{a, CoordPolynomial::constant(1)}, {b, CoordPolynomial::constant(2)}},
                               CoordPolynomial::constant(0)),
                 ValidationError);
    Box c{{Rational(1, 2)}, {Rational(1)}};
    const PiecewisePoly F(1, {{a, CoordPolynomial::constant(1)}, {c, CoordPolynomial{{{{2}, ExactReal(3)}}}}},
                          CoordPolynomial::constant(0));
    EXPECT_EQ(F.eval({Rational(1, 4)}), ExactReal(1));
    EXPECT_EQ(F.eval({Rational(1, 2)}), ExactReal(Rational(3, 4)));
}

TEST(Representation, Sturmian)
{
    for (const ExactReal& alpha : {golden(), ExactReal::sqrt(2) - ExactReal(1)}) {
        for (const Rational& beta : {Rational(0), Rational(1, 3)}) {
            const Sturmian s = sturmian(alpha, ExactReal(beta));
            const PolySequence g(NilEntry::torus(1), {torus1(beta), torus1(alpha)});
            const PiecewisePoly F(1, {{Box{{ExactReal(1) - alpha}, {ExactReal(1)}}, CoordPolynomial::constant(1)}},
                                  CoordPolynomial::constant(0));
            const RepresentationReport r = representation_check(s.source, g, F, 2000);
            EXPECT_TRUE(r.matches);
            EXPECT_EQ(r.checked, 2000u);
        }
    }
}

TEST(Representation, ConstantAndWrongMap)
{
    const PolySequence g(NilEntry::torus(1), {torus1(0), torus1(golden())});
    const PiecewisePoly one(1, {}, CoordPolynomial::constant(1));
    EXPECT_TRUE(representation_check(constant_source(Value(1)), g, one, 500).matches);

    // Breakpoint shifted by 1/100: first mismatch where {n alpha} lands in [1 - alpha, 1 - alpha + 1/100).
    const ExactReal alpha = golden();
    const ExactReal lo = ExactReal(1) - alpha;
    const ExactReal hi = lo + ExactReal(Rational(1, 100));
    const PiecewisePoly wrong(1, {{Box{{hi}, {ExactReal(1)}}, CoordPolynomial::constant(1)}},
                              CoordPolynomial::constant(0));
    std::uint64_t first = 0;
    for (std::uint64_t n = 1; first == 0; ++n) {
        const ExactReal u = frac(ExactReal(static_cast<long>(n)) * alpha);
        if (compare(u, lo) >= 0 && compare(u, hi) < 0)
            first = n;
    }
    const RepresentationReport r = representation_check(sturmian(alpha, 0).source, g, wrong, 10000);
    ASSERT_FALSE(r.matches);
    EXPECT_EQ(*r.first_mismatch, first);
    EXPECT_EQ(*r.expected, Value(1));
    EXPECT_EQ(*r.actual, Value(0));
}

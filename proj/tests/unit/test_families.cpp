#include "gpseq/errors.hpp"
#include "gpseq/families.hpp"
#include "gpseq/multclass.hpp"
#include "gpseq/number_theory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace gpseq;

namespace {

ExactReal golden()
{
    ExactReal a = ExactReal::sqrt(5) - ExactReal(1);
    a *= Rational(1, 2);
    return a;
}

} // namespace

TEST(Value, Arithmetic)
{
    const Value i = Value::root(1, 4);
    EXPECT_EQ(i * i, Value(-1));
    EXPECT_EQ(i.to_string(), "i");
    EXPECT_EQ(Value::root(3, 4).to_string(), "-i");
    EXPECT_EQ(Value(-9).to_string(), "-9");
    EXPECT_EQ(Value().to_string(), "0");
    EXPECT_EQ(Value(0), Value());
    EXPECT_EQ(Value(ExactReal::sqrt(2)) * Value(ExactReal::sqrt(2)), Value(2));
    EXPECT_EQ(Value::root(1, 3, ExactReal(4)).to_string(), "e(1/3)*4");
    EXPECT_NEAR(Value::root(1, 3).re(), -0.5, 1e-12);
    EXPECT_NEAR(Value::root(1, 3).im(), std::sqrt(3.0) / 2, 1e-12);
    EXPECT_EQ(Value(3).scaled(Rational(1, 3)), Value(1));
}

TEST(Characters, ModFour)
{
    const auto chars = dirichlet_characters(4);
    ASSERT_EQ(chars.size(), 2u);
    EXPECT_TRUE(chars[0].is_principal());
    EXPECT_EQ(chars[1](3), Value(-1));
    EXPECT_EQ(chars[1](1), Value(1));
    EXPECT_EQ(chars[1](2), Value());
}

TEST(Characters, ModFiveHasQuarticCharacter)
{
    const auto chars = dirichlet_characters(5);
    ASSERT_EQ(chars.size(), 4u);
    bool found = false;
    for (const auto& chi : chars) {
        if (chi(2) == Value::root(1, 4)) {
            found = true;
            EXPECT_EQ(chi.order, 4u);
            EXPECT_EQ(chi(3), Value::root(3, 4));
            EXPECT_EQ(chi(4), Value(-1));
        }
    }
    EXPECT_TRUE(found);
}

TEST(Characters, CountAndAxioms)
{
    for (std::uint64_t q = 1; q <= 64; ++q) {
        const auto chars = dirichlet_characters(q);
        ASSERT_EQ(chars.size(), euler_phi(q)) << q;
        ASSERT_TRUE(chars[0].is_principal());
        for (const auto& chi : chars) {
            ASSERT_EQ(chi(1), Value(1));
            for (std::uint64_t r = 0; r < q; ++r) {
                ASSERT_EQ(chi(r).is_zero(), std::gcd(r, q) != 1 && q > 1) << q << " " << r;
                for (std::uint64_t s = 0; s < q; ++s)
                    ASSERT_EQ(chi(r * s), chi(r) * chi(s));
            }
        }
        // Distinct characters have distinct tables.
        for (std::size_t a = 0; a < chars.size(); ++a)
            for (std::size_t b = a + 1; b < chars.size(); ++b)
                ASSERT_NE(to_periodic(chars[a]), to_periodic(chars[b])) << q;
    }
}

TEST(Characters, Orthogonality)
{
    for (std::uint64_t q = 1; q <= 20; ++q) {
        for (const auto& chi : dirichlet_characters(q)) {
            double re = 0;
            double im = 0;
            for (std::uint64_t n = 1; n <= q; ++n) {
                re += chi(n).re();
                im += chi(n).im();
            }
            const double expected = chi.is_principal() ? static_cast<double>(euler_phi(q)) : 0.0;
            EXPECT_NEAR(re, expected, 1e-9) << q;
            EXPECT_NEAR(im, 0.0, 1e-9) << q;
        }
    }
}

TEST(Sturmian, GoldenValues)
{
    const Sturmian s = sturmian(golden(), ExactReal(0));
    const long expected[] = {1, 0, 1, 1, 0};
    for (std::uint64_t n = 1; n <= 5; ++n)
        EXPECT_EQ(s.source(n), Value(expected[n - 1])) << n;
}

TEST(Sturmian, SourceMatchesExpression)
{
    const Sturmian s = sturmian(ExactReal::sqrt(2) - ExactReal(1), ExactReal(Rational(1, 3)));
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const Value v = s.source(n);
        ASSERT_TRUE(v == Value(0) || v == Value(1));
        ASSERT_EQ(v, Value(eval(s.expr, Integer(static_cast<unsigned long>(n)))));
        ASSERT_EQ(v, s.source(n));
    }
}

TEST(Sturmian, RejectsBadParameters)
{
    EXPECT_THROW(sturmian(ExactReal(Rational(1, 2)), ExactReal(0)), DomainError);
    EXPECT_THROW(sturmian(ExactReal::sqrt(2), ExactReal(0)), DomainError);
    EXPECT_THROW(sturmian(golden(), ExactReal(1)), DomainError);
    EXPECT_THROW(sturmian(golden(), ExactReal(-1)), DomainError);
}

TEST(Sparse, GrowthFlag)
{
    const SequenceSource f = sparse_indicator({2, 8, 100, 100000}, Rational(1, 2));
    ASSERT_TRUE(f.growth_ok.has_value());
    EXPECT_TRUE(*f.growth_ok);
    EXPECT_EQ(f(8), Value(1));
    EXPECT_EQ(f(9), Value(0));
    EXPECT_EQ(f(100000), Value(1));

    const SequenceSource g = sparse_indicator({1, 2, 3}, Rational(1));
    EXPECT_FALSE(*g.growth_ok);

    const SequenceSource empty = sparse_indicator({}, Rational(1));
    for (std::uint64_t n = 1; n <= 100; ++n)
        EXPECT_TRUE(empty(n).is_zero());
}

TEST(Sparse, Generator)
{
    // 2^(2^i): 2, 4, 16, 256, 65536, ...
    const SequenceSource f = sparse_indicator({}, Rational(1, 2), [](std::size_t i) -> Integer {
        return Integer(1) << (1u << i);
    });
    EXPECT_EQ(f(65536), Value(1));
    EXPECT_EQ(f(65537), Value(0));
    EXPECT_EQ(f(256), Value(1));
    EXPECT_EQ(f(3), Value(0));
}

TEST(Geometric, ExampleSet)
{
    const SequenceSource f = geometric_sparse_multiplicative({1, 2, 4, 8}, Rational(1, 2));
    for (std::uint64_t n : {2, 4, 16, 256})
        EXPECT_EQ(f(n), Value(1)) << n;
    EXPECT_EQ(f(8), Value(0));
    EXPECT_EQ(f(1), Value(0));
    EXPECT_EQ(f(3), Value(0));
    const SequenceSource z = geometric_sparse_multiplicative({}, Rational(1, 2));
    for (std::uint64_t n = 1; n <= 300; ++n)
        EXPECT_TRUE(z(n).is_zero());
}

TEST(ChiTimesPower, Values)
{
    const auto chars = dirichlet_characters(4);
    const SequenceSource f = chi_times_power(chars[1], 2);
    EXPECT_EQ(f(3), Value(-9));
    EXPECT_EQ(f(5), Value(25));
    EXPECT_EQ(f(1), Value(1));
    EXPECT_TRUE(f(2).is_zero());

    const SequenceSource one = chi_times_power(dirichlet_characters(1)[0], 0);
    for (std::uint64_t n = 1; n <= 50; ++n)
        EXPECT_EQ(one(n), Value(1));

    for (std::uint64_t q = 1; q <= 12; ++q)
        for (const auto& chi : dirichlet_characters(q))
            EXPECT_EQ(chi_times_power(chi, 3)(1), Value(1));
}

TEST(Fp, SquarefreeProducts)
{
    const SequenceSource f = fp_multiplicative({3, 7}, false);
    EXPECT_EQ(f(21), Value(1));
    EXPECT_EQ(f(9), Value(0));
    EXPECT_EQ(f(63), Value(0));
    EXPECT_EQ(f(1), Value(1));
}

TEST(Fp, ArbitraryProducts)
{
    const SequenceSource f = fp_multiplicative({3, 7}, true);
    EXPECT_EQ(f(9), Value(1));
    EXPECT_EQ(f(63), Value(1));
    EXPECT_EQ(f(6), Value(0));
    EXPECT_EQ(f(1), Value(1));
}

TEST(Fp, Validation)
{
    EXPECT_THROW(fp_multiplicative({3, 4}, true), NotPrime);
    EXPECT_THROW(fp_multiplicative({3, 3}, false), ValidationError);
}

TEST(Fp, Multiplicativity)
{
    const SequenceSource sq = fp_multiplicative({3, 7}, false);
    EXPECT_TRUE(is_multiplicative(sq, 1000).holds);
    const MultReport r = is_completely_multiplicative(sq, 1000);
    ASSERT_FALSE(r.holds);
    EXPECT_EQ(r.witness->n, 3u);
    EXPECT_EQ(r.witness->m, 3u);

    const SequenceSource all = fp_multiplicative({3, 7}, true);
    EXPECT_TRUE(is_multiplicative(all, 1000).holds);
    EXPECT_TRUE(is_completely_multiplicative(all, 1000).holds);
}

TEST(Sources, DomainAndReproducibility)
{
    const SequenceSource f = constant_source(Value(5));
    EXPECT_THROW(f(0), DomainError);
    EXPECT_EQ(f(17), f(17));
    const SequenceSource d = delta_one(1);
    EXPECT_EQ(d(1), Value(1));
    EXPECT_TRUE(d(2).is_zero());
    const SequenceSource e = from_expr(parse("n^2"));
    EXPECT_EQ(e(12), Value(144));
    EXPECT_EQ(to_string(ValueType::integer), "integer");
}

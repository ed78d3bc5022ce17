#include "gpseq/errors.hpp"
#include "gpseq/exact_real.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gpseq;

namespace {

ExactReal random_real(std::mt19937_64& rng)
{
    static const std::uint64_t keys[] = {2, 3, 5, 6, 7, 10};
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> den(1, 6);
    std::uniform_int_distribution<int> pick(0, 5);
    ExactReal x(Rational(coef(rng), den(rng)));
    const int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < n; ++i) {
        ExactReal t = ExactReal::sqrt(keys[pick(rng)]);
        t *= Rational(coef(rng), den(rng));
        x += t;
    }
    return x;
}

// floor(sqrt(m)) by integer square root, independent of the interval path.
Integer isqrt(long m)
{
    Integer r;
    Integer v(m);
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

} // namespace

TEST(ExactReal, RadicandCollapse)
{
    EXPECT_EQ(ExactReal::sqrt(2) * ExactReal::sqrt(2), ExactReal(2));
    EXPECT_TRUE((ExactReal::sqrt(2) * ExactReal::sqrt(2)).is_rational());
}

TEST(ExactReal, Cancellation)
{
    const ExactReal a = ExactReal(1) + ExactReal::sqrt(2);
    const ExactReal b = ExactReal(1) - ExactReal::sqrt(2);
    EXPECT_EQ(field_arith(a, b, ArithOp::add), ExactReal(2));
}

TEST(ExactReal, ProductOfDistinctRadicands)
{
    const ExactReal p = ExactReal::sqrt(2) * ExactReal::sqrt(3);
    EXPECT_EQ(p, ExactReal::sqrt(6));
    EXPECT_EQ(p.coefficient(6), Rational(1));
    EXPECT_EQ(p.radicands(), std::vector<std::uint64_t>{6});
}

TEST(ExactReal, SharedFactorProduct)
{
    // sqrt(6) * sqrt(10) = 2 sqrt(15)
    EXPECT_EQ(ExactReal::sqrt(6) * ExactReal::sqrt(10), ExactReal(2) * ExactReal::sqrt(15));
}

TEST(ExactReal, IsRational)
{
    EXPECT_EQ(ExactReal(Rational(7, 3)).as_rational(), Rational(7, 3));
    EXPECT_FALSE(ExactReal::sqrt(2).as_rational().has_value());
    const ExactReal x = ExactReal::sqrt(2) * ExactReal::sqrt(2) - ExactReal(2) + ExactReal(5);
    EXPECT_EQ(x.as_rational(), Rational(5));
}

TEST(ExactReal, Floor)
{
    EXPECT_EQ(floor_exact(ExactReal(Rational(5, 2))), 2);
    EXPECT_EQ(floor_exact(ExactReal::sqrt(2)), 1);
    // 3 sqrt(2) = sqrt(18)
    EXPECT_EQ(floor_exact(ExactReal(3) * ExactReal::sqrt(2)), isqrt(18));
    EXPECT_EQ(floor_exact(-ExactReal::sqrt(2)), -2);
    EXPECT_EQ(floor_exact(ExactReal(Rational(-5, 2))), -3);
}

TEST(ExactReal, FloorMatchesIntegerSquareRoot)
{
    for (long m = 1; m <= 400; ++m) {
        for (long k : {2L, 3L, 5L, 7L}) {
            // m sqrt(k) = sqrt(m^2 k)
            const ExactReal x = ExactReal(m) * ExactReal::sqrt(static_cast<std::uint64_t>(k));
            ASSERT_EQ(floor_exact(x), isqrt(m * m * k)) << m << " sqrt(" << k << ")";
        }
    }
}

TEST(ExactReal, ApproxSqrt2)
{
    const IntervalApprox iv = approx(ExactReal::sqrt(2), 10);
    EXPECT_GE(iv.lo, Rational(14130, 10000));
    EXPECT_LE(iv.hi, Rational(14150, 10000));
    EXPECT_LE(iv.hi - iv.lo, Rational(1, 1024));
    EXPECT_LT(iv.lo * iv.lo, 2);
    EXPECT_GT(iv.hi * iv.hi, 2);
}

TEST(ExactReal, ApproxRationalAndZero)
{
    const IntervalApprox third = approx(ExactReal(Rational(1, 3)), 4);
    EXPECT_LE(third.lo, Rational(1, 3));
    EXPECT_GE(third.hi, Rational(1, 3));
    EXPECT_LE(third.hi - third.lo, Rational(1, 16));
    const IntervalApprox zero = approx(ExactReal(), 30);
    EXPECT_EQ(zero.lo, 0);
    EXPECT_EQ(zero.hi, 0);
    EXPECT_THROW(approx(ExactReal(1), 0), ValidationError);
}

TEST(ExactReal, ApproxSoundness)
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
        const ExactReal x = random_real(rng);
        const unsigned bits = std::uniform_int_distribution<unsigned>(8, 64)(rng);
        const IntervalApprox iv = approx(x, bits);
        ASSERT_LE(iv.lo, iv.hi);
        Rational width = iv.hi - iv.lo;
        Rational bound(Integer(1), Integer(1) << bits);
        ASSERT_LE(width, bound);
        if (auto q = x.as_rational()) {
            ASSERT_LE(iv.lo, *q);
            ASSERT_GE(iv.hi, *q);
        } else {
            // Enclosures at different precisions must overlap.
            const IntervalApprox fine = approx(x, bits + 40);
            ASSERT_LE(iv.lo, fine.hi);
            ASSERT_GE(iv.hi, fine.lo);
        }
    }
}

TEST(ExactReal, FieldLaws)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const ExactReal a = random_real(rng);
        const ExactReal b = random_real(rng);
        const ExactReal c = random_real(rng);
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a - a, ExactReal());
        ASSERT_EQ(field_arith(a, b, ArithOp::neg), -a);
    }
}

TEST(ExactReal, FloorFracCircleNorm)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 500; ++t) {
        const ExactReal x = random_real(rng);
        const ExactReal f = frac(x);
        ASSERT_EQ(ExactReal(floor_exact(x)) + f, x);
        ASSERT_GE(sign(f), 0);
        ASSERT_LT(compare(f, ExactReal(1)), 0);
        const ExactReal c = circle_norm(x);
        ASSERT_GE(sign(c), 0);
        ASSERT_LE(compare(c, ExactReal(Rational(1, 2))), 0);
        const ExactReal other = ExactReal(1) - f;
        ASSERT_TRUE(c == f || c == other);
        ASSERT_LE(compare(c, f), 0);
        ASSERT_LE(compare(c, other), 0);
    }
}

TEST(ExactReal, SignAndCompare)
{
    // (sqrt(2) + sqrt(3))^2 = 5 + 2 sqrt(6) < 10 since 24 < 25.
    EXPECT_EQ(compare(ExactReal::sqrt(2) + ExactReal::sqrt(3), ExactReal::sqrt(10)), -1);
    EXPECT_EQ(compare(ExactReal::sqrt(10), ExactReal::sqrt(2) + ExactReal::sqrt(3)), 1);
    // 99^2 = 9801 > 2 * 70^2 = 9800
    EXPECT_EQ(sign(ExactReal::sqrt(2) - ExactReal(Rational(99, 70))), -1);
    EXPECT_EQ(sign(ExactReal(Rational(99, 70)) - ExactReal(Rational(140, 99)) - ExactReal()), 1);
    EXPECT_EQ(sign(ExactReal(Rational(140, 99)) - ExactReal::sqrt(2)), -1);
}

TEST(ExactReal, RejectsNonSquarefree)
{
    EXPECT_THROW(ExactReal::sqrt(4), DomainError);
    EXPECT_THROW(ExactReal::sqrt(1), DomainError);
    EXPECT_THROW(ExactReal::sqrt(12), DomainError);
}

TEST(ExactReal, RefinementCapIsRespected)
{
    // x = sqrt(2) - floor(sqrt(2) 2^200) / 2^200 lies in (0, 2^-200).
    Integer scaled;
    Integer two_shifted = Integer(2) << 400;
    mpz_sqrt(scaled.get_mpz_t(), two_shifted.get_mpz_t());
    const ExactReal x = ExactReal::sqrt(2) - ExactReal(Rational(scaled, Integer(1) << 200));
    const unsigned old = refinement_cap();
    set_refinement_cap(64);
    EXPECT_THROW(floor_exact(x), RefinementBudgetExceeded);
    set_refinement_cap(old);
    EXPECT_EQ(floor_exact(x), 0);
    EXPECT_EQ(sign(x), 1);
}

TEST(ExactReal, TextForms)
{
    const ExactReal x = ExactReal(Rational(1, 2)) + ExactReal(3) * ExactReal::sqrt(2);
    EXPECT_EQ(to_string(x), "1/2 + 3*sqrt(2)");
    EXPECT_EQ(to_string(-ExactReal::sqrt(5)), "-sqrt(5)");
    EXPECT_EQ(to_decimal(ExactReal::sqrt(2), 6), "1.41421");
    EXPECT_EQ(to_decimal(ExactReal(12)), "12");
}

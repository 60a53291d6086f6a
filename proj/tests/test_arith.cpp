#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "polya/arith.hpp"

using namespace polya;

TEST(Arith, IsPrimeExamples)
{
    EXPECT_TRUE(is_prime(std::uint64_t{17}));
    EXPECT_FALSE(is_prime(std::uint64_t{1}));
    EXPECT_FALSE(is_prime(std::uint64_t{2091}));
    EXPECT_FALSE(is_prime(std::uint64_t{0}));
    EXPECT_TRUE(is_prime(std::uint64_t{2}));
}

TEST(Arith, IsPrimeMatchesTrialDivisionToOneMillion)
{
    for (std::uint64_t n = 0; n <= 1'000'000; ++n)
        ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
}

TEST(Arith, IsPrimeLargeValues)
{
    // Strong pseudoprimes to several small bases.
    EXPECT_FALSE(is_prime(std::uint64_t{3215031751}));
    EXPECT_FALSE(is_prime(std::uint64_t{3825123056546413051ULL}));
    EXPECT_TRUE(is_prime(std::uint64_t{18446744073709551557ULL}));
    EXPECT_TRUE(is_prime(mpz_class("170141183460469231731687303715884105727")));   // 2^127 - 1
    EXPECT_FALSE(is_prime(mpz_class("170141183460469231731687303715884105729")));
}

TEST(Arith, FactorExamples)
{
    auto f = factor(std::int64_t{84});
    ASSERT_EQ(f.factors.size(), 3u);
    EXPECT_EQ(f.factors[0], (PrimePower{2, 2}));
    EXPECT_EQ(f.factors[1], (PrimePower{3, 1}));
    EXPECT_EQ(f.factors[2], (PrimePower{7, 1}));
    EXPECT_TRUE(factor(std::int64_t{1}).factors.empty());

    auto g = factor(std::int64_t{1680});
    std::vector<PrimePower> want{{2, 4}, {3, 1}, {5, 1}, {7, 1}};
    EXPECT_EQ(g.factors, want);
}

TEST(Arith, FactorRoundTripsToOneMillion)
{
    for (std::int64_t n = 1; n <= 1'000'000; ++n) {
        auto f = factor(n);
        ASSERT_EQ(f.product(), n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            ASSERT_TRUE(is_prime(f.factors[i].prime));
            ASSERT_GE(f.factors[i].exponent, 1u);
            if (i)
                ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
        }
    }
}

TEST(Arith, FactorMatchesTrialDivisionSample)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t n = rng() % 10'000'000'000ULL + 1;
        auto f = factor(mpz_class(std::to_string(n)));
        auto g = oracle::factor(n);
        ASSERT_EQ(f.factors.size(), g.size()) << n;
        for (std::size_t j = 0; j < g.size(); ++j) {
            EXPECT_EQ(f.factors[j].prime, mpz_class(std::to_string(g[j].first)));
            EXPECT_EQ(f.factors[j].exponent, g[j].second);
        }
    }
}

TEST(Arith, FactorSemiprimeBeyondSieve)
{
    mpz_class p("1000000000039"), q("1000000000061");
    auto f = factor(mpz_class(p * q * q));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0], (PrimePower{p, 1}));
    EXPECT_EQ(f.factors[1], (PrimePower{q, 2}));
}

TEST(Arith, FactorBudgetIsEnforced)
{
    // Two 30-digit primes: rho needs far more than 10 iterations.
    mpz_class n = mpz_class("100000000000000000000000000067") * mpz_class("100000000000000000000000000331");
    EXPECT_THROW(factor(n, FactorBudget{10}), BudgetExceeded);
}

TEST(Arith, FactorRejectsNonPositive)
{
    EXPECT_THROW(factor(std::int64_t{0}), std::invalid_argument);
    EXPECT_THROW(factor(std::int64_t{-6}), std::invalid_argument);
}

TEST(Arith, SquarefreePartExamples)
{
    EXPECT_EQ(squarefree_part(std::int64_t{18}), 2);
    EXPECT_EQ(squarefree_part(std::int64_t{-12}), -3);
    EXPECT_EQ(squarefree_part(std::int64_t{6}), 6);
    EXPECT_EQ(squarefree_part(std::int64_t{1}), 1);
    EXPECT_EQ(squarefree_part(std::int64_t{-1}), -1);
    EXPECT_THROW(squarefree_part(std::int64_t{0}), std::invalid_argument);
}

TEST(Arith, SquarefreePartIgnoresSquares)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        std::int64_t n = static_cast<std::int64_t>(rng() % 200'000) + 1;
        std::int64_t k = static_cast<std::int64_t>(rng() % 3000) + 1;
        if (rng() % 2)
            n = -n;
        ASSERT_EQ(squarefree_part(n * k * k), squarefree_part(n));
        ASSERT_EQ(squarefree_part(n), oracle::kernel(n));
    }
}

TEST(Arith, JacobiExamples)
{
    EXPECT_EQ(jacobi(5, 17), -1);
    EXPECT_EQ(jacobi(17, 41), -1);
    for (std::int64_t n = 1; n < 200; n += 2)
        EXPECT_EQ(jacobi(1, n), 1);
    EXPECT_EQ(jacobi(0, 1), 1);
    EXPECT_EQ(jacobi(6, 3), 0);
    EXPECT_EQ(jacobi(-1, 7), -1);
}

TEST(Arith, JacobiRejectsEvenOrNonPositive)
{
    EXPECT_THROW(jacobi(3, 8), std::invalid_argument);
    EXPECT_THROW(jacobi(3, 0), std::invalid_argument);
    EXPECT_THROW(jacobi(3, -5), std::invalid_argument);
}

TEST(Arith, JacobiMatchesEnumeratedLegendre)
{
    for (std::int64_t p : primes_up_to(400)) {
        if (p == 2)
            continue;
        for (std::int64_t a = -50; a < 2 * p; ++a)
            ASSERT_EQ(jacobi(a, p), oracle::legendre(a, p)) << a << "/" << p;
    }
}

TEST(Arith, JacobiIsMultiplicative)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20000; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 100000) - 50000;
        std::int64_t b = static_cast<std::int64_t>(rng() % 100000) - 50000;
        std::int64_t n = static_cast<std::int64_t>(rng() % 50000) * 2 + 1;
        ASSERT_EQ(jacobi(a * b, n), jacobi(a, n) * jacobi(b, n));
    }
}

TEST(Arith, SquareHelpers)
{
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(15), 3);
    EXPECT_EQ(isqrt(16), 4);
    EXPECT_EQ(isqrt(999999999999LL), 999999);
    EXPECT_TRUE(is_square(std::int64_t{144}));
    EXPECT_FALSE(is_square(std::int64_t{-4}));
    EXPECT_TRUE(is_square(mpz_class("1000000000000000000000000000000")));
    EXPECT_TRUE(is_squarefree(30));
    EXPECT_FALSE(is_squarefree(12));
    EXPECT_EQ(primes_up_to(20), (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "polya/errors.hpp"

namespace polya {

struct FactorBudget {
    /// Pollard-Brent iterations allowed per call to factor().
    std::uint64_t rho_iterations = 20'000'000;
};

struct PrimePower {
    mpz_class prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    mpz_class value;
    std::vector<PrimePower> factors;   // strictly increasing primes

    mpz_class product() const;
    std::vector<mpz_class> primes() const;
};

bool is_prime(std::uint64_t n);
bool is_prime(const mpz_class& n);

/// Complete factorization of n >= 1; factor(1) is empty.
Factorization factor(const mpz_class& n, const FactorBudget& budget = {});
Factorization factor(std::int64_t n, const FactorBudget& budget = {});

/// Sign-preserving squarefree kernel: n = s * k^2. squarefree_part(+-1) = +-1.
mpz_class squarefree_part(const mpz_class& n, const FactorBudget& budget = {});
std::int64_t squarefree_part(std::int64_t n, const FactorBudget& budget = {});

bool is_squarefree(std::int64_t n);

/// Jacobi symbol (a/n) for odd n >= 1. Throws std::invalid_argument otherwise.
int jacobi(std::int64_t a, std::int64_t n);

/// Primes <= limit in increasing order.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);
bool is_square(const mpz_class& n);

/// Nonnegative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::string to_string(const mpz_class& n);

}  // namespace polya

#include "polya/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polya {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a)
{
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool fits_u64(const mpz_class& n)
{
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const mpz_class& n)
{
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
    return out;
}

mpz_class from_u64(std::uint64_t v)
{
    mpz_class out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return out;
}

/* Pollard-Brent rho. Returns a nontrivial factor of composite n, consuming
 * iterations from the shared budget. */
mpz_class rho_split(const mpz_class& n, std::uint64_t& remaining)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, x, ys, q = 1, g = 1, t;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        auto step = [&](mpz_class& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                step(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                if (remaining < lim)
                    throw BudgetExceeded("factoring budget exhausted on " + n.get_str());
                remaining -= lim;
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    t = x - y;
                    q = (q * abs(t)) % n;
                }
                g = gcd(q, n);
                k += lim;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                t = x - ys;
                g = gcd(abs(t), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
        // unlucky cycle; retry with the next constant
    }
}

void split_into(const mpz_class& n, std::map<mpz_class, unsigned>& out, std::uint64_t& remaining)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        split_into(root, out, remaining);
        split_into(root, out, remaining);
        return;
    }
    mpz_class d = rho_split(n, remaining);
    split_into(d, out, remaining);
    split_into(mpz_class(n / d), out, remaining);
}

}  // namespace

mpz_class Factorization::product() const
{
    mpz_class p = 1;
    for (auto const& f : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        p *= pe;
    }
    return p;
}

std::vector<mpz_class> Factorization::primes() const
{
    std::vector<mpz_class> out;
    out.reserve(factors.size());
    for (auto const& f : factors)
        out.push_back(f.prime);
    return out;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n % p == 0)
            return n == p;
    }
    for (std::uint64_t a : bases) {
        if (!strong_probable_prime(n, a))
            return false;
    }
    return true;
}

bool is_prime(const mpz_class& n)
{
    if (sgn(n) <= 0)
        return false;
    if (fits_u64(n))
        return is_prime(to_u64(n));
    // GMP >= 6.2 runs Baillie-PSW here.
    return mpz_probab_prime_p(n.get_mpz_t(), 25) > 0;
}

Factorization factor(const mpz_class& n, const FactorBudget& budget)
{
    if (sgn(n) <= 0)
        throw std::invalid_argument("factor: n must be >= 1, got " + n.get_str());
    Factorization result;
    result.value = n;

    std::map<mpz_class, unsigned> found;
    mpz_class rem = n;
    for (std::uint32_t p : small_primes()) {
        if (fits_u64(rem)) {
            std::uint64_t r = to_u64(rem);
            if (std::uint64_t(p) * p > r)
                break;
            if (r % p)
                continue;
            unsigned e = 0;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            found[mpz_class(p)] += e;
            rem = from_u64(r);
        } else {
            if (!mpz_divisible_ui_p(rem.get_mpz_t(), p))
                continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
                mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
                ++e;
            }
            found[mpz_class(p)] += e;
        }
    }
    if (rem > 1) {
        std::uint64_t remaining = budget.rho_iterations;
        split_into(rem, found, remaining);
    }
    for (auto const& [p, e] : found)
        result.factors.push_back({p, e});
    return result;
}

Factorization factor(std::int64_t n, const FactorBudget& budget)
{
    return factor(mpz_class(static_cast<long>(n)), budget);
}

mpz_class squarefree_part(const mpz_class& n, const FactorBudget& budget)
{
    if (sgn(n) == 0)
        throw std::invalid_argument("squarefree_part: n must be nonzero");
    mpz_class s = sgn(n) < 0 ? -1 : 1;
    for (auto const& f : factor(mpz_class(abs(n)), budget).factors) {
        if (f.exponent % 2)
            s *= f.prime;
    }
    return s;
}

std::int64_t squarefree_part(std::int64_t n, const FactorBudget& budget)
{
    return squarefree_part(mpz_class(static_cast<long>(n)), budget).get_si();
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    for (auto const& f : factor(n < 0 ? -n : n).factors) {
        if (f.exponent > 1)
            return false;
    }
    return true;
}

int jacobi(std::int64_t a, std::int64_t n)
{
    if (n <= 0 || n % 2 == 0)
        throw std::invalid_argument("jacobi: modulus must be odd and positive, got " + std::to_string(n));
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit)
{
    std::vector<std::int64_t> out;
    if (limit < 2)
        return out;
    if (limit <= static_cast<std::int64_t>(kTrialLimit)) {
        for (std::uint32_t p : small_primes()) {
            if (p > limit)
                break;
            out.push_back(p);
        }
        return out;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(std::int64_t n)
{
    if (n < 0)
        return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

bool is_square(const mpz_class& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

std::string to_string(const mpz_class& n)
{
    return n.get_str();
}

}  // namespace polya

#pragma once

// Slow, independent reference computations used only by the tests.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0)
            return false;
    return true;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        unsigned e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        if (e)
            out.emplace_back(f, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline bool is_squarefree(std::int64_t n)
{
    for (auto const& [p, e] : factor(static_cast<std::uint64_t>(n < 0 ? -n : n)))
        if (e > 1)
            return false;
    return n != 0;
}

/// Sign-preserving squarefree kernel by trial division.
inline std::int64_t kernel(std::int64_t n)
{
    std::int64_t k = n < 0 ? -1 : 1;
    for (auto const& [p, e] : factor(static_cast<std::uint64_t>(n < 0 ? -n : n)))
        if (e % 2)
            k *= static_cast<std::int64_t>(p);
    return k;
}

/// Legendre symbol by listing the squares mod p.
inline int legendre(std::int64_t a, std::int64_t p)
{
    std::int64_t r = ((a % p) + p) % p;
    if (r == 0)
        return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r)
            return 1;
    return -1;
}

inline bool is_square(const mpz_class& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

/* Some (x, y) with x^2 - d y^2 = target and y <= ybound, found by a plain scan.
 * With congruent set, only x = y (mod 2) counts. */
inline std::optional<std::pair<mpz_class, mpz_class>>
scan_norm(std::int64_t d, std::int64_t target, std::uint64_t ybound, bool congruent)
{
    for (std::uint64_t y = 0; y <= ybound; ++y) {
        mpz_class x2 = mpz_class(static_cast<long>(target)) + mpz_class(static_cast<long>(d)) * y * y;
        if (!is_square(x2))
            continue;
        mpz_class x = sqrt(x2);
        if (congruent && (x % 2 != y % 2))
            continue;
        return std::make_pair(x, mpz_class(static_cast<unsigned long>(y)));
    }
    return std::nullopt;
}

/* Integral element of Q(sqrt d), d > 1, with norm c. A solution exists iff one
 * exists with y <= sqrt(|N| U / d), U the least unit > 1 of norm +1; this searches both
 * the integral and the half-integral lattice up to that bound. Nothing is
 * returned when the bound exceeds the cap (the caller must skip). */
struct NormScan {
    bool decided = false;
    bool solvable = false;
};

inline NormScan norm_by_unit_bound(std::int64_t d, std::int64_t c, double log_unit, std::uint64_t cap)
{
    const bool half = ((d % 4) + 4) % 4 == 1;
    const std::int64_t target = half ? 4 * c : c;
    double logb = 0.5 * (std::log(std::fabs(double(target))) + log_unit - std::log(double(d)));
    if (logb > std::log(double(cap)))
        return {};
    auto bound = static_cast<std::uint64_t>(std::ceil(std::exp(logb))) + 1;
    return {true, scan_norm(d, target, bound, half).has_value()};
}

/* Smallest unit (z + t sqrt d)/denom > 1 of the maximal order with t < tcap,
 * by scanning t; nothing if none below the cap. */
struct SmallUnit {
    mpz_class z, t;
    int denom = 1;
    int norm = 1;
};

inline std::optional<SmallUnit> scan_unit(std::int64_t d, std::uint64_t tcap)
{
    const bool half = ((d % 4) + 4) % 4 == 1;
    for (std::uint64_t t = 1; t < tcap; ++t) {
        // For fixed t the smaller norm (-1 first) gives the smaller unit.
        for (int norm : {-1, 1}) {
            if (half) {
                mpz_class x2 = mpz_class(4 * norm) + mpz_class(static_cast<long>(d)) * t * t;
                if (is_square(x2)) {
                    mpz_class x = sqrt(x2);
                    if (x % 2 == t % 2) {
                        SmallUnit u{x, mpz_class(static_cast<unsigned long>(t)), 2, norm};
                        if (x % 2 == 0) {
                            u.z /= 2;
                            u.t /= 2;
                            u.denom = 1;
                        }
                        return u;
                    }
                }
            } else {
                mpz_class x2 = mpz_class(norm) + mpz_class(static_cast<long>(d)) * t * t;
                if (is_square(x2))
                    return SmallUnit{sqrt(x2), mpz_class(static_cast<unsigned long>(t)), 1, norm};
            }
        }
    }
    return std::nullopt;
}

/// V_k(x, N): trace of eta^k for eta of trace x and norm N.
inline mpz_class lucas_v(const mpz_class& x, int norm, unsigned k)
{
    mpz_class v0 = 2, v1 = x;
    for (unsigned i = 1; i < k; ++i) {
        mpz_class v2 = x * v1 - norm * v0;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    return k == 0 ? mpz_class(2) : v1;
}

/* True when the unit u = (z + t sqrt d)/denom is a k-th power (k prime >= 2) of
 * some unit of the maximal order. The root's trace x solves V_k(x, N) = tr(u),
 * found by bisection, and must satisfy x^2 - 4N = d w^2 with the right parity. */
inline bool is_proper_power(std::int64_t d, const mpz_class& z, int denom, int norm)
{
    const mpz_class trace = 2 * z / denom;
    const bool half = ((d % 4) + 4) % 4 == 1;
    const std::size_t bits = mpz_sizeinbase(trace.get_mpz_t(), 2);
    // The smallest unit exceeds 1.6, so k <= log(u) / log(1.6) < 1.5 * bits + 2.
    const unsigned kmax = static_cast<unsigned>(1.5 * double(bits)) + 2;
    for (unsigned k = 2; k <= kmax; ++k) {
        if (!is_prime(k))
            continue;
        for (int n : {-1, 1}) {
            int pow_norm = (k % 2) ? n : 1;
            if (pow_norm != norm)
                continue;
            mpz_class lo = n == 1 ? 3 : 1, hi = trace;
            if (lo > hi)
                continue;
            while (lo < hi) {
                mpz_class mid = (lo + hi) / 2;
                if (lucas_v(mid, n, k) < trace)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lucas_v(lo, n, k) != trace)
                continue;
            mpz_class w2 = lo * lo - 4 * n;
            if (w2 % d != 0 || !is_square(mpz_class(w2 / d)))
                continue;
            mpz_class w = sqrt(mpz_class(w2 / d));
            bool integral = half ? (lo % 2 == w % 2) : (lo % 2 == 0 && w % 2 == 0);
            if (integral)
                return true;
        }
    }
    return false;
}

}  // namespace oracle

#include "polya/sqclass.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace polya {

SquareClass SquareClass::from_support(int sign, std::vector<mpz_class> primes)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("SquareClass: sign must be +1 or -1");
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        throw std::invalid_argument("SquareClass: repeated prime in support");
    SquareClass c;
    c.sign_ = sign;
    c.primes_ = std::move(primes);
    return c;
}

mpz_class SquareClass::kernel() const
{
    mpz_class k = 1;
    for (auto const& p : primes_)
        k *= p;
    return k;
}

mpz_class SquareClass::representative() const
{
    return sign_ * kernel();
}

std::string SquareClass::str() const
{
    return "[" + representative().get_str() + "]";
}

SquareClass class_of(const mpz_class& n, const FactorBudget& budget)
{
    if (sgn(n) == 0)
        throw std::invalid_argument("class_of: zero has no square class");
    std::vector<mpz_class> odd;
    for (auto const& f : factor(mpz_class(abs(n)), budget).factors) {
        if (f.exponent % 2)
            odd.push_back(f.prime);
    }
    return SquareClass::from_support(sgn(n), std::move(odd));
}

SquareClass class_of(std::int64_t n, const FactorBudget& budget)
{
    return class_of(mpz_class(static_cast<long>(n)), budget);
}

SquareClass class_of(const mpz_class& n, std::span<const std::int64_t> hint_primes,
                     const FactorBudget& budget)
{
    if (sgn(n) == 0)
        throw std::invalid_argument("class_of: zero has no square class");
    mpz_class rest = abs(n);
    std::vector<mpz_class> odd;
    for (std::int64_t p : hint_primes) {
        if (p < 2)
            continue;
        unsigned long up = static_cast<unsigned long>(p);
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), up)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), up);
            ++e;
        }
        if (e % 2)
            odd.push_back(mpz_class(up));
    }
    if (!is_square(rest)) {
        // Support lies outside the hints; pay for a real factorization.
        SquareClass tail = class_of(rest, budget);
        for (auto const& p : tail.support())
            odd.push_back(p);
    }
    return SquareClass::from_support(sgn(n), std::move(odd));
}

SquareClass mul(const SquareClass& a, const SquareClass& b)
{
    std::vector<mpz_class> out;
    std::set_symmetric_difference(a.support().begin(), a.support().end(),
                                  b.support().begin(), b.support().end(),
                                  std::back_inserter(out));
    return SquareClass::from_support(a.sign() * b.sign(), std::move(out));
}

namespace {

using Row = std::vector<std::uint64_t>;

bool test_bit(const Row& r, std::size_t i) { return (r[i / 64] >> (i % 64)) & 1; }
void set_bit(Row& r, std::size_t i) { r[i / 64] |= std::uint64_t(1) << (i % 64); }

void xor_into(Row& dst, const Row& src)
{
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] ^= src[i];
}

bool is_zero(const Row& r)
{
    return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t lowest_bit(const Row& r)
{
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i])
            return i * 64 + std::countr_zero(r[i]);
    }
    return r.size() * 64;
}

// Returns false if c has support outside the coordinates.
bool encode(const SquareClass& c, const std::vector<mpz_class>& coords, Row& out)
{
    out.assign((coords.size() + 63) / 64, 0);
    if (c.sign() < 0)
        set_bit(out, 0);
    for (auto const& p : c.support()) {
        auto it = std::lower_bound(coords.begin() + 1, coords.end(), p);
        if (it == coords.end() || *it != p)
            return false;
        set_bit(out, static_cast<std::size_t>(it - coords.begin()));
    }
    return true;
}

void reduce(Row& r, const std::vector<Row>& basis)
{
    for (auto const& b : basis) {
        if (test_bit(r, lowest_bit(b)))
            xor_into(r, b);
    }
}

}  // namespace

bool SquareClassSubgroup::contains(const SquareClass& c) const
{
    Row r;
    if (!encode(c, coordinates, r))
        return false;
    reduce(r, basis);
    return is_zero(r);
}

SquareClassSubgroup subgroup_order(std::span<const SquareClass> gens)
{
    SquareClassSubgroup g;
    g.generators.assign(gens.begin(), gens.end());

    // Coordinate 0 is the sign; primes follow in increasing order.
    std::vector<mpz_class> primes;
    for (auto const& c : gens)
        primes.insert(primes.end(), c.support().begin(), c.support().end());
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    g.coordinates.push_back(0);
    g.coordinates.insert(g.coordinates.end(), primes.begin(), primes.end());

    for (auto const& c : gens) {
        Row r;
        encode(c, g.coordinates, r);
        reduce(r, g.basis);
        if (is_zero(r))
            continue;
        std::size_t pivot = lowest_bit(r);
        for (auto& b : g.basis) {
            if (test_bit(b, pivot))
                xor_into(b, r);
        }
        g.basis.push_back(std::move(r));
    }
    std::sort(g.basis.begin(), g.basis.end(),
              [](const Row& a, const Row& b) { return lowest_bit(a) < lowest_bit(b); });
    if (g.basis.size() >= 64)
        throw std::overflow_error("subgroup_order: rank too large");
    g.order = std::uint64_t(1) << g.basis.size();
    return g;
}

}  // namespace polya

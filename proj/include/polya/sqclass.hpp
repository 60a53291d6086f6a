#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polya/arith.hpp"

namespace polya {

/* An element of the group Q^* modulo squares: a sign and a squarefree positive kernel,
 * kept as its sorted prime support so that multiplication is a symmetric difference. */
class SquareClass {
public:
    SquareClass() = default;

    static SquareClass identity() { return {}; }
    /// Build directly from a sign and a list of distinct primes.
    static SquareClass from_support(int sign, std::vector<mpz_class> primes);

    int sign() const { return sign_; }
    mpz_class kernel() const;
    const std::vector<mpz_class>& support() const { return primes_; }
    bool is_identity() const { return sign_ == 1 && primes_.empty(); }

    /// Signed representative sign * kernel.
    mpz_class representative() const;
    std::string str() const;

    bool operator==(const SquareClass&) const = default;
    auto operator<=>(const SquareClass& o) const
    {
        if (auto c = sign_ <=> o.sign_; c != 0)
            return c;
        if (primes_.size() != o.primes_.size())
            return primes_.size() <=> o.primes_.size();
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            int c = cmp(primes_[i], o.primes_[i]);
            if (c != 0)
                return c <=> 0;
        }
        return std::strong_ordering::equal;
    }

private:
    int sign_ = 1;
    std::vector<mpz_class> primes_;
};

SquareClass class_of(const mpz_class& n, const FactorBudget& budget = {});
SquareClass class_of(std::int64_t n, const FactorBudget& budget = {});

/* class_of for numbers known to be (a square) x (a product of the hinted
 * primes). Dividing out the hints and testing the cofactor for squareness
 * avoids factoring huge values; anything else falls back to factor(). */
SquareClass class_of(const mpz_class& n, std::span<const std::int64_t> hint_primes,
                     const FactorBudget& budget = {});

SquareClass mul(const SquareClass& a, const SquareClass& b);
inline SquareClass operator*(const SquareClass& a, const SquareClass& b) { return mul(a, b); }

struct SquareClassSubgroup {
    std::vector<SquareClass> generators;
    /// Coordinate labels: 0 stands for the sign (-1), anything else is a prime.
    std::vector<mpz_class> coordinates;
    /// Reduced row-echelon basis, one bit per coordinate.
    std::vector<std::vector<std::uint64_t>> basis;
    std::uint64_t order = 1;

    std::size_t rank() const { return basis.size(); }
    /// True if c lies in the span of the generators.
    bool contains(const SquareClass& c) const;
};

SquareClassSubgroup subgroup_order(std::span<const SquareClass> gens);

}  // namespace polya

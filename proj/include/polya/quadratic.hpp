#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polya/arith.hpp"
#include "polya/sqclass.hpp"

namespace polya {

enum class Verdict { polya, not_polya, undecided, outside_proposition };

std::string_view to_string(Verdict v);

struct QuadraticField {
    std::int64_t d = 0;
    std::int64_t discriminant = 0;
    std::vector<std::int64_t> ramified_primes;
};

/// Validates d (squarefree, d != 0, 1) and fills in the discriminant data.
QuadraticField make_quadratic_field(std::int64_t d);

struct ContinuedFraction {
    std::int64_t d = 0;
    std::vector<std::int64_t> preperiod;   // {floor(sqrt d)}
    std::vector<std::int64_t> period;      // ends with 2 * floor(sqrt d)
    std::vector<std::int64_t> p_values;    // P_i paired with q_values, one period
    std::vector<std::int64_t> q_values;
};

/// Periodic continued fraction of sqrt(d); d >= 2 not a perfect square.
ContinuedFraction cf_expand(std::int64_t d);

/* The unit (z + t sqrt d) / denom > 1 generating the units of the maximal
 * order modulo +-1. z^2 - d t^2 = norm * denom^2. */
struct FundamentalUnit {
    std::int64_t d = 0;
    mpz_class z;
    mpz_class t;
    int denom = 1;
    int norm = 1;
    std::size_t period_length = 0;   // period of the expansion that produced it

    double log_value() const;
    std::string str() const;
};

/// Memoized; safe to call from concurrent workers.
FundamentalUnit fundamental_unit(std::int64_t d);

/// Square class of a_i: [1] for a norm -1 unit, otherwise [N(u + 1)].
SquareClass a_value(std::int64_t d, const FactorBudget& budget = {});

struct NormBudget {
    /// Continued-fraction steps allowed per norm_equation call.
    std::uint64_t cf_steps = 10'000'000;
};

struct NormEquationSolution {
    std::int64_t d = 0;
    std::int64_t c = 0;
    mpz_class x;
    mpz_class y;
    int denom = 1;

    /// (x^2 - d y^2) / denom^2, recomputed exactly.
    mpz_class norm() const;
};

/* Some integral solution (x >= 0, y >= 0) of x^2 - D y^2 = N for D > 0 not a
 * square, or nothing when none exists. Throws Undecided on budget exhaustion. */
std::optional<std::pair<mpz_class, mpz_class>>
solve_norm_form(std::int64_t D, std::int64_t N, const NormBudget& budget = {});

/// Element of the maximal order of Q(sqrt d), d > 1, with norm exactly c.
std::optional<NormEquationSolution>
norm_equation(std::int64_t d, std::int64_t c, const NormBudget& budget = {});

struct ZantemaVerdict {
    Verdict verdict = Verdict::not_polya;
    int matched_case = 0;   // 1..5 when Polya, 0 otherwise
    std::string label;
};

ZantemaVerdict zantema_classify(std::int64_t d);

struct RamifiedPrimeCheck {
    std::int64_t prime = 0;
    Verdict principal = Verdict::undecided;   // polya == principal
    std::optional<NormEquationSolution> generator;
};

struct OracleReport {
    std::int64_t d = 0;
    Verdict verdict = Verdict::undecided;
    std::vector<RamifiedPrimeCheck> primes;
};

/* Independent of zantema_classify: Polya iff every ramified prime ideal is
 * principal, i.e. some integral element has norm +-l for every ramified l. */
OracleReport quadratic_polya_oracle(std::int64_t d, const NormBudget& budget = {});

struct DirichletReport {
    std::int64_t r = 0;
    std::int64_t s = 0;
    int legendre = 0;             // (r/s), 0 if s = 2
    bool literal_applies = false; // (r/s) = -1 alone
    bool applies = false;         // additionally r = s = 1 (mod 4)
    int norm = 0;                 // norm of the fundamental unit of Q(sqrt rs)
    bool consistent = false;      // !applies || norm == -1
    bool literal_consistent = false;
};

DirichletReport dirichlet_norm_criterion(std::int64_t r, std::int64_t s);

}  // namespace polya

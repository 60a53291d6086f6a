#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polya/biquad.hpp"

namespace polya {

enum class TheoremId { t1, t2, t3 };

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view s);

/// (p, q, r) for T1/T2; (p, q) with r = 0 for T3, whose fixed kernel is 2.
struct PrimeTriple {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t r = 0;

    bool operator==(const PrimeTriple&) const = default;
    auto operator<=>(const PrimeTriple&) const = default;
    std::string str() const;
};

struct Budgets {
    FactorBudget factor;
    NormBudget normeq;
};

struct Condition {
    std::string name;
    bool ok = false;
};

struct HypothesisCheck {
    bool ok = false;
    std::vector<Condition> conditions;
};

HypothesisCheck hypotheses_t1(std::int64_t p, std::int64_t q, std::int64_t r);
HypothesisCheck hypotheses_t2(std::int64_t p, std::int64_t q, std::int64_t r);
HypothesisCheck hypotheses_t3(std::int64_t p, std::int64_t q);
HypothesisCheck hypotheses(TheoremId id, const PrimeTriple& t);

/* For a norm +1 unit (z + t sqrt d)/delta: with g = gcd(z - delta, z + delta),
 * (z - delta)/g = n^2 eta and (z + delta)/g = m^2 epsilon, epsilon * eta = d. */
struct EpsilonWitness {
    std::int64_t d = 0;
    mpz_class z;
    mpz_class t;
    int delta = 1;
    int g = 1;
    mpz_class m;
    mpz_class n;
    std::int64_t epsilon = 0;
    std::int64_t eta = 0;
    std::string case_label;
    bool reconstructs = false;     // every identity of the case holds exactly
    bool matches_a_value = false;  // [a] = [2 g eps] (delta 1) or [g eps] (delta 2)
};

/// Throws Inapplicable when the unit of Q(sqrt d) has norm -1.
EpsilonWitness epsilon_witness(std::int64_t d, const FactorBudget& budget = {});

/* Facts about the unit z + t sqrt p of Q(sqrt p), p = 3 (mod 4): 1 + z and t are
 * odd, 1 + z is a square (p = 7 mod 8) or p times a square (p = 3 mod 8). */
struct UnitParityCheck {
    std::int64_t p = 0;
    bool one_plus_z_odd = false;
    bool t_odd = false;
    bool shape_ok = false;

    bool ok() const { return one_plus_z_odd && t_odd && shape_ok; }
};

UnitParityCheck unit_parity_check(std::int64_t p);

struct TheoremReport {
    TheoremId id = TheoremId::t1;
    PrimeTriple triple;
    HypothesisCheck hypotheses;
    std::optional<PolyaReport> field;
    std::vector<EpsilonWitness> witnesses;   // every norm +1 kernel
    std::optional<bool> epsilon_in_allowed_set;
    std::vector<std::int64_t> allowed_epsilons;
    bool claim_matches = false;              // po_order == 2
    std::vector<std::string> anomalies;
    std::optional<std::string> undecided;
};

/// Kernel pair presenting the theorem's field: (p, qr) or (2, pq).
std::pair<std::int64_t, std::int64_t> theorem_field(TheoremId id, const PrimeTriple& t);

/* Recomputes everything the proof asserts and records divergences as anomalies.
 * Without force, failing hypotheses stop before any field computation. */
TheoremReport verify_theorem(TheoremId id, const PrimeTriple& t, const Budgets& budgets = {},
                             bool force = false);

/// Admissible triples with every prime <= bound, lexicographic in (p, q, r).
std::vector<PrimeTriple> admissible(TheoremId id, std::int64_t bound);

/// Reports arrive at sink in enumeration order whatever the number of jobs.
void scan(TheoremId id, std::int64_t bound, unsigned jobs, const Budgets& budgets,
          const std::function<void(const TheoremReport&)>& sink);
std::vector<TheoremReport> scan(TheoremId id, std::int64_t bound, unsigned jobs = 1,
                                const Budgets& budgets = {});

/// Runs verify_theorem over triples on a pool, preserving input order.
std::vector<TheoremReport> verify_many(TheoremId id, const std::vector<PrimeTriple>& triples,
                                       unsigned jobs = 1, const Budgets& budgets = {},
                                       bool force = false);

/// The 20 reference (p, q) pairs for Q(sqrt 2, sqrt pq).
const std::vector<PrimeTriple>& table_rows();

struct TableRow {
    PrimeTriple triple;
    TheoremReport report;
    bool ok = false;   // hypotheses hold and po_order == 2
};

std::vector<TableRow> verify_table(unsigned jobs = 1, const Budgets& budgets = {});

/// Triples sometimes cited as t1 examples: (3, 17, 29), (3, 29, 41), (3, 29, 113).
const std::vector<PrimeTriple>& named_t1_examples();

struct ContrastReport {
    PrimeTriple triple;
    HypothesisCheck precondition;   // p = q = 3 (mod 4), r = 5 (mod 8), distinct primes
    std::optional<PolyaReport> field;
    bool matches = false;           // po_order == 1
    std::vector<std::string> anomalies;
};

ContrastReport contrast_rajaei(std::int64_t p, std::int64_t q, std::int64_t r,
                               const Budgets& budgets = {});

/// Admissible contrast triples with every prime <= bound, lexicographic.
std::vector<PrimeTriple> contrast_triples(std::int64_t bound);

/* Smallest prime p = 3 (mod 4), then smallest prime q = 1 (mod 4), both
 * nonresidues mod r and at most r - 1. Throws std::invalid_argument unless r
 * is a prime >= 13; nothing is returned if no pair exists. */
std::optional<std::pair<std::int64_t, std::int64_t>> pollack_search(std::int64_t r);

}  // namespace polya

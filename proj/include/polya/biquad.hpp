#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polya/quadratic.hpp"
#include "polya/sqclass.hpp"

namespace polya {

/// Q(sqrt m, sqrt n). deltas holds the three subfield kernels in increasing order.
struct BiquadraticField {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::array<std::int64_t, 3> deltas{};
    bool totally_real = false;

    /// Same field presented by its two smallest kernels.
    BiquadraticField canonical() const;
};

/// (m, n, squarefree_part(mn)); rejects degenerate or non-squarefree input.
std::array<std::int64_t, 3> subfields(std::int64_t m, std::int64_t n);

BiquadraticField make_biquadratic_field(std::int64_t m, std::int64_t n);

struct RamificationProfile {
    std::map<std::int64_t, int> entries;   // l -> e_l in {2, 4}
    std::uint64_t product = 1;

    int exponent(std::int64_t l) const;    // 1 when l is unramified
};

RamificationProfile ramification(const BiquadraticField& k);

/// [D1], [D2], [D3], [a1], [a2], [a3]. Throws SignatureError unless totally real.
std::array<SquareClass, 6> h_generators(const BiquadraticField& k, const FactorBudget& budget = {});

struct H1Order {
    std::uint64_t h_order = 1;
    int index_factor = 1;
    std::uint64_t h1_order = 1;
    bool two_totally_ramified = false;
    /// Common norm s in {2, -2} realised in all three subfields, 0 if none.
    int common_norm = 0;
    std::vector<NormEquationSolution> alphas;
    SquareClassSubgroup h;
};

H1Order h1_order(const BiquadraticField& k, const FactorBudget& fbudget = {},
                 const NormBudget& nbudget = {});

struct PoStructure {
    bool determined = false;
    unsigned rank = 0;   // Po = (Z/2)^rank when determined

    std::string str() const;
};

struct PolyaReport {
    BiquadraticField field;
    RamificationProfile profile;
    std::array<FundamentalUnit, 3> units;
    std::array<int, 3> unit_norms{};
    std::array<SquareClass, 6> h_generators;
    std::uint64_t h_order = 0;
    int index_factor = 0;
    int common_norm = 0;
    std::vector<NormEquationSolution> alphas;
    std::uint64_t h1_order = 0;
    std::uint64_t po_order = 0;
    PoStructure po_structure;
    bool complete = false;   // false: index factor undecided, h1/po left at 0

    bool exact() const { return complete && po_order * h1_order == profile.product; }
};

/// Thrown by polya_report when a norm-equation probe runs out of budget.
class ReportUndecided : public Undecided {
public:
    ReportUndecided(const std::string& what, PolyaReport partial)
        : Undecided(what), partial_(std::move(partial)) {}
    const PolyaReport& partial() const { return partial_; }

private:
    PolyaReport partial_;
};

/// Totally real fields only. The report depends on the field, not its presentation.
PolyaReport polya_report(const BiquadraticField& k, const FactorBudget& fbudget = {},
                         const NormBudget& nbudget = {});

struct LericheVerdict {
    Verdict verdict = Verdict::outside_proposition;
    std::string rule;
};

LericheVerdict leriche_classify(std::int64_t m, std::int64_t n);

}  // namespace polya

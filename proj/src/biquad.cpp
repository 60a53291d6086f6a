#include "polya/biquad.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace polya {

namespace {

bool is_odd_prime(std::int64_t p)
{
    return p > 2 && is_prime(static_cast<std::uint64_t>(p));
}

bool is_prime_3_mod_4(std::int64_t p)
{
    return is_odd_prime(p) && p % 4 == 3;
}

// 2q with q an odd prime.
std::optional<std::int64_t> twice_odd_prime(std::int64_t k)
{
    if (k > 0 && k % 2 == 0 && is_odd_prime(k / 2))
        return k / 2;
    return std::nullopt;
}

bool contains(const std::array<std::int64_t, 3>& ks, std::int64_t v)
{
    return std::find(ks.begin(), ks.end(), v) != ks.end();
}

}  // namespace

std::array<std::int64_t, 3> subfields(std::int64_t m, std::int64_t n)
{
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("biquadratic field (" + std::to_string(m) + ", " +
                                     std::to_string(n) + "): " + why);
    };
    if (m == 1 || n == 1 || m == 0 || n == 0)
        throw bad("kernels must differ from 0 and 1");
    if (!is_squarefree(m) || !is_squarefree(n))
        throw bad("kernels must be squarefree");
    if (m == n)
        throw bad("kernels must be distinct");
    mpz_class prod = mpz_class(static_cast<long>(m)) * static_cast<long>(n);
    mpz_class k = squarefree_part(prod);
    if (k == 1)
        throw bad("m*n is a perfect square");
    return {m, n, k.get_si()};
}

BiquadraticField make_biquadratic_field(std::int64_t m, std::int64_t n)
{
    BiquadraticField k;
    k.m = m;
    k.n = n;
    k.deltas = subfields(m, n);
    std::sort(k.deltas.begin(), k.deltas.end());
    k.totally_real = m > 0 && n > 0;
    return k;
}

BiquadraticField BiquadraticField::canonical() const
{
    BiquadraticField k = *this;
    k.m = deltas[0];
    k.n = deltas[1];
    return k;
}

int RamificationProfile::exponent(std::int64_t l) const
{
    auto it = entries.find(l);
    return it == entries.end() ? 1 : it->second;
}

RamificationProfile ramification(const BiquadraticField& k)
{
    RamificationProfile r;
    bool two_everywhere = true;
    for (std::int64_t d : k.deltas) {
        QuadraticField q = make_quadratic_field(d);
        for (std::int64_t l : q.ramified_primes)
            r.entries[l] = 2;
        two_everywhere = two_everywhere && mod(d, 4) != 1;
    }
    // 2 is totally ramified iff it ramifies in all three subfields.
    if (two_everywhere)
        r.entries[2] = 4;
    for (auto const& [l, e] : r.entries)
        r.product *= static_cast<std::uint64_t>(e);
    return r;
}

std::array<SquareClass, 6> h_generators(const BiquadraticField& k, const FactorBudget& budget)
{
    if (!k.totally_real)
        throw SignatureError("h_generators: Q(sqrt " + std::to_string(k.m) + ", sqrt " +
                             std::to_string(k.n) + ") is not totally real");
    std::array<SquareClass, 6> g;
    for (int i = 0; i < 3; ++i) {
        g[i] = class_of(k.deltas[i], budget);
        g[i + 3] = a_value(k.deltas[i], budget);
    }
    return g;
}

H1Order h1_order(const BiquadraticField& k, const FactorBudget& fbudget, const NormBudget& nbudget)
{
    H1Order out;
    auto gens = h_generators(k, fbudget);
    out.h = subgroup_order(gens);
    out.h_order = out.h.order;
    out.two_totally_ramified = ramification(k).exponent(2) == 4;

    if (out.two_totally_ramified) {
        // Index 2 needs alpha_i in each subfield with N(alpha_1) = N(alpha_2) = N(alpha_3) = +-2.
        for (int s : {2, -2}) {
            std::vector<NormEquationSolution> alphas;
            for (std::int64_t d : k.deltas) {
                auto sol = norm_equation(d, s, nbudget);
                if (!sol)
                    break;
                alphas.push_back(std::move(*sol));
            }
            if (alphas.size() == 3) {
                out.common_norm = s;
                out.alphas = std::move(alphas);
                out.index_factor = 2;
                break;
            }
        }
    }
    out.h1_order = out.h_order * static_cast<std::uint64_t>(out.index_factor);
    return out;
}

std::string PoStructure::str() const
{
    if (!determined)
        return "order-only";
    if (rank == 0)
        return "trivial";
    std::string s = "Z/2Z";
    for (unsigned i = 1; i < rank; ++i)
        s += " x Z/2Z";
    return s;
}

PolyaReport polya_report(const BiquadraticField& field, const FactorBudget& fbudget,
                         const NormBudget& nbudget)
{
    PolyaReport rep;
    rep.field = field.canonical();
    const BiquadraticField& k = rep.field;
    rep.profile = ramification(k);
    rep.h_generators = h_generators(k, fbudget);
    for (int i = 0; i < 3; ++i) {
        rep.units[i] = fundamental_unit(k.deltas[i]);
        rep.unit_norms[i] = rep.units[i].norm;
    }
    rep.h_order = subgroup_order(rep.h_generators).order;

    H1Order h1;
    try {
        h1 = h1_order(k, fbudget, nbudget);
    } catch (const Undecided& e) {
        throw ReportUndecided(e.what(), rep);
    }
    rep.index_factor = h1.index_factor;
    rep.common_norm = h1.common_norm;
    rep.alphas = std::move(h1.alphas);
    rep.h1_order = h1.h1_order;

    if (rep.profile.product % rep.h1_order != 0)
        throw std::logic_error("polya_report: |H1| does not divide the ramification product");
    rep.po_order = rep.profile.product / rep.h1_order;
    // With every e_l = 2 the quotient has exponent 2; groups of order <= 2 are determined anyway.
    rep.po_structure.determined = rep.profile.exponent(2) <= 2 || rep.po_order <= 2;
    rep.po_structure.rank = static_cast<unsigned>(std::countr_zero(rep.po_order));
    rep.complete = true;
    return rep;
}

LericheVerdict leriche_classify(std::int64_t m, std::int64_t n)
{
    BiquadraticField k = make_biquadratic_field(m, n);
    for (std::int64_t d : {m, n}) {
        if (zantema_classify(d).verdict != Verdict::polya)
            return {Verdict::outside_proposition,
                    "Q(sqrt " + std::to_string(d) + ") is not a Polya field"};
    }
    const auto& ks = k.deltas;

    if (contains(ks, -2)) {
        for (std::int64_t p : ks) {
            if (is_prime_3_mod_4(p))
                return {Verdict::not_polya, "Q(sqrt -2, sqrt p), p = 3 (mod 4)"};
        }
    }
    if (contains(ks, -1)) {
        for (std::int64_t d : ks) {
            if (twice_odd_prime(d))
                return {Verdict::not_polya, "Q(sqrt -1, sqrt 2q), q odd prime"};
        }
    }
    // Q(sqrt p, sqrt 2q), p != q: Polya forces the stated congruences.
    for (std::int64_t p : ks) {
        if (!is_odd_prime(p))
            continue;
        for (std::int64_t d : ks) {
            auto q = twice_odd_prime(d);
            if (!q || *q == p)
                continue;
            std::int64_t pm = p % 8, qm = *q % 8;
            bool ok = (pm == 7 && (qm == 1 || qm == 7)) || (pm == 3 && (qm == 1 || qm == 3));
            if (!ok)
                return {Verdict::not_polya, "Q(sqrt p, sqrt 2q) congruences fail"};
        }
    }
    return {Verdict::polya, "no exception applies"};
}

}  // namespace polya

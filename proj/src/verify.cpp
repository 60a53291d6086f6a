#include "polya/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

namespace polya {

std::string_view to_string(TheoremId id)
{
    switch (id) {
    case TheoremId::t1: return "t1";
    case TheoremId::t2: return "t2";
    case TheoremId::t3: return "t3";
    }
    return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view s)
{
    if (s == "t1" || s == "T1") return TheoremId::t1;
    if (s == "t2" || s == "T2") return TheoremId::t2;
    if (s == "t3" || s == "T3") return TheoremId::t3;
    return std::nullopt;
}

std::string PrimeTriple::str() const
{
    std::string s = "(" + std::to_string(p) + ", " + std::to_string(q);
    if (r)
        s += ", " + std::to_string(r);
    return s + ")";
}

namespace {

bool prime(std::int64_t n)
{
    return n >= 2 && is_prime(static_cast<std::uint64_t>(n));
}

// Legendre symbol (a/l), 0 when l is not an odd prime.
int legendre(std::int64_t a, std::int64_t l)
{
    return (prime(l) && l % 2) ? jacobi(a, l) : 0;
}

void add(HypothesisCheck& h, std::string name, bool ok)
{
    h.conditions.push_back({std::move(name), ok});
}

void finish(HypothesisCheck& h)
{
    h.ok = std::all_of(h.conditions.begin(), h.conditions.end(),
                       [](const Condition& c) { return c.ok; });
}

bool distinct_primes(std::initializer_list<std::int64_t> xs)
{
    std::vector<std::int64_t> v(xs);
    if (!std::all_of(v.begin(), v.end(), prime))
        return false;
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, F&& fn)
{
    std::vector<std::optional<T>> slots(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i; !failed && (i = next++) < count;) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
            }
        }
    };
    unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (width <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < width; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

std::size_t index_of(const PolyaReport& rep, std::int64_t kernel)
{
    auto const& ks = rep.field.deltas;
    return static_cast<std::size_t>(std::find(ks.begin(), ks.end(), kernel) - ks.begin());
}

struct Checker {
    TheoremReport& out;

    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            out.anomalies.push_back(what);
    }
};

void check_profile(Checker& c, const PolyaReport& rep, std::vector<std::int64_t> primes)
{
    std::map<std::int64_t, int> want;
    for (std::int64_t l : primes)
        want[l] = 2;
    c.expect(rep.profile.entries == want,
             "ramification differs from e_l = 2 at exactly the primes " +
                 [&] {
                     std::string s;
                     for (std::int64_t l : primes)
                         s += (s.empty() ? "" : ", ") + std::to_string(l);
                     return s;
                 }());
}

void check_norm(Checker& c, const PolyaReport& rep, std::int64_t kernel, int want)
{
    int got = rep.unit_norms[index_of(rep, kernel)];
    c.expect(got == want, "unit of Q(sqrt " + std::to_string(kernel) + ") has norm " +
                              std::to_string(got) + ", proof asserts " + std::to_string(want));
}

void check_span(Checker& c, const PolyaReport& rep, std::vector<std::int64_t> basis)
{
    SquareClassSubgroup h = subgroup_order(rep.h_generators);
    std::vector<SquareClass> want;
    std::string label;
    for (std::int64_t b : basis) {
        want.push_back(class_of(b));
        label += (label.empty() ? "[" : ", [") + std::to_string(b) + "]";
    }
    bool same = h.order == subgroup_order(want).order &&
                std::all_of(want.begin(), want.end(), [&](const SquareClass& x) { return h.contains(x); });
    c.expect(same, "H differs from <" + label + ">, |H| = " + std::to_string(h.order));
}

}  // namespace

HypothesisCheck hypotheses_t1(std::int64_t p, std::int64_t q, std::int64_t r)
{
    HypothesisCheck h;
    add(h, "distinct primes", distinct_primes({p, q, r}));
    add(h, "p = 3 (mod 4)", mod(p, 4) == 3);
    add(h, "q = 1 (mod 8)", mod(q, 8) == 1);
    add(h, "r = 1 (mod 8)", mod(r, 8) == 1);
    add(h, "(q/r) = -1", legendre(q, r) == -1);
    finish(h);
    return h;
}

HypothesisCheck hypotheses_t2(std::int64_t p, std::int64_t q, std::int64_t r)
{
    HypothesisCheck h;
    add(h, "distinct primes", distinct_primes({p, q, r}));
    add(h, "p = 3 (mod 4)", mod(p, 4) == 3);
    add(h, "q = 3 (mod 4)", mod(q, 4) == 3);
    add(h, "r = 1 (mod 8)", mod(r, 8) == 1);
    add(h, "(p/r) = 1", legendre(p, r) == 1);
    add(h, "(q/r) = -1", legendre(q, r) == -1);
    finish(h);
    return h;
}

HypothesisCheck hypotheses_t3(std::int64_t p, std::int64_t q)
{
    HypothesisCheck h;
    add(h, "distinct primes", distinct_primes({p, q}));
    add(h, "p = 1 (mod 4)", mod(p, 4) == 1);
    add(h, "q = 1 (mod 4)", mod(q, 4) == 1);
    add(h, "(p/q) = -1", legendre(p, q) == -1);
    finish(h);
    return h;
}

HypothesisCheck hypotheses(TheoremId id, const PrimeTriple& t)
{
    switch (id) {
    case TheoremId::t1: return hypotheses_t1(t.p, t.q, t.r);
    case TheoremId::t2: return hypotheses_t2(t.p, t.q, t.r);
    case TheoremId::t3: return hypotheses_t3(t.p, t.q);
    }
    throw std::invalid_argument("unknown theorem");
}

EpsilonWitness epsilon_witness(std::int64_t d, const FactorBudget& budget)
{
    FundamentalUnit u = fundamental_unit(d);
    if (u.norm != 1)
        throw Inapplicable("epsilon_witness: unit of Q(sqrt " + std::to_string(d) +
                           ") has norm -1");
    EpsilonWitness w;
    w.d = d;
    w.z = u.z;
    w.t = u.t;
    w.delta = u.denom;

    const mpz_class lo = u.z - u.denom, hi = u.z + u.denom;
    mpz_class g = gcd(lo, hi);
    w.g = static_cast<int>(g.get_si());
    const mpz_class a = lo / g, b = hi / g;
    const mpz_class dd(static_cast<long>(d));
    w.epsilon = mpz_class(gcd(b, dd)).get_si();
    w.eta = mpz_class(gcd(a, dd)).get_si();
    w.case_label = std::string(u.denom == 2 ? "half-integral, " : "") + "gcd = " + std::to_string(w.g);

    const mpz_class m2 = b / w.epsilon, n2 = a / w.eta;
    bool ok = b % w.epsilon == 0 && a % w.eta == 0 && is_square(m2) && is_square(n2);
    if (ok) {
        w.m = sqrt(m2);
        w.n = sqrt(n2);
        ok = gcd(w.m, w.n) == 1 && w.epsilon * w.eta == d &&
             m2 * w.epsilon - n2 * w.eta == 2 * u.denom / w.g && u.t % w.g == 0 &&
             w.m * w.n == u.t / w.g;
    }
    w.reconstructs = ok;

    std::int64_t scale = u.denom == 1 ? 2 * w.g : w.g;
    w.matches_a_value = a_value(d, budget) == class_of(mpz_class(static_cast<long>(scale * w.epsilon)), budget);
    return w;
}

UnitParityCheck unit_parity_check(std::int64_t p)
{
    if (!prime(p) || p % 4 != 3)
        throw std::invalid_argument("unit_parity_check: p must be a prime = 3 (mod 4)");
    FundamentalUnit u = fundamental_unit(p);
    UnitParityCheck c;
    c.p = p;
    mpz_class s = u.z + 1;
    c.one_plus_z_odd = mpz_odd_p(s.get_mpz_t());
    c.t_odd = mpz_odd_p(u.t.get_mpz_t());
    if (p % 8 == 7)
        c.shape_ok = is_square(s);
    else
        c.shape_ok = s % p == 0 && is_square(mpz_class(s / p));
    return c;
}

std::pair<std::int64_t, std::int64_t> theorem_field(TheoremId id, const PrimeTriple& t)
{
    if (id == TheoremId::t3)
        return {2, t.p * t.q};
    return {t.p, t.q * t.r};
}

TheoremReport verify_theorem(TheoremId id, const PrimeTriple& t, const Budgets& budgets, bool force)
{
    TheoremReport out;
    out.id = id;
    out.triple = t;
    out.hypotheses = hypotheses(id, t);
    if (!out.hypotheses.ok && !force)
        return out;

    const bool t3 = id == TheoremId::t3;
    const std::int64_t k1 = t3 ? 2 : t.p;
    const std::int64_t k2 = t3 ? t.p * t.q : t.q * t.r;
    const std::int64_t k3 = t3 ? 2 * t.p * t.q : t.p * t.q * t.r;
    out.allowed_epsilons = t3 ? std::vector<std::int64_t>{1, 2, t.p * t.q, 2 * t.p * t.q}
                              : std::vector<std::int64_t>{1, t.p, t.q * t.r, k3};
    std::sort(out.allowed_epsilons.begin(), out.allowed_epsilons.end());

    BiquadraticField k;
    try {
        k = make_biquadratic_field(k1, k2);
        out.field = polya_report(k, budgets.factor, budgets.normeq);
    } catch (const ReportUndecided& e) {
        out.field = e.partial();
        out.undecided = e.what();
    } catch (const BudgetExceeded& e) {
        out.undecided = e.what();
        return out;
    }
    const PolyaReport& rep = *out.field;

    for (std::int64_t d : rep.field.deltas) {
        if (rep.unit_norms[index_of(rep, d)] != 1)
            continue;
        try {
            out.witnesses.push_back(epsilon_witness(d, budgets.factor));
        } catch (const BudgetExceeded& e) {
            out.anomalies.push_back("epsilon witness for " + std::to_string(d) + " undecided: " + e.what());
        }
    }
    for (auto const& w : out.witnesses) {
        if (w.d == k3)
            out.epsilon_in_allowed_set = std::binary_search(out.allowed_epsilons.begin(),
                                                            out.allowed_epsilons.end(), w.epsilon);
    }

    Checker c{out};
    for (auto const& w : out.witnesses) {
        c.expect(w.reconstructs, "epsilon witness for " + std::to_string(w.d) + " fails its identities");
        c.expect(w.matches_a_value, "epsilon witness for " + std::to_string(w.d) + " disagrees with [a]");
    }
    if (out.epsilon_in_allowed_set)
        c.expect(*out.epsilon_in_allowed_set, "epsilon outside the allowed set");

    if (t3) {
        check_profile(c, rep, {2, t.p, t.q});
        check_norm(c, rep, k1, -1);
        check_norm(c, rep, k2, -1);
        check_span(c, rep, {2, t.p * t.q});
    } else {
        std::vector<std::int64_t> ps{2, t.p, t.q, t.r};
        std::sort(ps.begin(), ps.end());
        check_profile(c, rep, ps);
        check_norm(c, rep, k1, 1);
        check_norm(c, rep, k2, -1);
        check_norm(c, rep, k3, 1);
        if (prime(t.p) && t.p % 4 == 3)
            c.expect(unit_parity_check(t.p).ok(), "unit of Q(sqrt p) breaks the parity shape");
        SquareClass a1 = rep.h_generators[3 + index_of(rep, k1)];
        c.expect(a1 == class_of(2) || a1 == class_of(2 * t.p), "[a1] = " + a1.str() + ", not [2] or [2p]");
        check_span(c, rep, {2, t.p, t.q * t.r});
    }

    if (rep.complete) {
        std::uint64_t want_h1 = t3 ? 4 : 8;
        c.expect(rep.h1_order == want_h1, "|H1| = " + std::to_string(rep.h1_order) + ", proof asserts " +
                                              std::to_string(want_h1));
        out.claim_matches = rep.po_order == 2;
        c.expect(out.claim_matches, "Po order " + std::to_string(rep.po_order) + ", theorem asserts 2");
    }
    return out;
}

std::vector<PrimeTriple> admissible(TheoremId id, std::int64_t bound)
{
    std::vector<PrimeTriple> out;
    auto ps = primes_up_to(bound);
    for (std::int64_t p : ps) {
        for (std::int64_t q : ps) {
            if (id == TheoremId::t3) {
                if (hypotheses_t3(p, q).ok)
                    out.push_back({p, q, 0});
                continue;
            }
            for (std::int64_t r : ps) {
                if (hypotheses(id, {p, q, r}).ok)
                    out.push_back({p, q, r});
            }
        }
    }
    return out;
}

std::vector<TheoremReport> verify_many(TheoremId id, const std::vector<PrimeTriple>& triples,
                                       unsigned jobs, const Budgets& budgets, bool force)
{
    return parallel_map<TheoremReport>(triples.size(), jobs, [&](std::size_t i) {
        return verify_theorem(id, triples[i], budgets, force);
    });
}

void scan(TheoremId id, std::int64_t bound, unsigned jobs, const Budgets& budgets,
          const std::function<void(const TheoremReport&)>& sink)
{
    if (bound < 3)
        throw std::invalid_argument("scan: bound must be >= 3");
    auto triples = admissible(id, bound);
    const std::size_t batch = std::max<std::size_t>(1, std::size_t(jobs) * 8);
    for (std::size_t lo = 0; lo < triples.size(); lo += batch) {
        std::vector<PrimeTriple> chunk(triples.begin() + lo,
                                       triples.begin() + std::min(triples.size(), lo + batch));
        for (auto const& r : verify_many(id, chunk, jobs, budgets))
            sink(r);
    }
}

std::vector<TheoremReport> scan(TheoremId id, std::int64_t bound, unsigned jobs, const Budgets& budgets)
{
    std::vector<TheoremReport> out;
    scan(id, bound, jobs, budgets, [&](const TheoremReport& r) { out.push_back(r); });
    return out;
}

const std::vector<PrimeTriple>& table_rows()
{
    // Published list of (2, p, q); the fixed 2 is implicit.
    static const std::vector<PrimeTriple> rows{
        {5, 17, 0},  {5, 37, 0},  {5, 97, 0},   {5, 173, 0},  {5, 193, 0},
        {13, 37, 0}, {13, 73, 0}, {13, 89, 0},  {13, 97, 0},  {13, 109, 0},
        {13, 193, 0}, {13, 197, 0}, {17, 5, 0}, {17, 29, 0},  {17, 37, 0},
        {17, 61, 0}, {17, 197, 0}, {29, 17, 0}, {29, 61, 0},  {29, 89, 0},
    };
    return rows;
}

std::vector<TableRow> verify_table(unsigned jobs, const Budgets& budgets)
{
    auto reports = verify_many(TheoremId::t3, table_rows(), jobs, budgets);
    std::vector<TableRow> out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        TableRow row{table_rows()[i], std::move(reports[i]), false};
        row.ok = row.report.hypotheses.ok && row.report.field && row.report.field->complete &&
                 row.report.field->po_order == 2;
        out.push_back(std::move(row));
    }
    return out;
}

const std::vector<PrimeTriple>& named_t1_examples()
{
    static const std::vector<PrimeTriple> ex{{3, 17, 29}, {3, 29, 41}, {3, 29, 113}};
    return ex;
}

ContrastReport contrast_rajaei(std::int64_t p, std::int64_t q, std::int64_t r, const Budgets& budgets)
{
    ContrastReport out;
    out.triple = {p, q, r};
    add(out.precondition, "distinct primes", distinct_primes({p, q, r}));
    add(out.precondition, "p = 3 (mod 4)", mod(p, 4) == 3);
    add(out.precondition, "q = 3 (mod 4)", mod(q, 4) == 3);
    add(out.precondition, "r = 5 (mod 8)", mod(r, 8) == 5);
    finish(out.precondition);
    if (!out.precondition.ok)
        return out;
    out.field = polya_report(make_biquadratic_field(p, q * r), budgets.factor, budgets.normeq);
    out.matches = out.field->po_order == 1;
    if (!out.matches)
        out.anomalies.push_back("Po order " + std::to_string(out.field->po_order) + ", expected 1");
    return out;
}

std::vector<PrimeTriple> contrast_triples(std::int64_t bound)
{
    std::vector<PrimeTriple> out;
    auto ps = primes_up_to(bound);
    for (std::int64_t p : ps)
        for (std::int64_t q : ps)
            for (std::int64_t r : ps)
                if (p != q && p % 4 == 3 && q % 4 == 3 && r % 8 == 5)
                    out.push_back({p, q, r});
    return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> pollack_search(std::int64_t r)
{
    if (r < 13 || !prime(r))
        throw std::invalid_argument("pollack_search: r must be a prime >= 13, got " + std::to_string(r));
    std::optional<std::int64_t> p, q;
    for (std::int64_t l : primes_up_to(r - 1)) {
        if (jacobi(l, r) != -1)
            continue;
        if (!p && l % 4 == 3)
            p = l;
        if (!q && l % 4 == 1)
            q = l;
    }
    if (!p || !q)
        return std::nullopt;
    return std::make_pair(*p, *q);
}

}  // namespace polya

#include "polya/quadratic.hpp"

#include <cmath>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace polya {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::polya: return "Polya";
    case Verdict::not_polya: return "NotPolya";
    case Verdict::undecided: return "Undecided";
    case Verdict::outside_proposition: return "OutsideProposition";
    }
    return "?";
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/* Complete quotient (P + sqrt D) / Q with Q | D - P^2. Stepping replaces it by
 * 1 / (x - a) where a = floor(x). */
struct QuadraticIrrational {
    std::int64_t D;
    std::int64_t root;   // floor(sqrt D)
    std::int64_t P;
    std::int64_t Q;

    std::int64_t floor_value() const
    {
        // sqrt D is irrational, so (P + root + 1) / Q never lands on an
        // integer from the wrong side when Q < 0.
        return Q > 0 ? floor_div(P + root, Q) : floor_div(P + root + 1, Q);
    }

    std::int64_t step()
    {
        std::int64_t a = floor_value();
        P = a * Q - P;
        Q = (D - P * P) / Q;
        return a;
    }
};

/// Convergent numerators/denominators of a continued fraction.
struct Convergents {
    mpz_class a_prev2 = 0, a_prev = 1;
    mpz_class b_prev2 = 1, b_prev = 0;

    void push(std::int64_t a)
    {
        mpz_class an = a_prev * a + a_prev2;
        mpz_class bn = b_prev * a + b_prev2;
        a_prev2 = std::move(a_prev);
        a_prev = std::move(an);
        b_prev2 = std::move(b_prev);
        b_prev = std::move(bn);
    }
};

void require_squarefree_real(std::int64_t d, const char* who)
{
    if (d < 0)
        throw SignatureError(std::string(who) + ": Q(sqrt " + std::to_string(d) +
                             ") is imaginary and has no fundamental unit");
    if (d <= 1 || !is_squarefree(d))
        throw std::invalid_argument(std::string(who) + ": d must be squarefree and > 1, got " +
                                    std::to_string(d));
}

FundamentalUnit compute_unit(std::int64_t d)
{
    // Maximal order Z[w] with w = sqrt d, or w = (1 + sqrt d)/2 when d = 1 (mod 4).
    const bool half = mod(d, 4) == 1;
    QuadraticIrrational x{d, isqrt(d), half ? 1 : 0, half ? 2 : 1};
    Convergents conv;

    std::int64_t first_p = 0, first_q = 0;
    for (std::size_t j = 0;; ++j) {
        mpz_class prev_a = conv.a_prev, prev_b = conv.b_prev;
        conv.push(x.step());
        if (j == 0) {
            first_p = x.P;
            first_q = x.Q;
            continue;
        }
        if (x.P != first_p || x.Q != first_q)
            continue;

        // The period a_1..a_k has just closed; the unit is A_{k-1} - B_{k-1} w'.
        FundamentalUnit u;
        u.d = d;
        u.period_length = j;
        u.norm = (j % 2) ? -1 : 1;
        if (!half) {
            u.z = prev_a;
            u.t = prev_b;
            u.denom = 1;
        } else {
            u.z = 2 * prev_a - prev_b;
            u.t = prev_b;
            u.denom = 2;
            if (mpz_even_p(u.z.get_mpz_t()) && mpz_even_p(u.t.get_mpz_t())) {
                u.z /= 2;
                u.t /= 2;
                u.denom = 1;
            }
        }
        return u;
    }
}

class UnitCache {
public:
    FundamentalUnit get(std::int64_t d)
    {
        {
            std::shared_lock lock(mu_);
            if (auto it = units_.find(d); it != units_.end())
                return it->second;
        }
        FundamentalUnit u = compute_unit(d);
        std::unique_lock lock(mu_);
        return units_.try_emplace(d, std::move(u)).first->second;
    }

private:
    std::shared_mutex mu_;
    std::unordered_map<std::int64_t, FundamentalUnit> units_;
};

UnitCache& unit_cache()
{
    static UnitCache cache;
    return cache;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (auto const& f : factor(n < 0 ? -n : n).factors)
        out.push_back(f.prime.get_si());
    return out;
}

// x^2 + |d| y^2 = target for imaginary fields: a finite search.
std::optional<NormEquationSolution> imaginary_norm(std::int64_t d, std::int64_t c)
{
    const std::int64_t ad = -d;
    const bool half = mod(d, 4) == 1;
    const std::int64_t target = half ? 4 * c : c;
    if (target <= 0)
        return std::nullopt;
    for (std::int64_t y = 0; y * y * ad <= target; ++y) {
        std::int64_t rest = target - y * y * ad;
        if (!is_square(rest))
            continue;
        NormEquationSolution s{d, c, isqrt(rest), y, half ? 2 : 1};
        if (s.denom == 2 && mpz_even_p(s.x.get_mpz_t()) && mpz_even_p(s.y.get_mpz_t())) {
            s.x /= 2;
            s.y /= 2;
            s.denom = 1;
        }
        return s;
    }
    return std::nullopt;
}

}  // namespace

QuadraticField make_quadratic_field(std::int64_t d)
{
    if (d == 0 || d == 1 || !is_squarefree(d))
        throw std::invalid_argument("quadratic field: d must be squarefree and != 0, 1, got " +
                                    std::to_string(d));
    QuadraticField k;
    k.d = d;
    k.discriminant = mod(d, 4) == 1 ? d : 4 * d;
    k.ramified_primes = prime_divisors(k.discriminant);
    return k;
}

ContinuedFraction cf_expand(std::int64_t d)
{
    if (d < 2 || is_square(d))
        throw std::invalid_argument("cf_expand: d must be >= 2 and not a perfect square, got " +
                                    std::to_string(d));
    ContinuedFraction cf;
    cf.d = d;
    QuadraticIrrational x{d, isqrt(d), 0, 1};
    cf.preperiod.push_back(x.step());
    const std::int64_t first_p = x.P, first_q = x.Q;
    do {
        cf.p_values.push_back(x.P);
        cf.q_values.push_back(x.Q);
        cf.period.push_back(x.step());
    } while (x.P != first_p || x.Q != first_q);
    return cf;
}

double FundamentalUnit::log_value() const
{
    // u ~ 2z/denom once z is large; exact enough for bounds and display.
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    double log_z = std::log(mant) + exp * std::log(2.0);
    double log_t = 0;
    {
        long e2 = 0;
        double m2 = mpz_get_d_2exp(&e2, t.get_mpz_t());
        log_t = std::log(m2) + e2 * std::log(2.0) + 0.5 * std::log(static_cast<double>(d));
    }
    double hi = std::max(log_z, log_t);
    return hi + std::log1p(std::exp(std::min(log_z, log_t) - hi)) - std::log(double(denom));
}

std::string FundamentalUnit::str() const
{
    std::string core = z.get_str() + " + " + (t == 1 ? std::string() : t.get_str() + "*") +
                       "sqrt(" + std::to_string(d) + ")";
    return denom == 1 ? core : "(" + core + ")/2";
}

FundamentalUnit fundamental_unit(std::int64_t d)
{
    require_squarefree_real(d, "fundamental_unit");
    return unit_cache().get(d);
}

SquareClass a_value(std::int64_t d, const FactorBudget& budget)
{
    FundamentalUnit u = fundamental_unit(d);
    if (u.norm == -1)
        return SquareClass::identity();
    // N(u + 1) = 2(z + 1) for integral units, z + 2 for half-integral ones.
    mpz_class n = u.denom == 1 ? mpz_class(2 * (u.z + 1)) : mpz_class(u.z + 2);
    std::vector<std::int64_t> hints = prime_divisors(2 * d);
    return class_of(n, hints, budget);
}

mpz_class NormEquationSolution::norm() const
{
    mpz_class v = x * x - mpz_class(static_cast<long>(d)) * y * y;
    return v / (denom * denom);
}

std::optional<std::pair<mpz_class, mpz_class>>
solve_norm_form(std::int64_t D, std::int64_t N, const NormBudget& budget)
{
    if (D < 2 || is_square(D))
        throw std::invalid_argument("solve_norm_form: D must be >= 2 and not a square");
    if (N == 0)
        throw std::invalid_argument("solve_norm_form: N must be nonzero");

    // Every solution is f * (primitive solution of X^2 - D Y^2 = N / f^2).
    // Each primitive class is tagged by z = -X/Y (mod |m|) and shows up in
    // the expansion of (z + sqrt D)/|m| as a complete quotient with Q = +-1.
    std::uint64_t steps = 0;
    const std::int64_t abs_n = N < 0 ? -N : N;
    for (std::int64_t f = 1; f * f <= abs_n; ++f) {
        if (N % (f * f))
            continue;
        const std::int64_t m = N / (f * f);
        const std::int64_t am = m < 0 ? -m : m;
        for (std::int64_t z = -((am - 1) / 2); z <= am / 2; ++z) {
            if (mod(z * z - D, am) != 0)
                continue;
            QuadraticIrrational x{D, isqrt(D), z, am};
            Convergents conv;
            std::set<std::tuple<std::int64_t, std::int64_t, int>> seen;
            for (std::int64_t i = 1;; ++i) {
                if (++steps > budget.cf_steps)
                    throw Undecided("norm equation x^2 - " + std::to_string(D) + " y^2 = " +
                                    std::to_string(N) + ": budget exhausted");
                conv.push(x.step());
                // (|m| A_{i-1} - z B_{i-1})^2 - D B_{i-1}^2 = (-1)^i Q_i |m|
                const int parity = (i % 2) ? -1 : 1;
                if ((x.Q == 1 || x.Q == -1) && parity * x.Q * am == m) {
                    mpz_class X = am * conv.a_prev - z * conv.b_prev;
                    mpz_class Y = conv.b_prev;
                    return std::make_pair(mpz_class(abs(X) * f), mpz_class(Y * f));
                }
                if (!seen.emplace(x.P, x.Q, static_cast<int>(i % 2)).second)
                    break;
            }
        }
    }
    return std::nullopt;
}

std::optional<NormEquationSolution>
norm_equation(std::int64_t d, std::int64_t c, const NormBudget& budget)
{
    if (c == 0)
        throw std::invalid_argument("norm_equation: c must be nonzero");
    if (d < 0) {
        if (!is_squarefree(d))
            throw std::invalid_argument("norm_equation: d must be squarefree");
        return imaginary_norm(d, c);
    }
    require_squarefree_real(d, "norm_equation");
    const bool half = mod(d, 4) == 1;
    auto sol = solve_norm_form(d, half ? 4 * c : c, budget);
    if (!sol)
        return std::nullopt;
    NormEquationSolution s{d, c, sol->first, sol->second, half ? 2 : 1};
    if (half && mpz_even_p(s.x.get_mpz_t()) && mpz_even_p(s.y.get_mpz_t())) {
        s.x /= 2;
        s.y /= 2;
        s.denom = 1;
    }
    return s;
}

ZantemaVerdict zantema_classify(std::int64_t d)
{
    QuadraticField k = make_quadratic_field(d);
    auto polya = [](int c, std::string label) {
        return ZantemaVerdict{Verdict::polya, c, std::move(label)};
    };
    auto not_polya = [](std::string label) {
        return ZantemaVerdict{Verdict::not_polya, 0, std::move(label)};
    };

    if (d == -1 || d == -2 || d == 2)
        return polya(1, "d = -1, -2, 2");

    std::vector<std::int64_t> ps = prime_divisors(d);
    if (d < 0) {
        if (ps.size() == 1 && ps[0] % 4 == 3)
            return polya(2, "d = -p, p = 3 (mod 4)");
        return not_polya("imaginary, no case matches");
    }
    if (ps.size() == 1)
        return polya(3, "d = p odd prime");
    if (ps.size() == 2 && ps[0] == 2) {
        std::int64_t p = ps[1];
        if (p % 4 == 3)
            return polya(4, "d = 2p, p = 3 (mod 4)");
        if (fundamental_unit(d).norm == 1)
            return polya(4, "d = 2p, p = 1 (mod 4), unit norm 1");
        return not_polya("d = 2p, p = 1 (mod 4), unit norm -1");
    }
    if (ps.size() == 2) {
        std::int64_t p = ps[0] % 4, q = ps[1] % 4;
        if (p == 3 && q == 3)
            return polya(5, "d = pq, p = q = 3 (mod 4)");
        if (p == 1 && q == 1) {
            if (fundamental_unit(d).norm == 1)
                return polya(5, "d = pq, p = q = 1 (mod 4), unit norm 1");
            return not_polya("d = pq, p = q = 1 (mod 4), unit norm -1");
        }
        return not_polya("d = pq with p, q in different classes mod 4");
    }
    return not_polya("three or more prime factors");
}

OracleReport quadratic_polya_oracle(std::int64_t d, const NormBudget& budget)
{
    QuadraticField k = make_quadratic_field(d);
    OracleReport rep;
    rep.d = d;
    bool all_principal = true, undecided = false;
    for (std::int64_t l : k.ramified_primes) {
        RamifiedPrimeCheck chk;
        chk.prime = l;
        try {
            auto sol = norm_equation(d, l, budget);
            if (!sol && d > 0)
                sol = norm_equation(d, -l, budget);
            chk.principal = sol ? Verdict::polya : Verdict::not_polya;
            chk.generator = std::move(sol);
        } catch (const Undecided&) {
            chk.principal = Verdict::undecided;
        }
        all_principal = all_principal && chk.principal == Verdict::polya;
        undecided = undecided || chk.principal == Verdict::undecided;
        if (chk.principal == Verdict::not_polya) {
            rep.primes.push_back(std::move(chk));
            rep.verdict = Verdict::not_polya;
            return rep;
        }
        rep.primes.push_back(std::move(chk));
    }
    rep.verdict = all_principal ? Verdict::polya : (undecided ? Verdict::undecided : Verdict::not_polya);
    return rep;
}

DirichletReport dirichlet_norm_criterion(std::int64_t r, std::int64_t s)
{
    if (r == s || !is_prime(static_cast<std::uint64_t>(r < 0 ? 0 : r)) ||
        !is_prime(static_cast<std::uint64_t>(s < 0 ? 0 : s)))
        throw std::invalid_argument("dirichlet_norm_criterion: need distinct primes");
    DirichletReport rep;
    rep.r = r;
    rep.s = s;
    rep.legendre = s == 2 ? 0 : jacobi(r, s);
    rep.literal_applies = rep.legendre == -1;
    rep.applies = rep.literal_applies && r % 4 == 1 && s % 4 == 1;
    rep.norm = fundamental_unit(r * s).norm;
    rep.consistent = !rep.applies || rep.norm == -1;
    rep.literal_consistent = !rep.literal_applies || rep.norm == -1;
    return rep;
}

}  // namespace polya

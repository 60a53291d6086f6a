#include "polya/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <CLI11.hpp>

#include "polya/report_io.hpp"

namespace polya {

namespace {

struct RunConfig {
    std::string format = "text";
    std::string output;
    bool strict = false;
    std::uint64_t factor_budget = FactorBudget{}.rho_iterations;
    std::uint64_t normeq_budget = NormBudget{}.cf_steps;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    Budgets budgets() const
    {
        Budgets b;
        b.factor.rho_iterations = factor_budget;
        b.normeq.cf_steps = normeq_budget;
        return b;
    }
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::uint64_t env_budget(const char* name, std::uint64_t fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v)
        return fallback;
    char* end = nullptr;
    unsigned long long x = std::strtoull(v, &end, 10);
    if (*end || x == 0 || v[0] == '-')
        throw UsageError(std::string(name) + " must be a positive integer, got '" + v + "'");
    return x;
}

Format parse_format(const std::string& s)
{
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return Format::text;
}

// Hard invariants only; theorem-claim mismatches are anomalies unless --strict.
int theorem_exit(const TheoremReport& r, bool strict)
{
    if (r.undecided)
        return exit_undecided;
    if (r.field && !r.field->exact())
        return exit_disagreement;
    for (auto const& w : r.witnesses)
        if (!w.reconstructs)
            return exit_disagreement;
    if (strict && r.hypotheses.ok && !r.claim_matches)
        return exit_disagreement;
    return exit_ok;
}

int worst(int a, int b)
{
    // Undecided outranks disagreement: the answer is not known.
    auto rank = [](int c) { return c == exit_undecided ? 3 : c == exit_disagreement ? 2 : c ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

int cmd_classify(std::int64_t d, const RunConfig& cfg, ReportWriter& w)
{
    make_quadratic_field(d);   // validates
    ZantemaVerdict z = zantema_classify(d);
    OracleReport o = quadratic_polya_oracle(d, cfg.budgets().normeq);
    Json j{{"d", d}, {"zantema", to_json(z)}, {"oracle", to_json(o)}};
    if (d > 1) {
        FundamentalUnit u = fundamental_unit(d);
        j["unit"] = to_json(u);
        j["unit_str"] = u.str();
        j["unit_norm"] = u.norm;
    } else {
        j["unit"] = Json();
    }
    bool decided = o.verdict != Verdict::undecided;
    bool agree = decided && o.verdict == z.verdict;
    j["agree"] = decided ? Json(agree) : Json();
    w.write(j);
    if (!decided)
        return exit_undecided;
    return agree ? exit_ok : exit_disagreement;
}

int cmd_analyze(std::int64_t m, std::int64_t n, const RunConfig& cfg, ReportWriter& w)
{
    BiquadraticField k = make_biquadratic_field(m, n);
    Json j{{"input", Json{{"m", m}, {"n", n}}}, {"leriche", to_json(leriche_classify(m, n))}};
    if (!k.totally_real) {
        j["field"] = to_json(k);
        j["profile"] = to_json(ramification(k));
        j["report"] = Json();
        w.write(j);
        return exit_ok;
    }
    Budgets b = cfg.budgets();
    try {
        j["report"] = to_json(polya_report(k, b.factor, b.normeq));
    } catch (const ReportUndecided& e) {
        j["report"] = to_json(e.partial());
        j["undecided"] = e.what();
        w.write(j);
        return exit_undecided;
    }
    w.write(j);
    return exit_ok;
}

int cmd_verify(TheoremId id, const std::vector<std::int64_t>& xs, bool force, const RunConfig& cfg,
               ReportWriter& w)
{
    std::size_t want = id == TheoremId::t3 ? 2 : 3;
    if (xs.size() != want)
        throw UsageError("verify " + std::string(to_string(id)) + " takes " + std::to_string(want) + " primes");
    PrimeTriple t{xs[0], xs[1], want == 3 ? xs[2] : 0};
    TheoremReport r = verify_theorem(id, t, cfg.budgets(), force);
    w.write(to_json(r));
    return theorem_exit(r, cfg.strict);
}

int cmd_scan(TheoremId id, std::int64_t bound, const RunConfig& cfg, ReportWriter& w)
{
    if (bound < 3)
        throw UsageError("scan bound must be >= 3");
    int code = exit_ok;
    scan(id, bound, cfg.jobs, cfg.budgets(), [&](const TheoremReport& r) {
        w.write(to_json(r));
        code = worst(code, theorem_exit(r, cfg.strict));
    });
    return code;
}

int cmd_table(const RunConfig& cfg, ReportWriter& w)
{
    int code = exit_ok;
    for (auto const& row : verify_table(cfg.jobs, cfg.budgets())) {
        w.write(to_json(row));
        if (row.report.undecided)
            code = worst(code, exit_undecided);
        else if (!row.ok)
            code = worst(code, exit_disagreement);
    }
    return code;
}

int cmd_pollack(std::int64_t r, ReportWriter& w)
{
    auto pq = pollack_search(r);
    Json j{{"r", r}};
    j["p"] = pq ? Json(pq->first) : Json();
    j["q"] = pq ? Json(pq->second) : Json();
    j["found"] = pq.has_value();
    w.write(j);
    return pq ? exit_ok : exit_disagreement;
}

int cmd_contrast(const std::vector<std::int64_t>& xs, std::int64_t bound, const RunConfig& cfg,
                 ReportWriter& w)
{
    std::vector<PrimeTriple> triples;
    if (!xs.empty()) {
        if (xs.size() != 3)
            throw UsageError("contrast takes three primes p q r");
        triples.push_back({xs[0], xs[1], xs[2]});
    } else if (bound >= 3) {
        triples = contrast_triples(bound);
    } else {
        throw UsageError("contrast needs p q r or --bound B");
    }
    int code = exit_ok;
    for (auto const& t : triples) {
        ContrastReport r = contrast_rajaei(t.p, t.q, t.r, cfg.budgets());
        w.write(to_json(r));
        if (!r.precondition.ok)
            code = worst(code, exit_usage);
        else if (!r.matches)
            code = worst(code, exit_disagreement);
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    try {
        cfg.factor_budget = env_budget("POLYA_FACTOR_BUDGET", cfg.factor_budget);
        cfg.normeq_budget = env_budget("POLYA_NORMEQ_BUDGET", cfg.normeq_budget);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    CLI::App app{"Polya groups of real quadratic and bi-quadratic fields", "polya"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", cfg.output, "Write reports to this file instead of stdout");
    app.add_flag("--strict", cfg.strict, "Treat theorem claim mismatches as failures");
    app.add_option("--budget-factor", cfg.factor_budget, "Pollard rho iterations per factorization")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget-normeq", cfg.normeq_budget, "Continued fraction steps per norm equation")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs", cfg.jobs, "Worker threads for scans")->check(CLI::PositiveNumber);

    std::int64_t d = 0, m = 0, n = 0, bound = 0, r = 0;
    std::string theorem;
    std::vector<std::int64_t> primes;
    bool force = false;

    auto* classify = app.add_subcommand("classify-quadratic", "Classify Q(sqrt d)");
    classify->add_option("d", d)->required();
    auto* analyze = app.add_subcommand("analyze", "Polya report for Q(sqrt m, sqrt n)");
    analyze->add_option("m", m)->required();
    analyze->add_option("n", n)->required();
    auto* verify = app.add_subcommand("verify", "Check one theorem instance");
    verify->add_option("theorem", theorem)->required()->check(CLI::IsMember({"t1", "t2", "t3"}));
    verify->add_option("primes", primes)->required();
    verify->add_flag("--force", force, "Compute the field even when hypotheses fail");
    auto* scan_cmd = app.add_subcommand("scan", "All admissible instances up to a prime bound");
    scan_cmd->add_option("theorem", theorem)->required()->check(CLI::IsMember({"t1", "t2", "t3"}));
    scan_cmd->add_option("bound", bound)->required();
    auto* table = app.add_subcommand("table", "Reproduce the 20-row table for Q(sqrt 2, sqrt pq)");
    auto* pollack = app.add_subcommand("pollack", "Smallest nonresidue pair below r");
    pollack->add_option("r", r)->required();
    auto* contrast = app.add_subcommand("contrast", "Fields expected to be Polya (r = 5 mod 8)");
    contrast->add_option("primes", primes);
    contrast->add_option("--bound", bound, "Sweep every triple with primes <= bound");
    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) {
            err << "error: cannot open " << cfg.output << "\n";
            return exit_usage;
        }
    }
    std::ostream& os = cfg.output.empty() ? out : file;
    ReportWriter writer(os, parse_format(cfg.format));

    try {
        if (*classify)
            return cmd_classify(d, cfg, writer);
        if (*analyze)
            return cmd_analyze(m, n, cfg, writer);
        if (*verify)
            return cmd_verify(*parse_theorem(theorem), primes, force, cfg, writer);
        if (*scan_cmd)
            return cmd_scan(*parse_theorem(theorem), bound, cfg, writer);
        if (*table)
            return cmd_table(cfg, writer);
        if (*pollack)
            return cmd_pollack(r, writer);
        if (*contrast)
            return cmd_contrast(primes, bound, cfg, writer);
    } catch (const Undecided& e) {
        err << "undecided: " << e.what() << "\n";
        return exit_undecided;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_undecided;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return exit_usage;
}

}  // namespace polya

#include "polya/report_io.hpp"

#include <map>

namespace polya {

Json to_json(const SquareClass& c)
{
    return c.str();
}

Json to_json(const FundamentalUnit& u)
{
    return Json{{"d", u.d},
                {"z", u.z.get_str()},
                {"t", u.t.get_str()},
                {"denom", u.denom},
                {"norm", u.norm},
                {"period_length", u.period_length}};
}

Json to_json(const NormEquationSolution& s)
{
    return Json{{"d", s.d}, {"c", s.c}, {"x", s.x.get_str()}, {"y", s.y.get_str()}, {"denom", s.denom}};
}

Json to_json(const RamificationProfile& r)
{
    Json entries = Json::array();
    for (auto const& [l, e] : r.entries)
        entries.push_back(Json{{"prime", l}, {"e", e}});
    return Json{{"entries", entries}, {"product", r.product}};
}

Json to_json(const BiquadraticField& k)
{
    return Json{{"m", k.m}, {"n", k.n}, {"deltas", k.deltas}, {"totally_real", k.totally_real}};
}

Json to_json(const PolyaReport& r)
{
    Json units = Json::array(), gens = Json::array(), alphas = Json::array();
    for (auto const& u : r.units)
        units.push_back(to_json(u));
    for (auto const& g : r.h_generators)
        gens.push_back(to_json(g));
    for (auto const& a : r.alphas)
        alphas.push_back(to_json(a));
    return Json{{"field", to_json(r.field)},
                {"profile", to_json(r.profile)},
                {"unit_norms", r.unit_norms},
                {"units", units},
                {"h_generators", gens},
                {"h_order", r.h_order},
                {"index_factor", r.index_factor},
                {"common_norm", r.common_norm},
                {"alphas", alphas},
                {"h1_order", r.h1_order},
                {"po_order", r.po_order},
                {"po_structure", r.po_structure.str()},
                {"complete", r.complete},
                {"exact", r.exact()}};
}

Json to_json(const HypothesisCheck& h)
{
    Json conds = Json::object();
    for (auto const& c : h.conditions)
        conds[c.name] = c.ok;
    return Json{{"ok", h.ok}, {"conditions", conds}};
}

Json to_json(const EpsilonWitness& w)
{
    return Json{{"d", w.d},
                {"z", w.z.get_str()},
                {"t", w.t.get_str()},
                {"delta", w.delta},
                {"g", w.g},
                {"m", w.m.get_str()},
                {"n", w.n.get_str()},
                {"epsilon", w.epsilon},
                {"eta", w.eta},
                {"case_label", w.case_label},
                {"reconstructs", w.reconstructs},
                {"matches_a_value", w.matches_a_value}};
}

Json to_json(const TheoremReport& r)
{
    Json j{{"theorem", std::string(to_string(r.id))},
           {"triple", r.triple.str()},
           {"hypotheses_ok", r.hypotheses.ok},
           {"hypotheses", to_json(r.hypotheses)}};
    if (r.field)
        j["field"] = to_json(*r.field);
    Json ws = Json::array();
    for (auto const& w : r.witnesses)
        ws.push_back(to_json(w));
    j["epsilon_witnesses"] = ws;
    j["allowed_epsilons"] = r.allowed_epsilons;
    j["epsilon_in_allowed_set"] = r.epsilon_in_allowed_set ? Json(*r.epsilon_in_allowed_set) : Json();
    j["claim_matches"] = r.claim_matches;
    j["anomalies"] = r.anomalies;
    j["undecided"] = r.undecided ? Json(*r.undecided) : Json();
    return j;
}

Json to_json(const TableRow& r)
{
    Json j{{"row", "(2, " + std::to_string(r.triple.p) + ", " + std::to_string(r.triple.q) + ")"},
           {"ok", r.ok}};
    j["report"] = to_json(r.report);
    return j;
}

Json to_json(const ContrastReport& r)
{
    Json j{{"triple", r.triple.str()}, {"precondition", to_json(r.precondition)}};
    if (r.field)
        j["field"] = to_json(*r.field);
    j["matches"] = r.matches;
    j["anomalies"] = r.anomalies;
    return j;
}

Json to_json(const OracleReport& r)
{
    Json primes = Json::array();
    for (auto const& p : r.primes) {
        Json e{{"prime", p.prime}, {"principal", std::string(to_string(p.principal))}};
        e["generator"] = p.generator ? to_json(*p.generator) : Json();
        primes.push_back(e);
    }
    return Json{{"d", r.d}, {"verdict", std::string(to_string(r.verdict))}, {"primes", primes}};
}

Json to_json(const ZantemaVerdict& v)
{
    return Json{{"verdict", std::string(to_string(v.verdict))},
                {"matched_case", v.matched_case},
                {"label", v.label}};
}

Json to_json(const LericheVerdict& v)
{
    return Json{{"verdict", std::string(to_string(v.verdict))}, {"rule", v.rule}};
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        const Json& v = it.value();
        if (v.is_object())
            flatten(v, key, out);
        else if (v.is_array())
            out.emplace_back(key, v.dump());
        else if (v.is_string())
            out.emplace_back(key, v.get<std::string>());
        else if (v.is_null())
            out.emplace_back(key, "");
        else
            out.emplace_back(key, v.dump());
    }
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

void write_text(std::ostream& os, const Json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        os << pad << it.key() << ":";
        if (v.is_object()) {
            os << "\n";
            write_text(os, v, indent + 1);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << "\n";
            for (auto const& e : v) {
                os << pad << "  -\n";
                write_text(os, e, indent + 2);
            }
        } else if (v.is_string()) {
            os << " " << v.get<std::string>() << "\n";
        } else {
            os << " " << v.dump() << "\n";
        }
    }
}

void ReportWriter::write(const Json& report)
{
    switch (format_) {
    case Format::json:
        os_ << report.dump() << "\n";
        break;
    case Format::text:
        write_text(os_, report);
        os_ << "\n";
        break;
    case Format::csv: {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(report, "", cells);
        if (!header_written_) {
            for (auto const& [k, v] : cells)
                columns_.push_back(k);
            for (std::size_t i = 0; i < columns_.size(); ++i)
                os_ << (i ? "," : "") << csv_cell(columns_[i]);
            os_ << "\n";
            header_written_ = true;
        }
        std::map<std::string, std::string> byname(cells.begin(), cells.end());
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            auto it = byname.find(columns_[i]);
            os_ << (i ? "," : "") << (it == byname.end() ? "" : csv_cell(it->second));
        }
        os_ << "\n";
        break;
    }
    }
}

}  // namespace polya

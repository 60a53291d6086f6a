#pragma once

#include <ostream>
#include <vector>

#include <json.hpp>

#include "polya/verify.hpp"

namespace polya {

using Json = nlohmann::ordered_json;

// Numbers that may outgrow 64 bits (unit coefficients, witnesses) become decimal strings.
Json to_json(const SquareClass& c);
Json to_json(const FundamentalUnit& u);
Json to_json(const NormEquationSolution& s);
Json to_json(const RamificationProfile& r);
Json to_json(const BiquadraticField& k);
Json to_json(const PolyaReport& r);
Json to_json(const HypothesisCheck& h);
Json to_json(const EpsilonWitness& w);
Json to_json(const TheoremReport& r);
Json to_json(const TableRow& r);
Json to_json(const ContrastReport& r);
Json to_json(const OracleReport& r);
Json to_json(const ZantemaVerdict& v);
Json to_json(const LericheVerdict& v);

enum class Format { json, csv, text };

/* Streams one report per call. JSON emits one object per line; CSV writes the
 * header on first use, taken from the first row, nested objects flattened with
 * dotted keys and arrays JSON-encoded in a single cell. */
class ReportWriter {
public:
    ReportWriter(std::ostream& os, Format f) : os_(os), format_(f) {}

    void write(const Json& report);

private:
    std::ostream& os_;
    Format format_;
    std::vector<std::string> columns_;
    bool header_written_ = false;
};

void write_text(std::ostream& os, const Json& j, int indent = 0);

}  // namespace polya

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "srl/conjugacy.hpp"
#include "srl/counting.hpp"
#include "srl/group_spec.hpp"
#include "srl/numeric.hpp"
#include "srl/verifier.hpp"

namespace srl {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON report records.
//
// Every record is a flat JSON object with a "record" type tag and conforms
// to schema/report.schema.json.  Potentially huge integers (group orders,
// class-size arithmetic) are serialized as decimal strings; exact rationals
// as "p/q" or plain "n" strings; small counters (k, seeds, sizes) as JSON
// numbers.  Object keys are emitted in sorted order, so a record's dump()
// is byte-stable.
// ---------------------------------------------------------------------------

std::string big_str(const BigInt& n);
std::string rational_str(const Rational& r);

// Echo of how the class/element was selected on the command line.
struct SelectorEcho {
  std::optional<std::uint64_t> order;
  std::optional<std::string> kind;
  std::optional<std::string> cycles;

  std::string canonical() const;  // "order:5" / "kind:transvection" / ...
};

Json parse_record(const std::string& input, const GroupSpec& spec);

// `cls` may be null when the class was not enumerable (random searches on
// classes past the enumeration cap); the class object then carries the
// element order with a null size.
Json witness_record(const std::string& group, const SelectorEcho& selector,
                    const Perm& x, const ConjugacyClass* cls,
                    const WitnessReport& report, std::uint64_t budget);

// One record per emitted survey row.  `power_coupled` is the number of
// conjugacy classes this row speaks for (classes of x, x^2, ... fuse, since
// <x^k, (x^k)^g> = <x, x^g> whenever k is coprime to the order of x).
Json survey_class_record(const std::string& group, const TheoremSurvey& survey,
                         const ClassVerdictRow& row, unsigned power_coupled);

struct SurveySummary {
  std::size_t classes_total = 0;    // odd-prime-order classes surveyed
  std::size_t records = 0;          // rows emitted after power fusion
  std::size_t in_radical = 0;
  std::size_t pair_witnesses = 0;
  std::size_t exceptions = 0;
  std::size_t violations = 0;
  std::size_t no_pair_found = 0;
};

Json survey_summary_record(const std::string& group,
                           const TheoremSurvey& survey,
                           const SurveySummary& summary);

Json radical_record(const std::string& group, const PermGroup& g,
                    const RadicalResult& radical);

Json count_record(const CountingInstance& instance,
                  const CountingVerdict& verdict);

Json audit_record(const FieldAutoAudit& audit);

Json error_record(const std::string& command, const std::string& code,
                  const std::string& message);

// Fixed-width text rendering of any of the records above, for
// --format table.
std::string render_table(const Json& record);

}  // namespace srl

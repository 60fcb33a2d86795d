#include "srl/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace srl {

std::string big_str(const BigInt& n) { return n.str(); }

std::string rational_str(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

std::string SelectorEcho::canonical() const {
  if (kind) return "kind:" + *kind;
  if (order) return "order:" + std::to_string(*order);
  if (cycles) return "cycles:" + *cycles;
  return "none";
}

namespace {

Json selector_json(const SelectorEcho& s) {
  Json j = Json::object();
  j["order"] = s.order ? Json(*s.order) : Json(nullptr);
  j["kind"] = s.kind ? Json(*s.kind) : Json(nullptr);
  j["cycles"] = s.cycles ? Json(*s.cycles) : Json(nullptr);
  return j;
}

Json witness_json(const WitnessReport& r) {
  Json j = Json::object();
  j["status"] = witness_status_name(r.status);
  j["k"] = r.k;
  j["mode"] = witness_mode_name(r.mode);
  j["target"] = witness_target_name(r.target);
  j["seed"] = r.seed;
  j["tuples_tested"] = r.tuples_tested;
  j["fell_back_to_random"] = r.fell_back_to_random;
  j["note"] = r.note;
  Json conjugators = Json::array();
  for (const Perm& g : r.conjugators) conjugators.push_back(g.cycle_string());
  j["conjugators"] = std::move(conjugators);
  Json conjugates = Json::array();
  for (const Perm& y : r.conjugates) conjugates.push_back(y.cycle_string());
  j["conjugates"] = std::move(conjugates);
  if (r.status == WitnessStatus::WitnessFound) {
    j["subgroup_order"] = big_str(r.subgroup_order);
    j["solvable"] = r.solvable;
  } else {
    j["subgroup_order"] = nullptr;
    j["solvable"] = nullptr;
  }
  return j;
}

}  // namespace

Json parse_record(const std::string& input, const GroupSpec& spec) {
  Json j = Json::object();
  j["record"] = "parse";
  j["input"] = input;
  j["canonical"] = spec.str();
  j["family"] = family_name(spec.family);
  j["n"] = spec.n;
  j["q"] = spec.q;
  Json inner = Json::array();
  for (const GroupSpec& s : spec.inner) inner.push_back(s.str());
  j["inner"] = std::move(inner);
  return j;
}

Json witness_record(const std::string& group, const SelectorEcho& selector,
                    const Perm& x, const ConjugacyClass* cls,
                    const WitnessReport& report, std::uint64_t budget) {
  Json j = witness_json(report);
  j["record"] = "witness";
  j["group"] = group;
  j["selector"] = selector_json(selector);
  j["budget"] = budget;
  Json c = Json::object();
  c["representative"] = x.cycle_string();
  c["element_order"] = big_str(x.element_order());
  c["size"] = cls ? Json(cls->size()) : Json(nullptr);
  j["class"] = std::move(c);
  return j;
}

Json survey_class_record(const std::string& group, const TheoremSurvey& survey,
                         const ClassVerdictRow& row, unsigned power_coupled) {
  const ConjugacyClass& cls = survey.survey.classes[row.class_index];
  Json j = Json::object();
  j["record"] = "survey_class";
  j["group"] = group;
  j["class_index"] = row.class_index;
  j["representative"] = cls.canonical_representative().cycle_string();
  j["element_order"] = big_str(row.element_order);
  j["class_size"] = row.class_size;
  j["in_radical"] = row.in_radical;
  j["verdict"] = class_verdict_name(row.verdict);
  j["power_coupled"] = power_coupled;
  j["pair"] = row.pair ? witness_json(*row.pair) : Json(nullptr);
  Json esc = Json::array();
  for (const WitnessReport& r : row.escalations) esc.push_back(witness_json(r));
  j["escalations"] = std::move(esc);
  if (row.table1_row) {
    const Table1Row& t = table1_rows()[*row.table1_row];
    Json tj = Json::object();
    tj["row"] = *row.table1_row;
    tj["socle"] = t.socle;
    tj["element"] = t.element;
    j["table1"] = std::move(tj);
  } else {
    j["table1"] = nullptr;
  }
  return j;
}

Json survey_summary_record(const std::string& group,
                           const TheoremSurvey& survey,
                           const SurveySummary& summary) {
  Json j = Json::object();
  j["record"] = "survey_summary";
  j["group"] = group;
  j["group_order"] = big_str(survey.survey.covered);
  j["radical_order"] = big_str(survey.radical.order);
  j["classes_total"] = summary.classes_total;
  j["records"] = summary.records;
  j["in_radical"] = summary.in_radical;
  j["pair_witnesses"] = summary.pair_witnesses;
  j["exceptions"] = summary.exceptions;
  j["violations"] = summary.violations;
  j["no_pair_found"] = summary.no_pair_found;
  return j;
}

Json radical_record(const std::string& group, const PermGroup& g,
                    const RadicalResult& radical) {
  Json j = Json::object();
  j["record"] = "radical";
  j["group"] = group;
  j["group_order"] = big_str(g.order());
  j["order"] = big_str(radical.order);
  j["index"] = big_str(g.order() / radical.order);
  j["trivial"] = radical.order == 1;
  j["solvable_class_reps"] = radical.solvable_class_reps.size();
  return j;
}

Json count_record(const CountingInstance& instance,
                  const CountingVerdict& verdict) {
  Json j = Json::object();
  j["record"] = "count";
  j["form"] = counting_form_name(verdict.form);
  j["group_order"] = big_str(instance.group_order);
  j["class_size"] = big_str(instance.class_size);
  Json subs = Json::array();
  for (std::size_t i = 0; i < instance.subgroups.size(); ++i) {
    const SubgroupDatum& d = instance.subgroups[i];
    Json s = Json::object();
    s["label"] = d.label;
    s["intersection"] = big_str(d.intersection);
    s["index"] = big_str(d.index);
    s["n"] = rational_str(instance.n_value(i));
    subs.push_back(std::move(s));
  }
  j["subgroups"] = std::move(subs);
  j["lhs"] = rational_str(verdict.lhs);
  j["rhs"] = rational_str(verdict.rhs);
  j["margin"] = rational_str(verdict.margin);
  j["holds"] = verdict.criterion_holds;
  return j;
}

Json audit_record(const FieldAutoAudit& audit) {
  Json j = Json::object();
  j["record"] = "audit";
  j["family"] = audit_family_name(audit.family);
  j["q0"] = audit.q0;
  j["p"] = audit.p;
  j["q"] = big_str(audit.q);
  j["lhs"] = rational_str(audit.lhs);
  Json terms = Json::array();
  for (const AuditTerm& t : audit.terms) {
    Json tj = Json::object();
    tj["label"] = t.label;
    tj["value"] = rational_str(t.value);
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  j["bound"] = rational_str(audit.bound);
  j["holds"] = audit.holds;
  return j;
}

Json error_record(const std::string& command, const std::string& code,
                  const std::string& message) {
  Json j = Json::object();
  j["record"] = "error";
  j["command"] = command;
  j["error"] = code;
  j["message"] = message;
  return j;
}

// ---------------------------------------------------------------------------
// Table rendering.
// ---------------------------------------------------------------------------

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

class TableBuilder {
public:
  void kv(const std::string& key, const Json& value) {
    rows_.emplace_back(key, scalar_text(value));
  }
  void kv_text(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }

  std::string str() const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    std::ostringstream out;
    for (const auto& [k, v] : rows_) {
      out << k;
      for (std::size_t i = k.size(); i < width + 2; ++i) out << ' ';
      out << v << "\n";
    }
    return out.str();
  }

private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string join_array(const Json& arr) {
  std::string out;
  for (const Json& v : arr) {
    if (!out.empty()) out += ", ";
    out += scalar_text(v);
  }
  return out.empty() ? "-" : out;
}

void add_witness_fields(TableBuilder& t, const Json& w,
                        const std::string& prefix) {
  t.kv(prefix + "status", w.at("status"));
  t.kv(prefix + "k", w.at("k"));
  t.kv(prefix + "mode", w.at("mode"));
  t.kv(prefix + "target", w.at("target"));
  t.kv(prefix + "seed", w.at("seed"));
  t.kv(prefix + "tuples tested", w.at("tuples_tested"));
  t.kv_text(prefix + "conjugators", join_array(w.at("conjugators")));
  t.kv_text(prefix + "conjugates", join_array(w.at("conjugates")));
  t.kv(prefix + "subgroup order", w.at("subgroup_order"));
  t.kv(prefix + "solvable", w.at("solvable"));
  if (w.at("fell_back_to_random").get<bool>())
    t.kv_text(prefix + "fell back to random", "yes");
  const std::string note = w.at("note").get<std::string>();
  if (!note.empty()) t.kv_text(prefix + "note", note);
}

}  // namespace

std::string render_table(const Json& record) {
  const std::string type = record.at("record").get<std::string>();
  TableBuilder t;
  t.kv_text("record", type);
  if (type == "parse") {
    t.kv("input", record.at("input"));
    t.kv("canonical", record.at("canonical"));
    t.kv("family", record.at("family"));
    t.kv("n", record.at("n"));
    t.kv("q", record.at("q"));
    if (!record.at("inner").empty())
      t.kv_text("inner", join_array(record.at("inner")));
  } else if (type == "witness") {
    t.kv("group", record.at("group"));
    const Json& sel = record.at("selector");
    for (const char* key : {"kind", "order", "cycles"})
      if (!sel.at(key).is_null()) t.kv(std::string("selector ") + key, sel.at(key));
    const Json& cls = record.at("class");
    t.kv("class rep", cls.at("representative"));
    t.kv("element order", cls.at("element_order"));
    t.kv("class size", cls.at("size"));
    t.kv("budget", record.at("budget"));
    add_witness_fields(t, record, "");
    if (record.contains("cached")) t.kv("cached", record.at("cached"));
  } else if (type == "survey_class") {
    t.kv("group", record.at("group"));
    t.kv("class index", record.at("class_index"));
    t.kv("representative", record.at("representative"));
    t.kv("element order", record.at("element_order"));
    t.kv("class size", record.at("class_size"));
    t.kv("power coupled", record.at("power_coupled"));
    t.kv("in radical", record.at("in_radical"));
    t.kv("verdict", record.at("verdict"));
    if (!record.at("pair").is_null())
      add_witness_fields(t, record.at("pair"), "pair ");
    const Json& esc = record.at("escalations");
    for (std::size_t i = 0; i < esc.size(); ++i)
      add_witness_fields(t, esc[i],
                         "k=" + scalar_text(esc[i].at("k")) + " ");
    if (!record.at("table1").is_null()) {
      t.kv("exception socle", record.at("table1").at("socle"));
      t.kv("exception element", record.at("table1").at("element"));
    }
  } else if (type == "survey_summary") {
    t.kv("group", record.at("group"));
    t.kv("group order", record.at("group_order"));
    t.kv("radical order", record.at("radical_order"));
    t.kv("classes total", record.at("classes_total"));
    t.kv("records", record.at("records"));
    t.kv("in radical", record.at("in_radical"));
    t.kv("pair witnesses", record.at("pair_witnesses"));
    t.kv("exceptions", record.at("exceptions"));
    t.kv("violations", record.at("violations"));
    t.kv("no pair found", record.at("no_pair_found"));
  } else if (type == "radical") {
    t.kv("group", record.at("group"));
    t.kv("group order", record.at("group_order"));
    t.kv("order", record.at("order"));
    t.kv("index", record.at("index"));
    t.kv("trivial", record.at("trivial"));
    t.kv("solvable class reps", record.at("solvable_class_reps"));
  } else if (type == "count") {
    t.kv("form", record.at("form"));
    t.kv("group order", record.at("group_order"));
    t.kv("class size", record.at("class_size"));
    for (const Json& s : record.at("subgroups"))
      t.kv_text(scalar_text(s.at("label")),
                "intersection " + scalar_text(s.at("intersection")) +
                    "  index " + scalar_text(s.at("index")) + "  n " +
                    scalar_text(s.at("n")));
    t.kv("lhs", record.at("lhs"));
    t.kv("rhs", record.at("rhs"));
    t.kv("margin", record.at("margin"));
    t.kv("holds", record.at("holds"));
  } else if (type == "audit") {
    t.kv("family", record.at("family"));
    t.kv("q0", record.at("q0"));
    t.kv("p", record.at("p"));
    t.kv("q", record.at("q"));
    t.kv("lhs", record.at("lhs"));
    for (const Json& term : record.at("terms"))
      t.kv_text("term " + scalar_text(term.at("label")),
                scalar_text(term.at("value")));
    t.kv("bound", record.at("bound"));
    t.kv("holds", record.at("holds"));
  } else if (type == "error") {
    t.kv("command", record.at("command"));
    t.kv("error", record.at("error"));
    t.kv("message", record.at("message"));
  } else {
    return record.dump() + "\n";
  }
  return t.str();
}

}  // namespace srl

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "srl/atlas.hpp"
#include "srl/cache.hpp"
#include "srl/conjugacy.hpp"
#include "srl/counting.hpp"
#include "srl/error.hpp"
#include "srl/report.hpp"
#include "srl/verifier.hpp"

namespace {

using srl::Json;

constexpr int kOk = 0;          // claims verified / witnesses found
constexpr int kFailed = 1;      // violation or failed expectation
constexpr int kInfeasible = 2;  // infeasible, out of budget, bad input

struct Options {
  std::string group;
  std::string kind;
  std::optional<std::uint64_t> order;
  std::string element;
  unsigned k = 2;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 10'000;
  unsigned workers = 1;
  std::string cache_dir;
  std::string format = "json";
  std::string instance_path;
  std::string form = "full";
  std::string family;
  std::uint64_t q0 = 0;
  unsigned p = 0;
};

void emit(const Json& record, const Options& o) {
  if (o.format == "table")
    std::cout << srl::render_table(record) << "\n";
  else
    std::cout << record.dump() << "\n";
  std::cout.flush();
}

void emit_raw(const Json& record) {
  std::cout << record.dump() << "\n" << std::flush;
}

// Flat key=value configuration file mirroring the long flags: every line
// sets --<key> unless that flag was given explicitly on the command line
// (flags win).  '#' starts a comment; values may be single- or double-quoted.
// The path comes from --config or the SRL_CONFIG environment variable.
void merge_config_file(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty())
    if (const char* env = std::getenv("SRL_CONFIG")) path = env;
  if (path.empty()) return;

  std::ifstream in(path);
  if (!in) throw srl::IoError("cannot read config file " + path);

  auto given = [&args](const std::string& flag) {
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    if (std::size_t end = s.find_last_not_of(ws); end != std::string::npos)
      s.erase(end + 1);
    return s;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty())
      throw srl::ParseError("config file " + path + " line " +
                            std::to_string(lineno) + ": expected key=value");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == value.back() &&
        (value.front() == '"' || value.front() == '\''))
      value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (flag == "--config" || given(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
}

template <typename Fn>
int guarded(const std::string& command, const Options& o, Fn&& fn) {
  try {
    return fn();
  } catch (const srl::Error& e) {
    emit(srl::error_record(command, e.code(), e.what()), o);
    return kInfeasible;
  } catch (const std::exception& e) {
    emit(srl::error_record(command, "InternalError", e.what()), o);
    return kInfeasible;
  }
}

std::uint64_t seed_value(const Options& o) { return o.seed.value_or(0); }

srl::SelectorEcho selector_echo(const Options& o) {
  srl::SelectorEcho echo;
  if (!o.kind.empty()) echo.kind = o.kind;
  if (o.order) echo.order = *o.order;
  if (!o.element.empty()) echo.cycles = o.element;
  return echo;
}

// ---------------------------------------------------------------------------
// Class/element selection.
// ---------------------------------------------------------------------------

struct ResolvedSelector {
  srl::Perm x{1};
  std::optional<srl::ConjugacyClass> cls;  // absent past the enumeration cap
};

std::optional<srl::ElementKind> kind_target(const std::string& kind) {
  if (kind == "transvection") return srl::ElementKind::Transvection;
  if (kind == "reflection") return srl::ElementKind::UnitaryReflection;
  if (kind == "siegel") return srl::ElementKind::Siegel;
  return std::nullopt;
}

std::string class_summary(const srl::ConjugacyClass& cls) {
  std::ostringstream out;
  out << cls.canonical_representative().cycle_string() << " (order "
      << cls.element_order() << ", size " << cls.size() << ")";
  return out.str();
}

// True when y is conjugate to a power x^j with gcd(j, |x|) = 1; such
// classes carry identical witness verdicts, because <x^j, (x^j)^g> equals
// <x, x^g> for every g.
bool power_coupled(const srl::ConjugacyClass& of_x,
                   const srl::ConjugacyClass& other) {
  if (of_x.element_order() != other.element_order()) return false;
  if (of_x.size() != other.size()) return false;
  const srl::Perm& x = of_x.representative();
  const std::uint64_t ord = of_x.element_order().convert_to<std::uint64_t>();
  for (std::uint64_t j = 2; j < ord; ++j) {
    if (std::gcd(j, ord) != 1) continue;
    if (other.contains(x.power(static_cast<std::int64_t>(j)))) return true;
  }
  return false;
}

ResolvedSelector resolve_selector(const srl::BuiltGroup& g, const Options& o) {
  const int given = (!o.kind.empty() ? 1 : 0) + (o.order ? 1 : 0) +
                    (!o.element.empty() ? 1 : 0);
  if (given != 1)
    throw srl::PreconditionViolated(
        "exactly one of --kind, --order, --element must be given");

  ResolvedSelector r;
  if (!o.element.empty()) {
    r.x = srl::Perm::from_cycles(g.group.degree(), o.element);
    if (!g.group.contains(r.x))
      throw srl::PreconditionViolated("--element is not a member of " +
                                      g.spec.str());
  } else if (!o.kind.empty()) {
    if (const srl::Distinguished* d = g.find_distinguished(o.kind)) {
      r.x = d->perm;
    } else {
      // Fall back to structural classification of class representatives.
      const std::optional<srl::ElementKind> want = kind_target(o.kind);
      std::string available;
      for (const srl::Distinguished& dist : g.distinguished)
        available += (available.empty() ? "" : ", ") + dist.label;
      if (available.empty()) available = "none";
      if (!want)
        throw srl::UnsupportedSpec("unknown kind '" + o.kind +
                                   "'; distinguished elements here: " +
                                   available);
      srl::ClassSurvey survey = srl::class_survey(g.group, seed_value(o));
      if (!survey.complete)
        throw srl::Infeasible(
            "cannot enumerate the classes to resolve --kind " + o.kind);
      std::vector<const srl::ConjugacyClass*> hits;
      for (const srl::ConjugacyClass& cls : survey.classes)
        if (srl::classify_element(g, cls.canonical_representative()) == want)
          hits.push_back(&cls);
      if (hits.empty())
        throw srl::UnsupportedSpec("no class of kind '" + o.kind + "' in " +
                                   g.spec.str() +
                                   "; distinguished elements here: " +
                                   available);
      if (hits.size() > 1) {
        std::string listing;
        for (const srl::ConjugacyClass* c : hits)
          listing += "\n  " + class_summary(*c);
        throw srl::UnsupportedSpec("kind '" + o.kind + "' is ambiguous in " +
                                   g.spec.str() + "; candidates:" + listing);
      }
      r.cls = *hits[0];
      r.x = r.cls->representative();
      return r;
    }
  } else {
    srl::ClassSurvey survey = srl::class_survey(g.group, seed_value(o));
    if (!survey.complete)
      throw srl::Infeasible("cannot enumerate the classes to resolve --order");
    std::vector<const srl::ConjugacyClass*> hits;
    for (const srl::ConjugacyClass& cls : survey.classes)
      if (cls.element_order() == srl::BigInt(*o.order)) hits.push_back(&cls);
    if (hits.empty())
      throw srl::UnsupportedSpec("no class of element order " +
                                 std::to_string(*o.order) + " in " +
                                 g.spec.str());
    // Deterministic base: the smallest canonical representative.
    std::sort(hits.begin(), hits.end(),
              [](const srl::ConjugacyClass* a, const srl::ConjugacyClass* b) {
                return a->canonical_representative().encode() <
                       b->canonical_representative().encode();
              });
    for (std::size_t i = 1; i < hits.size(); ++i)
      if (!power_coupled(*hits[0], *hits[i])) {
        std::string listing;
        for (const srl::ConjugacyClass* c : hits)
          listing += "\n  " + class_summary(*c);
        throw srl::UnsupportedSpec(
            "order " + std::to_string(*o.order) + " is ambiguous in " +
            g.spec.str() + " (classes are not powers of one another); "
            "candidates:" + listing);
      }
    r.cls = *hits[0];
    r.x = r.cls->representative();
    return r;
  }

  try {
    r.cls.emplace(g.group, r.x);
  } catch (const srl::ClassTooLarge&) {
    r.cls.reset();  // random searches still work without the class
  }
  return r;
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

int exit_for_status(const std::string& status) {
  if (status == srl::witness_status_name(srl::WitnessStatus::NoneBudget))
    return kInfeasible;
  return kOk;
}

srl::WitnessReport dispatch_witness(const srl::WitnessQuery& query,
                                    const std::optional<srl::ConjugacyClass>& cls) {
  if (query.k == 2)
    return cls ? srl::pair_witness(query, *cls) : srl::pair_witness(query);
  return cls ? srl::tuple_witness(query, *cls) : srl::tuple_witness(query);
}

srl::WitnessReport run_witness(const srl::WitnessQuery& query,
                               const std::optional<srl::ConjugacyClass>& cls,
                               unsigned workers) {
  if (workers <= 1 || query.mode != srl::WitnessMode::Random)
    return dispatch_witness(query, cls);

  // Random searches parallelize over disjoint seed streams; any witness is
  // acceptable, so the lowest-indexed winner is returned.
  std::vector<std::optional<srl::WitnessReport>> results(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::uint64_t share = query.budget / workers;
  const std::uint64_t extra = query.budget % workers;
  for (unsigned i = 0; i < workers; ++i) {
    threads.emplace_back([&, i] {
      srl::WitnessQuery q = query;
      q.seed = query.seed + 0x9E3779B97F4A7C15ull * i;
      q.budget = share + (i < extra ? 1 : 0);
      try {
        results[i] = dispatch_witness(q, cls);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (unsigned i = 0; i < workers; ++i)
    if (results[i] && results[i]->status == srl::WitnessStatus::WitnessFound)
      return *results[i];
  for (unsigned i = 0; i < workers; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  srl::WitnessReport merged = *results[0];
  for (unsigned i = 1; i < workers; ++i)
    merged.tuples_tested += results[i]->tuples_tested;
  merged.seed = query.seed;
  merged.note = "budget split across " + std::to_string(workers) + " workers";
  return merged;
}

int cmd_witness(const Options& o) {
  if (o.mode == "random" && !o.seed)
    throw srl::PreconditionViolated("--seed is required when --mode random");
  if (o.workers > 1 && o.mode != "random")
    std::cerr << "srl: --workers applies to random witness searches; "
                 "running single-threaded\n";

  const srl::GroupSpec spec = srl::parse_group_spec(o.group);
  const srl::SelectorEcho echo = selector_echo(o);
  std::ostringstream cfg;
  cfg << "witness|group=" << spec.str() << "|selector=" << echo.canonical()
      << "|k=" << o.k << "|mode=" << o.mode << "|seed=" << seed_value(o)
      << "|budget=" << o.budget;

  if (!o.cache_dir.empty()) {
    if (std::optional<Json> hit = srl::cache_lookup(o.cache_dir, cfg.str())) {
      Json record = *hit;
      record["cached"] = true;
      emit(record, o);
      return exit_for_status(record.value("status", ""));
    }
  }

  const srl::BuiltGroup g = srl::build_group(spec);
  ResolvedSelector sel = resolve_selector(g, o);

  srl::WitnessQuery query{g.group, sel.x};
  query.k = o.k;
  query.mode = o.mode == "random" ? srl::WitnessMode::Random
                                  : srl::WitnessMode::Exhaustive;
  query.budget = o.budget;
  query.seed = seed_value(o);

  const srl::WitnessReport report = run_witness(query, sel.cls, o.workers);
  Json record = srl::witness_record(o.group, echo, sel.x,
                                    sel.cls ? &*sel.cls : nullptr, report,
                                    o.budget);
  if (!o.cache_dir.empty()) {
    if (report.status == srl::WitnessStatus::NoneExhaustive)
      srl::cache_store(o.cache_dir, cfg.str(), record);
    record["cached"] = false;
  }
  emit(record, o);
  return exit_for_status(srl::witness_status_name(report.status));
}

// ---------------------------------------------------------------------------
// survey
// ---------------------------------------------------------------------------

int cmd_survey(const Options& o) {
  const srl::GroupSpec spec = srl::parse_group_spec(o.group);
  const srl::BuiltGroup g = srl::build_group(spec);
  srl::SurveyOptions sopts;
  sopts.seed = seed_value(o);
  sopts.random_budget = o.budget;
  const srl::TheoremSurvey s = srl::theorem_a_survey(g, sopts);

  srl::SurveySummary summary;
  summary.classes_total = s.rows.size();
  bool violation = false;
  bool no_pair = false;

  std::vector<bool> fused(s.rows.size(), false);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    if (fused[i]) continue;
    const srl::ConjugacyClass& cls_i = s.survey.classes[s.rows[i].class_index];
    unsigned coupled = 1;
    for (std::size_t j = i + 1; j < s.rows.size(); ++j) {
      if (fused[j]) continue;
      if (s.rows[j].verdict != s.rows[i].verdict) continue;
      const srl::ConjugacyClass& cls_j =
          s.survey.classes[s.rows[j].class_index];
      if (power_coupled(cls_i, cls_j)) {
        fused[j] = true;
        ++coupled;
      }
    }
    emit(srl::survey_class_record(o.group, s, s.rows[i], coupled), o);
    ++summary.records;
    switch (s.rows[i].verdict) {
      case srl::ClassVerdict::InRadical:
        ++summary.in_radical;
        break;
      case srl::ClassVerdict::PairWitness:
        ++summary.pair_witnesses;
        break;
      case srl::ClassVerdict::Table1Exception:
        ++summary.exceptions;
        break;
      case srl::ClassVerdict::Violation:
        ++summary.violations;
        break;
      case srl::ClassVerdict::NoPairFound:
        ++summary.no_pair_found;
        break;
    }
  }
  // Exit-code scan covers every row, fused or not.
  for (const srl::ClassVerdictRow& row : s.rows) {
    if (row.verdict == srl::ClassVerdict::Violation) violation = true;
    if (row.verdict == srl::ClassVerdict::NoPairFound) no_pair = true;
  }
  emit(srl::survey_summary_record(o.group, s, summary), o);
  if (violation) return kFailed;
  return no_pair ? kInfeasible : kOk;
}

// ---------------------------------------------------------------------------
// count / audit / radical / parse
// ---------------------------------------------------------------------------

int cmd_count(const Options& o) {
  std::ifstream in(o.instance_path);
  if (!in) throw srl::IoError("cannot read " + o.instance_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const srl::CountingInstance inst = srl::load_counting_instance(buffer.str());
  const srl::CountingForm form = o.form == "remark" ? srl::CountingForm::Remark
                                                    : srl::CountingForm::Full;
  const srl::CountingVerdict verdict = srl::counting_check(inst, form);
  emit(srl::count_record(inst, verdict), o);
  return verdict.criterion_holds ? kOk : kFailed;
}

int cmd_audit(const Options& o) {
  std::string fam = o.family;
  std::transform(fam.begin(), fam.end(), fam.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  srl::AuditFamily family;
  if (fam == "psl2")
    family = srl::AuditFamily::PSL2;
  else if (fam == "szb2")
    family = srl::AuditFamily::SzB2;
  else if (fam == "reeg2")
    family = srl::AuditFamily::ReeG2;
  else
    throw srl::InvalidFamilyParams("unknown audit family '" + o.family +
                                   "' (expected psl2, szb2, or reeg2)");
  const srl::FieldAutoAudit audit = srl::field_auto_bound_audit(family, o.q0, o.p);
  emit(srl::audit_record(audit), o);
  return audit.holds ? kOk : kFailed;
}

int cmd_radical(const Options& o) {
  const srl::GroupSpec spec = srl::parse_group_spec(o.group);
  const srl::BuiltGroup g = srl::build_group(spec);
  const srl::RadicalResult radical =
      srl::solvable_radical(g.group, seed_value(o));
  emit(srl::radical_record(o.group, g.group, radical), o);
  return kOk;
}

int cmd_parse(const Options& o) {
  const srl::GroupSpec spec = srl::parse_group_spec(o.group);
  emit(srl::parse_record(o.group, spec), o);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srl: conjugate generation, solvable radicals, and counting "
               "bounds for small classical and permutation groups",
               "srl"};
  app.require_subcommand(1);

  Options o;

  std::string config_path_echo;  // read by the pre-pass; registered for --help
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path_echo,
                    "Flat key=value configuration file; flags win")
        ->envname("SRL_CONFIG");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->envname("SRL_FORMAT")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };
  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--group", o.group, "Group specification, e.g. PSL(3,3)")
        ->envname("SRL_GROUP")
        ->required();
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "Random seed")->envname("SRL_SEED");
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", o.budget, "Random-search tuple budget")
        ->envname("SRL_BUDGET")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* survey = app.add_subcommand(
      "survey", "Verdict for every class of odd prime order");
  add_config(survey);
  add_group(survey);
  add_seed(survey);
  add_budget(survey);
  add_format(survey);

  CLI::App* witness = app.add_subcommand(
      "witness", "Search for conjugates generating a non-solvable subgroup");
  add_config(witness);
  add_group(witness);
  witness->add_option("--kind", o.kind,
                      "Class selector: distinguished element label")
      ->envname("SRL_KIND");
  witness->add_option("--order", o.order, "Class selector: element order")
      ->envname("SRL_ORDER");
  witness->add_option("--element", o.element,
                      "Class selector: explicit cycles, e.g. \"(1,2,3)\"")
      ->envname("SRL_ELEMENT");
  witness->add_option("--k", o.k, "Number of conjugates including x")
      ->envname("SRL_K")
      ->check(CLI::Range(2u, 7u))
      ->capture_default_str();
  witness->add_option("--mode", o.mode, "Search mode")
      ->envname("SRL_MODE")
      ->check(CLI::IsMember({"exhaustive", "random"}))
      ->capture_default_str();
  add_seed(witness);
  add_budget(witness);
  witness->add_option("--workers", o.workers,
                      "Worker threads (random mode only)")
      ->envname("SRL_WORKERS")
      ->check(CLI::Range(1u, 64u))
      ->capture_default_str();
  witness->add_option("--cache-dir", o.cache_dir,
                      "Cache directory for exhaustive negatives")
      ->envname("SRL_CACHE_DIR");
  add_format(witness);

  CLI::App* count =
      app.add_subcommand("count", "Evaluate the counting criterion");
  add_config(count);
  count->add_option("--instance", o.instance_path, "Instance JSON file")
      ->envname("SRL_INSTANCE")
      ->required();
  count->add_option("--form", o.form, "Inequality form")
      ->envname("SRL_FORM")
      ->check(CLI::IsMember({"full", "remark"}))
      ->capture_default_str();
  add_format(count);

  CLI::App* audit = app.add_subcommand(
      "audit", "Evaluate a field-automorphism generation bound");
  add_config(audit);
  audit->add_option("--family", o.family, "psl2, szb2, or reeg2")
      ->envname("SRL_FAMILY")
      ->required();
  audit->add_option("--q0", o.q0, "Subfield size")
      ->envname("SRL_Q0")
      ->required();
  audit->add_option("--p", o.p, "Automorphism order (odd prime)")
      ->envname("SRL_P")
      ->required();
  add_format(audit);

  CLI::App* radical =
      app.add_subcommand("radical", "Compute the solvable radical");
  add_config(radical);
  add_group(radical);
  add_seed(radical);
  add_format(radical);

  CLI::App* parse =
      app.add_subcommand("parse", "Parse and echo a group specification");
  add_config(parse);
  add_group(parse);
  add_format(parse);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    merge_config_file(args);
  } catch (const srl::Error& e) {
    emit_raw(srl::error_record("config", e.code(), e.what()));
    return kInfeasible;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInfeasible;
  }

  if (survey->parsed()) return guarded("survey", o, [&] { return cmd_survey(o); });
  if (witness->parsed())
    return guarded("witness", o, [&] { return cmd_witness(o); });
  if (count->parsed()) return guarded("count", o, [&] { return cmd_count(o); });
  if (audit->parsed()) return guarded("audit", o, [&] { return cmd_audit(o); });
  if (radical->parsed())
    return guarded("radical", o, [&] { return cmd_radical(o); });
  if (parse->parsed()) return guarded("parse", o, [&] { return cmd_parse(o); });
  return kInfeasible;
}

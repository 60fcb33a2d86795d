#include "srl/counting.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srl/error.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Counting instances.
// ---------------------------------------------------------------------------

Rational CountingInstance::n_value(std::size_t i) const {
  if (i >= subgroups.size())
    throw PreconditionViolated("n_value: subgroup index out of range");
  const SubgroupDatum& d = subgroups[i];
  return Rational(d.intersection * d.index, class_size);
}

void CountingInstance::validate() const {
  auto fail = [](const std::string& what) {
    throw PreconditionViolated("counting instance: " + what);
  };
  if (group_order < 1) fail("group order must be positive");
  if (class_size < 1) fail("class size must be positive");
  if (group_order % class_size != 0)
    fail("class size does not divide the group order");
  for (const SubgroupDatum& d : subgroups) {
    if (d.index < 1) fail("index of " + d.label + " must be positive");
    if (group_order % d.index != 0)
      fail("index of " + d.label + " does not divide the group order");
    if (d.intersection < 0) fail("intersection of " + d.label + " is negative");
    if (d.intersection > class_size)
      fail("intersection of " + d.label + " exceeds the class size");
    if (d.intersection > group_order / d.index)
      fail("intersection of " + d.label + " exceeds the subgroup order");
  }
}

namespace {

BigInt big_of(const nlohmann::json& v, const std::string& what) {
  if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("counting instance: " + what +
                       " is not a decimal integer string");
    }
  }
  throw ParseError("counting instance: " + what +
                   " must be an integer or a decimal string");
}

}  // namespace

CountingInstance load_counting_instance(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("counting instance: ") + e.what());
  }
  CountingInstance inst;
  try {
    inst.group_order = big_of(j.at("group_order"), "group_order");
    inst.class_size = big_of(j.at("class_size"), "class_size");
    const nlohmann::json& subs = j.at("subgroups");
    if (!subs.is_array())
      throw ParseError("counting instance: subgroups must be an array");
    for (const nlohmann::json& s : subs) {
      SubgroupDatum d;
      d.label = s.at("label").get<std::string>();
      d.intersection = big_of(s.at("intersection"), d.label + ".intersection");
      d.index = big_of(s.at("index"), d.label + ".index");
      inst.subgroups.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("counting instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

CountingInstance measure_counting_instance(
    const ConjugacyClass& cls, const std::vector<PermGroup>& subgroups,
    const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != subgroups.size())
    throw PreconditionViolated(
        "measure_counting_instance: label/subgroup count mismatch");
  const PermGroup& g = cls.group();
  CountingInstance inst;
  inst.group_order = g.order();
  inst.class_size = BigInt(static_cast<std::uint64_t>(cls.size()));
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    const PermGroup& x = subgroups[i];
    if (x.degree() != g.degree())
      throw PreconditionViolated("measure_counting_instance: degree mismatch");
    for (const Perm& gen : x.generators())
      if (!g.contains(gen))
        throw PreconditionViolated(
            "measure_counting_instance: not a subgroup of the ambient group");
    SubgroupDatum d;
    d.label = labels.empty() ? "X" + std::to_string(i + 1) : labels[i];
    d.intersection =
        BigInt(static_cast<std::uint64_t>(class_intersection(cls, x)));
    d.index = inst.group_order / x.order();
    inst.subgroups.push_back(std::move(d));
  }
  inst.validate();
  return inst;
}

// ---------------------------------------------------------------------------
// The counting criterion.
// ---------------------------------------------------------------------------

const char* counting_form_name(CountingForm form) {
  return form == CountingForm::Full ? "full" : "remark";
}

CountingVerdict counting_check(const CountingInstance& inst,
                               CountingForm form) {
  inst.validate();
  CountingVerdict v;
  v.form = form;
  if (form == CountingForm::Full) {
    v.lhs = Rational(inst.class_size * inst.class_size);
    BigInt sum = 0;
    for (const SubgroupDatum& d : inst.subgroups)
      sum += d.intersection * d.intersection * d.index;
    v.rhs = Rational(sum);
  } else {
    v.lhs = Rational(inst.class_size * inst.class_size, inst.group_order);
    BigInt sum = 0;
    for (const SubgroupDatum& d : inst.subgroups) sum += d.intersection;
    v.rhs = Rational(sum);
  }
  v.margin = v.lhs - v.rhs;
  v.criterion_holds = v.lhs > v.rhs;
  return v;
}

// ---------------------------------------------------------------------------
// The union bound behind the criterion.
// ---------------------------------------------------------------------------

namespace {

// 128-bit fingerprint (two FNV-1a streams) of a conjugated subgroup's
// sorted element encodings; used to key the conjugation-orbit BFS without
// storing each conjugate's full element set.
std::string set_fingerprint(const std::vector<std::string>& sorted_encodings) {
  std::uint64_t h1 = 1469598103934665603ull;
  std::uint64_t h2 = 1099511628211ull ^ 0x9e3779b97f4a7c15ull;
  for (const std::string& enc : sorted_encodings)
    for (unsigned char c : enc) {
      h1 = (h1 ^ c) * 1099511628211ull;
      h2 = (h2 ^ c) * 0x100000001b3ull + 0x9e3779b9u;
    }
  std::string key(16, '\0');
  for (int i = 0; i < 8; ++i) {
    key[i] = static_cast<char>((h1 >> (8 * i)) & 0xff);
    key[8 + i] = static_cast<char>((h2 >> (8 * i)) & 0xff);
  }
  return key;
}

}  // namespace

UnionBoundReport union_bound_check(const ConjugacyClass& cls,
                                   const std::vector<PermGroup>& subgroups) {
  const PermGroup& g = cls.group();
  std::unordered_set<std::string> class_encodings;
  for (const Perm& m : cls.members()) class_encodings.insert(m.encode());

  UnionBoundReport rep;
  rep.conjugate_sum = 0;
  std::unordered_set<std::string> union_encodings;

  for (const PermGroup& x : subgroups) {
    if (x.degree() != g.degree())
      throw PreconditionViolated("union_bound_check: degree mismatch");
    for (const Perm& gen : x.generators())
      if (!g.contains(gen))
        throw PreconditionViolated(
            "union_bound_check: not a subgroup of the ambient group");
    if (x.order() > BigInt(static_cast<std::uint64_t>(kSubgroupElementCap))) {
      std::ostringstream msg;
      msg << "union_bound_check: subgroup of order " << x.order()
          << " exceeds the element cap " << kSubgroupElementCap;
      throw SubgroupOrbitTooLarge(msg.str());
    }
    std::vector<Perm> elements;
    x.for_each_element([&](const Perm& e) {
      elements.push_back(e);
      return true;
    });

    // Sorted encodings of x conjugated by t; doubles as the orbit key
    // input and the measurement data.
    auto conjugated_encodings = [&](const Perm& t) {
      std::vector<std::string> encs;
      encs.reserve(elements.size());
      for (const Perm& e : elements) encs.push_back(e.conjugated_by(t).encode());
      std::sort(encs.begin(), encs.end());
      return encs;
    };
    auto measure = [&](const std::vector<std::string>& encs) {
      std::uint64_t local = 0;
      for (const std::string& enc : encs)
        if (class_encodings.count(enc) != 0) {
          ++local;
          union_encodings.insert(enc);
        }
      rep.conjugate_sum += local;
    };

    std::unordered_set<std::string> seen;
    std::deque<Perm> work;
    std::size_t orbit = 1;
    {
      const Perm id(g.degree());
      std::vector<std::string> encs = conjugated_encodings(id);
      seen.insert(set_fingerprint(encs));
      measure(encs);
      work.push_back(id);
    }
    while (!work.empty()) {
      const Perm t = std::move(work.front());
      work.pop_front();
      for (const Perm& gen : g.generators()) {
        Perm child = t * gen;
        std::vector<std::string> encs = conjugated_encodings(child);
        if (!seen.insert(set_fingerprint(encs)).second) continue;
        if (++orbit > kOrbitCap) {
          std::ostringstream msg;
          msg << "union_bound_check: conjugation orbit exceeds " << kOrbitCap
              << " subgroups";
          throw SubgroupOrbitTooLarge(msg.str());
        }
        measure(encs);
        work.push_back(std::move(child));
      }
    }
    rep.orbit_sizes.push_back(orbit);
  }

  rep.union_count = union_encodings.size();
  const BigInt union_big(static_cast<std::uint64_t>(rep.union_count));
  rep.holds = union_big <= rep.conjugate_sum;
  rep.strict = union_big < rep.conjugate_sum;
  return rep;
}

// ---------------------------------------------------------------------------
// Commutator existence counts.
// ---------------------------------------------------------------------------

BigInt commutator_class_count(const PermGroup& g, const Perm& x,
                              std::uint64_t target_order) {
  if (x.degree() != g.degree())
    throw PreconditionViolated("commutator_class_count: degree mismatch");
  if (target_order == 0)
    throw PreconditionViolated(
        "commutator_class_count: target order must be positive");
  const BigInt target(target_order);

  if (g.order() <= BigInt(1'000'000)) {
    BigInt count = 0;
    g.for_each_element([&](const Perm& e) {
      if (x.commutator_with(e).element_order() == target) count += 1;
      return true;
    });
    return count;
  }

  // Large group: [x,g] = x⁻¹ · x^g and g ↦ x^g covers each class member
  // |C_G(x)| times, so sweep the class instead.
  try {
    ConjugacyClass cls(g, x);
    const Perm xinv = x.inverse();
    BigInt hits = 0;
    for (const Perm& y : cls.members())
      if ((xinv * y).element_order() == target) hits += 1;
    return hits * cls.centralizer_order();
  } catch (const ClassTooLarge& e) {
    throw Infeasible(std::string("commutator_class_count: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Field-automorphism bound audits.
// ---------------------------------------------------------------------------

const char* audit_family_name(AuditFamily family) {
  switch (family) {
    case AuditFamily::PSL2:
      return "PSL2";
    case AuditFamily::SzB2:
      return "SzB2";
    default:
      return "ReeG2";
  }
}

FieldAutoAudit field_auto_bound_audit(AuditFamily family, std::uint64_t q0,
                                      unsigned p) {
  if (!is_prime(p) || p == 2)
    throw InvalidFamilyParams(
        "field_auto_bound_audit: automorphism order must be an odd prime");
  const PrimePower pp = as_prime_power(q0);
  if (!pp)
    throw InvalidFamilyParams("field_auto_bound_audit: q0 must be a prime power");

  FieldAutoAudit a;
  a.family = family;
  a.q0 = q0;
  a.p = p;
  const BigInt Q0(q0);
  const BigInt q = big_pow(Q0, p);
  a.q = q;

  switch (family) {
    case AuditFamily::PSL2: {
      a.lhs = Rational(q * (q * q - 1), Q0 * (Q0 * Q0 - 1));
      a.terms.push_back({"centralizer", Rational(Q0 * (Q0 * Q0 - 1))});
      a.terms.push_back(
          {"borel", Rational(q * (q - 1) * (Q0 + 1), Q0 * (Q0 - 1))});
      a.terms.push_back({"torus", Rational((q + 1) * Q0 * (Q0 - 1), Q0 + 1)});
      break;
    }
    case AuditFamily::SzB2: {
      if (pp.p != 2 || pp.k % 2 == 0)
        throw InvalidFamilyParams(
            "field_auto_bound_audit: SzB2 requires q0 an odd power of 2");
      const BigInt r = exact_sqrt(2 * q);
      const BigInt r0 = exact_sqrt(2 * Q0);
      const BigInt g0 = q * q * (q * q + 1) * (q - 1);
      const BigInt c0 = Q0 * Q0 * (Q0 * Q0 + 1) * (Q0 - 1);
      a.lhs = Rational(g0, c0 * c0);
      a.terms.push_back({"one", Rational(1)});
      a.terms.push_back(
          {"borel", Rational(q * q * (q - 1), big_pow(Q0, 4) * (Q0 - 1) * (Q0 - 1))});
      a.terms.push_back(
          {"dihedral", Rational(2 * (q - 1), (Q0 - 1) * (Q0 - 1))});
      a.terms.push_back({"torus_plus", Rational(4 * (q + r + 1),
                                                (Q0 + r0 + 1) * (Q0 + r0 + 1))});
      a.terms.push_back({"torus_minus", Rational(4 * (q - r + 1),
                                                 (Q0 - r0 + 1) * (Q0 - r0 + 1))});
      break;
    }
    case AuditFamily::ReeG2: {
      if (pp.p != 3 || pp.k % 2 == 0)
        throw InvalidFamilyParams(
            "field_auto_bound_audit: ReeG2 requires q0 an odd power of 3");
      const BigInt r = exact_sqrt(3 * q);
      const BigInt r0 = exact_sqrt(3 * Q0);
      const BigInt g0 = big_pow(q, 3) * (big_pow(q, 3) + 1) * (q - 1);
      const BigInt c0 = big_pow(Q0, 3) * (big_pow(Q0, 3) + 1) * (Q0 - 1);
      a.lhs = Rational(g0, c0 * c0);
      a.terms.push_back({"one", Rational(1)});
      a.terms.push_back({"borel", Rational(big_pow(q, 3) * (q - 1),
                                           big_pow(Q0, 6) * (Q0 - 1) * (Q0 - 1))});
      a.terms.push_back(
          {"dihedral", Rational(6 * (q + 1), (Q0 + 1) * (Q0 + 1))});
      a.terms.push_back({"torus_plus", Rational(6 * (q + r + 1),
                                                (Q0 + r0 + 1) * (Q0 + r0 + 1))});
      a.terms.push_back({"torus_minus", Rational(6 * (q - r + 1),
                                                 (Q0 - r0 + 1) * (Q0 - r0 + 1))});
      a.terms.push_back(
          {"psl2", Rational(2 * q * (q * q - 1),
                            Q0 * Q0 * (Q0 * Q0 - 1) * (Q0 * Q0 - 1))});
      break;
    }
  }

  Rational bound(0);
  for (const AuditTerm& t : a.terms) bound += t.value;
  a.bound = bound;
  a.holds = a.lhs > a.bound;
  return a;
}

}  // namespace srl

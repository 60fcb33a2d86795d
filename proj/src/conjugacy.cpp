#include "srl/conjugacy.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "srl/error.hpp"
#include "srl/rng.hpp"

namespace srl {

ConjugacyClass::ConjugacyClass(PermGroup group, Perm x)
    : group_(std::move(group)) {
  if (x.degree() != group_.degree())
    throw PreconditionViolated("conjugacy class seed degree mismatch");
  if (!group_.contains(x))
    throw PreconditionViolated(
        "conjugacy class seed is not an element of the group");
  element_order_ = x.element_order();

  const auto& gens = group_.generators();
  members_.push_back(std::move(x));
  parent_.push_back(0);
  via_gen_.push_back(0);
  index_.emplace(members_[0].encode(), 0);

  for (std::size_t head = 0; head < members_.size(); ++head) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Perm y = members_[head].conjugated_by(gens[gi]);
      std::string key = y.encode();
      if (index_.count(key)) continue;
      if (members_.size() >= kMemberCap ||
          (members_.size() + 1) * group_.degree() > kEntryCap) {
        std::ostringstream msg;
        msg << "conjugation orbit exceeds the enumeration cap ("
            << kMemberCap << " members / " << kEntryCap
            << " stored points) at degree " << group_.degree();
        throw ClassTooLarge(msg.str());
      }
      std::uint32_t id = static_cast<std::uint32_t>(members_.size());
      members_.push_back(std::move(y));
      parent_.push_back(static_cast<std::uint32_t>(head));
      via_gen_.push_back(static_cast<std::uint32_t>(gi));
      index_.emplace(std::move(key), id);
    }
  }

  const BigInt order = group_.order();
  const BigInt size(static_cast<std::uint64_t>(members_.size()));
  if (order % size != 0)
    throw PreconditionViolated(
        "conjugation orbit size does not divide the group order");
  centralizer_order_ = order / size;

  for (std::size_t i = 1; i < members_.size(); ++i)
    if (members_[i].encode() < members_[canonical_].encode()) canonical_ = i;

  // Spot check the stored conjugators on a thin sample of members.
  const std::size_t stride = std::max<std::size_t>(1, members_.size() / 8);
  for (std::size_t i = 0; i < members_.size(); i += stride)
    if (!(members_[0].conjugated_by(conjugator(i)) == members_[i]))
      throw PreconditionViolated("conjugator reconstruction failed");
}

bool ConjugacyClass::contains(const Perm& y) const {
  return y.degree() == group_.degree() && index_.count(y.encode()) != 0;
}

std::size_t ConjugacyClass::index_of(const Perm& y) const {
  if (y.degree() != group_.degree()) return members_.size();
  auto it = index_.find(y.encode());
  return it == index_.end() ? members_.size() : it->second;
}

Perm ConjugacyClass::conjugator(std::size_t i) const {
  if (i >= members_.size())
    throw PreconditionViolated("conjugator index out of range");
  // Conjugation composes along the tree path: (x^a)^b = x^(a*b), so the
  // conjugator is the product of the edge generators from the root down.
  std::vector<std::uint32_t> path;
  for (std::uint32_t at = static_cast<std::uint32_t>(i); at != 0;
       at = parent_[at])
    path.push_back(via_gen_[at]);
  Perm g = group_.identity();
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    g = g * group_.generators()[*it];
  return g;
}

const Perm& ConjugacyClass::canonical_representative() const {
  return members_[canonical_];
}

std::size_t class_intersection(const ConjugacyClass& cls, const PermGroup& x) {
  if (x.degree() != cls.group().degree())
    throw PreconditionViolated("class/subgroup degree mismatch");
  std::size_t count = 0;
  for (const Perm& m : cls.members())
    if (x.contains(m)) ++count;
  return count;
}

FixedConjugateCount fixed_conjugate_count(const ConjugacyClass& cls,
                                          const PermGroup& x,
                                          const BigInt& index) {
  const std::size_t inter = class_intersection(cls, x);
  Rational n(BigInt(static_cast<std::uint64_t>(inter)) * index,
             BigInt(static_cast<std::uint64_t>(cls.size())));
  const bool integral = numerator(n) % denominator(n) == 0;
  return {std::move(n), integral};
}

namespace {

// Shared bookkeeping for the survey: a member encoding -> class id map
// covering every member of every discovered class.
struct SurveyState {
  std::vector<ConjugacyClass> classes;
  std::unordered_set<std::string> seen;
  BigInt covered = 0;

  // Returns true when x started a new class.
  bool offer(const PermGroup& g, const Perm& x) {
    if (seen.count(x.encode())) return false;
    classes.emplace_back(g, x);
    const ConjugacyClass& cls = classes.back();
    for (const Perm& m : cls.members()) seen.insert(m.encode());
    covered += BigInt(static_cast<std::uint64_t>(cls.size()));
    return true;
  }
};

}  // namespace

ClassSurvey class_survey(const PermGroup& g, std::uint64_t seed) {
  const BigInt order = g.order();
  SurveyState state;
  state.offer(g, g.identity());

  // Random phase: draws hit classes with probability proportional to size,
  // so this finds everything but the smallest classes quickly.  Stop after
  // a run of draws that produce nothing new.
  Rng rng(seed);
  const int kStallLimit = 512;
  int stall = 0;
  while (state.covered < order && stall < kStallLimit) {
    if (state.offer(g, g.random_element(rng)))
      stall = 0;
    else
      ++stall;
  }

  // Streaming completion: walk every element, skipping members of known
  // classes.  This certifies completeness for moderate orders.
  if (state.covered < order && order <= 1'000'000) {
    g.for_each_element([&](const Perm& x) {
      state.offer(g, x);
      return state.covered < order;  // stop once everything is covered
    });
  }

  const bool complete = state.covered == order;

  std::sort(state.classes.begin(), state.classes.end(),
            [](const ConjugacyClass& a, const ConjugacyClass& b) {
              if (a.element_order() != b.element_order())
                return a.element_order() < b.element_order();
              if (a.size() != b.size()) return a.size() < b.size();
              return a.canonical_representative().encode() <
                     b.canonical_representative().encode();
            });
  return {std::move(state.classes), complete, std::move(state.covered)};
}

RadicalResult solvable_radical(const PermGroup& g, std::uint64_t seed) {
  return solvable_radical(g, class_survey(g, seed));
}

RadicalResult solvable_radical(const PermGroup& g, const ClassSurvey& survey) {
  if (!survey.complete) {
    std::ostringstream msg;
    msg << "class survey covered " << survey.covered << " of " << g.order()
        << " elements; solvable radical needs a complete survey";
    throw RadicalInfeasible(msg.str());
  }

  std::vector<Perm> reps;
  for (const ConjugacyClass& cls : survey.classes) {
    const Perm& rep = cls.canonical_representative();
    if (g.normal_closure({rep}).is_solvable()) reps.push_back(rep);
  }

  PermGroup radical = g.normal_closure(reps);
  if (!radical.is_solvable())
    throw PreconditionViolated("solvable radical candidate is not solvable");
  for (const Perm& r : radical.generators())
    for (const Perm& c : g.generators())
      if (!radical.contains(r.conjugated_by(c)))
        throw PreconditionViolated("solvable radical candidate is not normal");

  BigInt order = radical.order();
  return {std::move(radical), std::move(order), std::move(reps)};
}

}  // namespace srl

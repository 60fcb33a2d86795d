#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "srl/numeric.hpp"
#include "srl/perm.hpp"
#include "srl/perm_group.hpp"

namespace srl {

// Conjugacy class x^G, enumerated breadth first as the orbit of x under
// conjugation by the group generators.  All members are stored, indexed by
// their byte encoding, together with BFS parent links from which a
// conjugator taking the representative to any member is rebuilt on demand.
//
// Enumeration is capped at 10^5 members, with an additional guard on
// members x degree so a class of large-degree permutations cannot silently
// exhaust memory.  Classes beyond the caps raise ClassTooLarge.
class ConjugacyClass {
public:
  static constexpr std::size_t kMemberCap = 100'000;
  static constexpr std::size_t kEntryCap = 20'000'000;  // members x degree

  ConjugacyClass(PermGroup group, Perm x);

  const PermGroup& group() const { return group_; }
  const Perm& representative() const { return members_[0]; }

  std::size_t size() const { return members_.size(); }
  const BigInt& centralizer_order() const { return centralizer_order_; }
  const BigInt& element_order() const { return element_order_; }

  const std::vector<Perm>& members() const { return members_; }
  bool contains(const Perm& y) const;
  // Index of y within members(), or size() when absent.
  std::size_t index_of(const Perm& y) const;

  // A g with representative^g == members()[i], rebuilt from the BFS parent
  // links.
  Perm conjugator(std::size_t i) const;

  // The member with the lexicographically smallest encoding.  Unlike the
  // representative (the BFS seed), this does not depend on which member the
  // class was grown from, so surveys report it for reproducible output.
  const Perm& canonical_representative() const;

private:
  PermGroup group_;
  std::vector<Perm> members_;
  std::vector<std::uint32_t> parent_;   // BFS tree edge: index of parent
  std::vector<std::uint32_t> via_gen_;  // ... and generator used
  std::unordered_map<std::string, std::uint32_t> index_;
  BigInt centralizer_order_;
  BigInt element_order_;
  std::size_t canonical_ = 0;
};

// |x^G ∩ X| by membership test over the stored members.  X must be a
// subgroup of the class's ambient group (on the same degree).
std::size_t class_intersection(const ConjugacyClass& cls, const PermGroup& x);

// n = |x^G ∩ X| · [G:X] / |x^G|, the number of conjugates of X containing
// x counted with multiplicity.  The ratio is returned exactly; `integral`
// flags whether it collapsed to an integer (it does whenever X ranges over
// a genuine conjugacy family of subgroups of G).
struct FixedConjugateCount {
  Rational value;
  bool integral;
};
FixedConjugateCount fixed_conjugate_count(const ConjugacyClass& cls,
                                          const PermGroup& x,
                                          const BigInt& index);

// All conjugacy classes of g.  Classes are first hunted by seeded random
// sampling; if the class sizes do not yet sum to |G|, a streaming pass over
// the elements (feasible for |G| <= 10^6) finishes the survey.  `complete`
// is true exactly when the sizes sum to |G|; rows are sorted by (element
// order, size, canonical representative) so equal seeds and unequal seeds
// alike produce identical output for a completed survey.
struct ClassSurvey {
  std::vector<ConjugacyClass> classes;
  bool complete;
  BigInt covered;  // sum of the discovered class sizes
};
ClassSurvey class_survey(const PermGroup& g, std::uint64_t seed = 0);

// Solvable radical O_inf(g): the subgroup generated by every class
// representative whose normal closure is solvable.  The result is verified
// normal and solvable before returning.  Requires a complete class survey;
// raises RadicalInfeasible otherwise.
struct RadicalResult {
  PermGroup radical;
  BigInt order;
  std::vector<Perm> solvable_class_reps;
};
RadicalResult solvable_radical(const PermGroup& g, std::uint64_t seed = 0);
// Same, reusing an already-computed survey of g's classes.
RadicalResult solvable_radical(const PermGroup& g, const ClassSurvey& survey);

}  // namespace srl

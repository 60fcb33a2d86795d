#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srl/atlas.hpp"
#include "srl/conjugacy.hpp"
#include "srl/numeric.hpp"
#include "srl/perm.hpp"
#include "srl/perm_group.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Witness search: does some k-tuple of conjugates of x generate a
// non-solvable subgroup (or the whole group)?
// ---------------------------------------------------------------------------

enum class WitnessMode { Exhaustive, Random };
enum class WitnessTarget { Nonsolvable, FullGroup };
enum class WitnessStatus {
  WitnessFound,
  NoneExhaustive,  // the whole tuple space was searched; a universal negative
  NoneBudget,      // a sampling budget ran out; no universal claim
  ExceptionMatched,  // negative result explained by a known exception row
};

const char* witness_mode_name(WitnessMode m);
const char* witness_target_name(WitnessTarget t);
const char* witness_status_name(WitnessStatus s);

// A search over k conjugates of x: x itself together with k-1 further
// conjugates x^{g_1}, ..., x^{g_{k-1}}.  Exhaustive mode ranges the
// conjugates over the members of x's conjugacy class (complete, since
// <x, x^g> only depends on the conjugate x^g, not on g); random mode draws
// conjugators from the group.  x must have odd prime order and 2 <= k <= 7.
struct WitnessQuery {
  PermGroup group;
  Perm x;
  unsigned k = 2;
  WitnessMode mode = WitnessMode::Exhaustive;
  WitnessTarget target = WitnessTarget::Nonsolvable;
  std::uint64_t budget = 10'000;  // tuples, random mode only
  std::uint64_t seed = 0;
};

struct WitnessReport {
  WitnessStatus status = WitnessStatus::NoneBudget;
  unsigned k = 2;
  WitnessMode mode = WitnessMode::Exhaustive;
  WitnessTarget target = WitnessTarget::Nonsolvable;
  std::uint64_t seed = 0;
  // When found: conjugators g_1..g_{k-1} and the conjugates x^{g_i}, the
  // order of <x, x^{g_1}, ...>, and its solvability (always false for a
  // Nonsolvable witness).  Every witness is re-verified on a freshly built
  // subgroup before it is returned.
  std::vector<Perm> conjugators;
  std::vector<Perm> conjugates;
  BigInt subgroup_order;
  bool solvable = true;
  std::uint64_t tuples_tested = 0;
  bool fell_back_to_random = false;
  std::string note;
};

// k = 2 search.  Exhaustive mode enumerates the conjugacy class of x; if
// the class exceeds the enumeration caps the search falls back to random
// sampling and says so in the report.
WitnessReport pair_witness(const WitnessQuery& q);
// Same, reusing an already-enumerated class of x (cls.representative()
// must equal q.x).
WitnessReport pair_witness(const WitnessQuery& q, const ConjugacyClass& cls);

// k >= 3 search.  Exhaustive mode enumerates canonical (k-1)-tuples of
// class members: tuples are taken non-decreasing in a seed-shuffled member
// order, which covers every subgroup <x, y_1, ..., y_{k-1}> exactly once
// (the subgroup does not depend on the order of the y_i).
WitnessReport tuple_witness(const WitnessQuery& q);
WitnessReport tuple_witness(const WitnessQuery& q, const ConjugacyClass& cls);

// ---------------------------------------------------------------------------
// Exception table for the pair search at p = 3.
// ---------------------------------------------------------------------------

// Rows of the known exception list: almost simple groups with socle G0 and
// an order-3 element class x for which no pair of conjugates generates a
// non-solvable subgroup.  `atlas_instances` lists buildable specs realizing
// the row (possibly through an exceptional isomorphism); rows beyond the
// atlas ranges carry constructible = false.
struct Table1Row {
  std::string socle;
  std::string element;
  bool constructible = false;
  std::vector<std::string> atlas_instances;
};

const std::vector<Table1Row>& table1_rows();

// Matches a conjugacy class of g against the exception rows, keying on the
// projectivized family, dimension and field of g together with the
// structural kind of the class (identified through the distinguished
// elements or, for vector actions, by direct matrix classification).
// Returns the row index, or nullopt.
std::optional<std::size_t> table1_match(const BuiltGroup& g,
                                        const ConjugacyClass& cls);

// ---------------------------------------------------------------------------
// Per-class verdicts over a whole group.
// ---------------------------------------------------------------------------

enum class ClassVerdict {
  InRadical,        // x lies in the solvable radical; no witness expected
  PairWitness,      // some <x, x^g> is not solvable
  Table1Exception,  // exhaustively none, explained by an exception row
  Violation,        // exhaustively none and inexplicable - must never occur
  NoPairFound,      // no witness found, but no universal claim either
};

const char* class_verdict_name(ClassVerdict v);

struct SurveyOptions {
  std::uint64_t seed = 0;
  // Escalate matched exception rows to k = 3 (and, if still none, k = 4)
  // tuple searches.
  bool escalate = true;
  std::uint64_t random_budget = 10'000;
};

struct ClassVerdictRow {
  std::size_t class_index = 0;  // into TheoremSurvey::survey.classes
  BigInt element_order;
  std::size_t class_size = 0;
  bool in_radical = false;
  ClassVerdict verdict = ClassVerdict::InRadical;
  std::optional<WitnessReport> pair;        // k = 2 search, when run
  std::vector<WitnessReport> escalations;   // k = 3, 4 searches, when run
  std::optional<std::size_t> table1_row;
};

// For every conjugacy class of odd prime order: radical membership, then an
// exhaustive pair search, then exception matching and optional escalation.
// Requires a complete class survey (throws Infeasible otherwise; class
// enumeration caps surface as ClassTooLarge).
struct TheoremSurvey {
  ClassSurvey survey;
  RadicalResult radical;
  std::vector<ClassVerdictRow> rows;
};

TheoremSurvey theorem_a_survey(const BuiltGroup& g,
                               const SurveyOptions& opts = {});

// ---------------------------------------------------------------------------
// Explicit constructions.
// ---------------------------------------------------------------------------

// Conjugator for an element x of odd prime order p in Alt(degree), built
// from x's cycle structure.  For p >= 5 the conjugator is a 3-cycle
// (c0 c1 c2) on the first p-cycle (c0 c1 ... c_{p-1}) of x, and
// x g x^-1 g^-1 is exactly the 3-cycle (c1 c_{p-1} c2); for p = 3 it is a
// 5-cycle (c0 d0 c1 d1 c2) threading two fixed points d0, d1 of x.  In both
// cases <x, x^g> is verified non-solvable.  NotApplicable when degree < 5,
// when the order of x is not an odd prime, or when p = 3 and x has fewer
// than two fixed points.
struct AltWitness {
  Perm g;
  Perm conjugate;   // x^g
  Perm commutator;  // x * g * x^-1 * g^-1
  BigInt subgroup_order;
};

AltWitness alt_witness(std::size_t degree, const Perm& x);

// ---------------------------------------------------------------------------
// Wreath products: L wr C_t inside Sym(t * deg L).
// ---------------------------------------------------------------------------

// Block decomposition of an element of a wreath-product group: t block
// components and the induced top permutation.
struct WreathElement {
  unsigned t = 0;
  Perm top;
  std::vector<Perm> components;
};

WreathElement wreath_element_of(const BuiltGroup& w, const Perm& g);
Perm wreath_perm_of(const BuiltGroup& w, const WreathElement& e);

// The three cases of the base construction showing that an element
// x = (y, 1, ..., 1) tau with tau a t-cycle admits few-conjugate witnesses
// inside L wr C_t when L is non-abelian simple:
//   A_t3: t >= 3; one conjugator g = (1, l1, l1 l2, 1, ..., 1) makes
//         x^-1 x^g and x^g x^-1 project onto a generating pair l1, l2 of L.
//   A_t2: t = 2 and y != 1; with z such that <y, z> = L and l = y^-1 z,
//         the conjugator g = (l, 1) makes x x^g project onto z while
//         x^2 = (y, y), so <x, x^g> covers <y, z> = L.
//   B:    t = 2 and x = tau; two conjugators g_i = (l_i, 1) make
//         x^-1 x^{g_i} = (l_i, l_i^-1).
// The advertised projections are asserted exactly and the generated
// subgroup is verified non-solvable.
enum class WreathCase { A_t3, A_t2, B };

const char* wreath_case_name(WreathCase c);

struct WreathCheck {
  WreathCase which = WreathCase::A_t3;
  unsigned t = 0;
  Perm x;
  std::vector<Perm> conjugators;
  std::vector<Perm> generating_pair;  // l1, l2 (case A_t2: y, z)
  BigInt subgroup_order;
  bool nonsolvable = false;
};

// `bottom` must be a non-abelian simple atlas group (verified via its
// class survey); the generating pair is found by seeded random search
// (GeneratingPairNotFound after a fixed budget).  `y` seeds the first
// block component (ignored for case B).
WreathCheck wreath_lemma_check(const BuiltGroup& bottom, unsigned t,
                               const Perm& y, WreathCase which,
                               std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Borel subgroups of PSL(2, q).
// ---------------------------------------------------------------------------

// Exhaustive commuting check over the elements of a fixed order inside a
// Borel subgroup (a projective-point stabilizer) of PSL(2, q), for prime
// q in {5, 7, 11, 13}.  element_order 0 means q, the unipotent case, where
// all such elements commute; small non-unipotent orders give a natural
// control (they need not commute).
struct BorelCheck {
  unsigned q = 0;
  std::uint64_t element_order = 0;
  BigInt group_order;
  BigInt borel_order;
  std::size_t elements = 0;
  bool all_commute = false;
};

BorelCheck borel_commute_check(unsigned q, std::uint64_t element_order = 0);

}  // namespace srl

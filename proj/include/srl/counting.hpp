#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srl/conjugacy.hpp"
#include "srl/numeric.hpp"
#include "srl/perm.hpp"
#include "srl/perm_group.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Counting instances.
// ---------------------------------------------------------------------------

// One family of overgroups X_i in the counting criterion: a label, the
// intersection count |x^G ∩ X_i| and the index [G:X_i].
struct SubgroupDatum {
  std::string label;
  BigInt intersection;
  BigInt index;
};

// The data of the counting criterion for a class x^G: if the X_i exhaust
// the maximal overgroups of x up to conjugacy and
//
//   |x^G|² > Σ_i |x^G ∩ X_i|² · [G:X_i]
//
// then some conjugate pair ⟨x, x^g⟩ generates all of G.  Instances can be
// measured from an explicit group (measure_counting_instance) or entered
// from published subgroup data (load_counting_instance), so the inequality
// is checkable even for groups far beyond construction range.
struct CountingInstance {
  BigInt group_order;
  BigInt class_size;
  std::vector<SubgroupDatum> subgroups;

  // n_i = |x^G ∩ X_i| · [G:X_i] / |x^G|: the number of conjugates of X_i
  // containing a fixed class member, averaged over the class.  Exact.
  Rational n_value(std::size_t i) const;

  // Structural sanity: positive orders, class size and indices dividing
  // the group order, intersections bounded by both the class size and the
  // subgroup order.  Throws PreconditionViolated on the first failure.
  void validate() const;
};

// Parses {"group_order": .., "class_size": .., "subgroups": [{"label": ..,
// "intersection": .., "index": ..}, ...]}.  Numeric fields accept JSON
// integers or decimal strings (for values past 2^53).  Throws ParseError
// on malformed input; the result is validated before being returned.
CountingInstance load_counting_instance(const std::string& json_text);

// Measures an instance from live groups: intersections by membership of
// the class members, indices from the subgroup orders.  Labels default to
// "X1", "X2", ...  Every listed group must be a subgroup of the class's
// ambient group.
CountingInstance measure_counting_instance(
    const ConjugacyClass& cls, const std::vector<PermGroup>& subgroups,
    const std::vector<std::string>& labels = {});

// ---------------------------------------------------------------------------
// The counting criterion.
// ---------------------------------------------------------------------------

// Full form:    |x^G|²       > Σ_i |x^G ∩ X_i|² · [G:X_i]
// Remark form:  |G|/|C_G(x)|² > Σ_i |x^G ∩ X_i|
// The remark form is the cruder corollary; its left side equals
// |x^G|²/|G|.
enum class CountingForm { Full, Remark };

const char* counting_form_name(CountingForm form);

struct CountingVerdict {
  CountingForm form = CountingForm::Full;
  Rational lhs;
  Rational rhs;
  Rational margin;               // lhs - rhs
  bool criterion_holds = false;  // lhs > rhs
};

// Evaluates the chosen inequality in exact rational arithmetic.
CountingVerdict counting_check(const CountingInstance& inst, CountingForm form);

// ---------------------------------------------------------------------------
// The union bound behind the criterion.
// ---------------------------------------------------------------------------

// The criterion rests on |x^G ∩ ∪_{i,j} X_{ij}| ≤ Σ_{i,j} |x^G ∩ X_{ij}|,
// the X_{ij} running over all G-conjugates of each X_i.  This report makes
// that step a measurable fact: the union counted exactly against the
// multiplicity-weighted sum (which equals Σ_i n_i · |x^G|).
struct UnionBoundReport {
  std::size_t union_count = 0;           // |x^G ∩ ∪_{i,j} X_{ij}|
  BigInt conjugate_sum;                  // Σ_{i,j} |x^G ∩ X_{ij}|
  std::vector<std::size_t> orbit_sizes;  // number of conjugates of each X_i
  bool holds = false;                    // union_count <= conjugate_sum
  bool strict = false;                   // union_count <  conjugate_sum
};

// Enumerates the full conjugation orbit of every listed subgroup by
// breadth-first search over conjugated element sets.  Orbits are capped at
// kOrbitCap subgroups and each subgroup at kSubgroupElementCap elements;
// past either cap raises SubgroupOrbitTooLarge.
inline constexpr std::size_t kOrbitCap = 512;
inline constexpr std::size_t kSubgroupElementCap = 20'000;

UnionBoundReport union_bound_check(const ConjugacyClass& cls,
                                   const std::vector<PermGroup>& subgroups);

// ---------------------------------------------------------------------------
// Commutator existence counts.
// ---------------------------------------------------------------------------

// #{g ∈ G : [x,g] has order target_order}, with [x,g] = x⁻¹g⁻¹xg.  For
// |G| ≤ 10⁶ the count sweeps g directly; otherwise it sweeps y over the
// class x^G and weights by |C_G(x)|, since g ↦ x^g is |C_G(x)|-to-one onto
// the class and [x,g] = x⁻¹ · x^g.  Raises Infeasible when neither route
// fits its cap.  Summed over all target orders the counts partition |G|.
BigInt commutator_class_count(const PermGroup& g, const Perm& x,
                              std::uint64_t target_order);

// ---------------------------------------------------------------------------
// Field-automorphism bound audits.
// ---------------------------------------------------------------------------

// Closed-form generation bounds for a field automorphism x of odd prime
// order p on a group over F_q, q = q₀^p, with C(x) the corresponding
// subfield group over F_q₀.  Each audit evaluates the classical two-sided
// display exactly — left side the class-size quantity, right side the sum
// of overgroup contributions — and reports every term.
enum class AuditFamily { PSL2, SzB2, ReeG2 };

const char* audit_family_name(AuditFamily family);

struct AuditTerm {
  std::string label;
  Rational value;
};

struct FieldAutoAudit {
  AuditFamily family = AuditFamily::PSL2;
  std::uint64_t q0 = 0;
  unsigned p = 0;
  BigInt q;  // q0^p
  Rational lhs;
  std::vector<AuditTerm> terms;
  Rational bound;      // Σ terms
  bool holds = false;  // lhs > bound
};

// PSL2:  lhs = |x^{G₀}| = q(q²−1)/(q₀(q₀²−1)); terms q₀(q₀²−1),
//        q(q−1)(q₀+1)/(q₀(q₀−1)), (q+1)q₀(q₀−1)/(q₀+1).  Any prime power
//        q₀ ≥ 2.
// SzB2:  lhs = |G₀|/|C(x)|² with |G₀| = q²(q²+1)(q−1) and C(x) the Suzuki
//        group over F_q₀; terms 1 + Borel + dihedral + the two torus
//        normalizers (orders involving q ± √(2q) + 1).  q₀ an odd power
//        of 2.
// ReeG2: lhs = |G₀|/|C(x)|² with |G₀| = q³(q³+1)(q−1) and C(x) the Ree
//        group over F_q₀; terms 1 + Borel + involution normalizer + the
//        two torus normalizers (q ± √(3q) + 1) + the PSL(2,q) part.  q₀
//        an odd power of 3.
// Invalid (family, q₀, p) combinations raise InvalidFamilyParams.
FieldAutoAudit field_auto_bound_audit(AuditFamily family, std::uint64_t q0,
                                      unsigned p);

}  // namespace srl

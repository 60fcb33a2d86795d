#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srl/group_spec.hpp"
#include "srl/matrix.hpp"
#include "srl/perm_group.hpp"

namespace srl {

enum class MatrixAction { Vectors, ProjectivePoints };

// Action of dim-by-dim matrices over `field` on the nonzero column vectors
// (Vectors) or on the projective points (ProjectivePoints, representatives
// normalized so the first nonzero coordinate is 1).  Point i is points()[i];
// enumeration is by ascending base-q integer value with coordinate 0 least
// significant.
class MatrixActionMap {
public:
  static constexpr std::uint64_t kMaxPoints = 100'000;

  MatrixActionMap(FieldPtr field, unsigned dim, MatrixAction action);

  const FieldPtr& field() const { return field_; }
  unsigned dim() const { return dim_; }
  MatrixAction action() const { return action_; }
  std::size_t degree() const { return points_.size(); }
  const std::vector<std::vector<unsigned>>& points() const { return points_; }

  std::size_t index_of(const std::vector<unsigned>& v) const;  // normalizes
  Perm image(const Matrix& m) const;

private:
  std::uint64_t key_of(const std::vector<unsigned>& v) const;

  FieldPtr field_;
  unsigned dim_;
  MatrixAction action_;
  std::vector<std::vector<unsigned>> points_;
  std::vector<std::uint32_t> index_by_key_;  // dense, size q^dim
};

// General transvection v -> v + functional(v) * direction, as a matrix
// I + direction * functional^T.  Requires functional(direction) == 0 and
// both vectors nonzero.
Matrix transvection(const FieldPtr& field, unsigned dim,
                    const std::vector<unsigned>& direction,
                    const std::vector<unsigned>& functional);

// u -> u + lambda * kappa(u, centre) * centre for a symplectic form.
Matrix symplectic_transvection(const ClassicalForm& form,
                               const std::vector<unsigned>& centre,
                               unsigned lambda);

// u -> u + lambda * kappa(u, centre) * centre for a hermitian form;
// centre must be isotropic and lambda must have trace zero.
Matrix unitary_transvection(const ClassicalForm& form,
                            const std::vector<unsigned>& centre,
                            unsigned lambda);

// Fixes axis^perp pointwise and scales axis by the eigenvalue, which must be
// a nontrivial cube root of unity (the order-3 reflections of the unitary
// groups in scope).  The axis must be nonisotropic.
Matrix unitary_reflection(const ClassicalForm& form,
                          const std::vector<unsigned>& axis,
                          unsigned eigenvalue);

// Siegel (Eichler) element u -> u + lambda*kappa(u,a)*b - lambda*kappa(u,b)*a
// for a quadratic form; requires Q(a) = Q(b) = kappa(a,b) = 0.
Matrix siegel_element(const ClassicalForm& form, const std::vector<unsigned>& a,
                      const std::vector<unsigned>& b, unsigned lambda);

enum class ElementKind {
  Transvection,
  UnitaryReflection,
  Siegel,
  PCycle,
  ThreeCycle,
  Custom,
};

const char* element_kind_name(ElementKind k);

// A named element of a built group, stored both as the realized permutation
// and (for matrix families) as a matrix in the linear cover.
struct Distinguished {
  std::string label;
  ElementKind kind = ElementKind::Custom;
  Perm perm;
  std::optional<Matrix> mat;
};

struct MatrixData {
  FieldPtr field;
  unsigned dim = 0;
  std::optional<ClassicalForm> form;
  std::vector<Matrix> gens;  // generators of the linear cover group
  MatrixAction action = MatrixAction::Vectors;
  std::shared_ptr<const MatrixActionMap> action_map;
  BigInt cover_order = 0;  // certified order of the linear cover
  std::vector<unsigned> kernel_scalars;  // lambda with lambda*I in the cover
};

struct BuiltGroup {
  BuiltGroup(GroupSpec s, PermGroup g)
      : spec(std::move(s)), group(std::move(g)) {}

  GroupSpec spec;
  PermGroup group;
  BigInt expected_order = 0;  // closed-form family order (== group.order())
  std::optional<MatrixData> matrix;
  std::vector<Distinguished> distinguished;

  // Wreath(L, t): the bottom group and block count; blocks are the point
  // ranges [i*d, (i+1)*d).
  std::shared_ptr<const BuiltGroup> wreath_bottom;
  unsigned wreath_blocks = 0;

  // Direct products: the factors and their point offsets.
  std::vector<std::shared_ptr<const BuiltGroup>> direct_factors;
  std::vector<std::size_t> direct_offsets;

  const Distinguished* find_distinguished(const std::string& label) const;
};

BuiltGroup build_group(const GroupSpec& spec);
BuiltGroup build_group(const std::string& spec_text);

// Natural action of PSL(2, q) on the projective line (q + 1 points) for
// prime q in {5, 7, 11, 13}.  Points 0..q-1 are [z : 1] and point q is
// [1 : 0].  Complements the matrix-based constructions, whose field tables
// stop at q = 9; build_group uses it for PSL(2,11) and PSL(2,13).
PermGroup psl2_projective_line(unsigned q);

// Matrix group -> permutation group on the requested action, with the scalar
// kernel determined by explicit membership tests (sifting lambda*I through a
// stabilizer chain for the vector action).  `kernel` lists the scalars lambda
// with lambda*I in the group; for the vector action it is always {1}.
struct ToPermutationResult {
  PermGroup group;
  std::vector<Perm> gen_images;
  std::shared_ptr<const MatrixActionMap> map;
  BigInt matrix_group_order = 0;
  std::vector<unsigned> kernel;
};
ToPermutationResult to_permutation(const FieldPtr& field, unsigned dim,
                                   const std::vector<Matrix>& gens,
                                   MatrixAction action);

/// Matrix realizing the permutation on a Vectors action, reconstructed from
// the images of the unit vectors.  Empty for projective or non-matrix groups.
std::optional<Matrix> matrix_of(const BuiltGroup& g, const Perm& p);

// Structural classification of an element of a Vectors-action matrix group:
// rank-one unipotent residues are transvections, rank-one semisimple cube
// roots of unity are unitary reflections, and rank-two square-zero residues
// of orthogonal groups are Siegel elements.  Empty when none apply or the
// group carries no reconstructible matrix action.
std::optional<ElementKind> classify_element(const BuiltGroup& g, const Perm& p);

// Imprimitive wreath-product plumbing: bottom tuple applied blockwise, then
// the top permutation moving block i to block top(i).  Points are encoded as
// block*d + inner.
Perm wreath_embed(const BuiltGroup& w, const std::vector<Perm>& bottom,
                  const Perm& top);
std::pair<std::vector<Perm>, Perm> wreath_split(const BuiltGroup& w,
                                                const Perm& g);

Perm direct_embed(const BuiltGroup& d, const std::vector<Perm>& parts);
std::vector<Perm> direct_split(const BuiltGroup& d, const Perm& g);

}  // namespace srl

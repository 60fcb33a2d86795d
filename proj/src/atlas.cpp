#include "srl/atlas.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "srl/error.hpp"
#include "srl/numeric.hpp"

namespace srl {

namespace {

std::vector<unsigned> vec_from_key(std::uint64_t key, unsigned dim,
                                   std::uint64_t q) {
  std::vector<unsigned> v(dim);
  for (unsigned i = 0; i < dim; ++i) {
    v[i] = static_cast<unsigned>(key % q);
    key /= q;
  }
  return v;
}

bool is_zero_vec(const std::vector<unsigned>& v) {
  return std::all_of(v.begin(), v.end(), [](unsigned c) { return c == 0; });
}

}  // namespace

MatrixActionMap::MatrixActionMap(FieldPtr field, unsigned dim,
                                 MatrixAction action)
    : field_(std::move(field)), dim_(dim), action_(action) {
  if (dim_ == 0 || dim_ > Matrix::kMaxDim)
    throw PreconditionViolated("action dimension out of range");
  const std::uint64_t q = field_->q();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim_; ++i) {
    total *= q;
    if (total > 100 * kMaxPoints)
      throw ActionTooLarge("vector space with " + std::to_string(total) +
                           "+ vectors is beyond the action caps");
  }
  if (action_ == MatrixAction::Vectors) {
    if (total - 1 > kMaxPoints)
      throw ActionTooLarge("vector action on " + std::to_string(total - 1) +
                           " points exceeds the cap of " +
                           std::to_string(kMaxPoints));
  } else {
    const std::uint64_t proj = (total - 1) / (q - 1);
    if (proj > 4000)
      throw ActionTooLarge("projective action on " + std::to_string(proj) +
                           " points exceeds the cap of 4000");
  }
  index_by_key_.assign(total, UINT32_MAX);
  for (std::uint64_t key = 1; key < total; ++key) {
    std::vector<unsigned> v = vec_from_key(key, dim_, q);
    if (action_ == MatrixAction::ProjectivePoints) {
      unsigned lead = 0;
      while (v[lead] == 0) ++lead;
      if (v[lead] != 1) continue;  // not the normalized representative
    }
    index_by_key_[key] = static_cast<std::uint32_t>(points_.size());
    points_.push_back(std::move(v));
  }
}

std::uint64_t MatrixActionMap::key_of(const std::vector<unsigned>& v) const {
  const std::uint64_t q = field_->q();
  std::uint64_t key = 0;
  for (unsigned i = dim_; i-- > 0;) key = key * q + v[i];
  return key;
}

std::size_t MatrixActionMap::index_of(const std::vector<unsigned>& v) const {
  if (v.size() != dim_) throw PreconditionViolated("vector dimension mismatch");
  if (is_zero_vec(v))
    throw SingularMatrix("zero vector has no index in the action");
  std::uint32_t idx;
  if (action_ == MatrixAction::ProjectivePoints) {
    std::vector<unsigned> w = v;
    unsigned lead = 0;
    while (w[lead] == 0) ++lead;
    if (w[lead] != 1) {
      const unsigned scale = field_->inv(w[lead]);
      for (unsigned i = 0; i < dim_; ++i) w[i] = field_->mul(w[i], scale);
    }
    idx = index_by_key_[key_of(w)];
  } else {
    idx = index_by_key_[key_of(v)];
  }
  if (idx == UINT32_MAX)
    throw PreconditionViolated("vector is not a point of the action");
  return idx;
}

Perm MatrixActionMap::image(const Matrix& m) const {
  if (m.field() != field_)
    throw FieldMismatch("matrix field does not match the action");
  if (m.dim() != dim_)
    throw PreconditionViolated("matrix dimension does not match the action");
  std::vector<std::uint32_t> img(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i)
    img[i] = static_cast<std::uint32_t>(index_of(m.apply(points_[i])));
  return Perm::from_images(std::move(img));
}

Matrix transvection(const FieldPtr& field, unsigned dim,
                    const std::vector<unsigned>& direction,
                    const std::vector<unsigned>& functional) {
  if (direction.size() != dim || functional.size() != dim)
    throw PreconditionViolated("transvection data dimension mismatch");
  if (is_zero_vec(direction) || is_zero_vec(functional))
    throw PreconditionViolated("transvection direction and functional must be nonzero");
  unsigned pairing = 0;
  for (unsigned i = 0; i < dim; ++i)
    pairing = field->add(pairing, field->mul(functional[i], direction[i]));
  if (pairing != 0)
    throw NotIsotropicPair("functional does not vanish on the direction");
  Matrix m = Matrix::identity(field, dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j)
      m.set(i, j,
            field->add(m.at(i, j), field->mul(direction[i], functional[j])));
  return m;
}

namespace {

// Row vector u -> kappa(u, c) as a functional, i.e. (Gram * sigma(c)).
std::vector<unsigned> pairing_functional(const ClassicalForm& form,
                                         const std::vector<unsigned>& c) {
  std::vector<unsigned> cs(c);
  for (auto& x : cs) x = form.conjugate(x);
  return form.gram().apply(cs);
}

void check_form_preserving(const Matrix& m, const ClassicalForm& form,
                           const char* what) {
  if (!form_preserved(m, form))
    throw PreconditionViolated(std::string(what) +
                               " does not preserve the form (internal error)");
}

}  // namespace

Matrix symplectic_transvection(const ClassicalForm& form,
                               const std::vector<unsigned>& centre,
                               unsigned lambda) {
  if (form.kind() != FormKind::Symplectic)
    throw PreconditionViolated("symplectic transvection needs a symplectic form");
  const FieldPtr& f = form.field();
  std::vector<unsigned> functional = pairing_functional(form, centre);
  for (auto& x : functional) x = f->mul(lambda, x);
  if (lambda == 0 || is_zero_vec(centre))
    throw PreconditionViolated("transvection centre and scalar must be nonzero");
  Matrix m = transvection(f, form.dim(), centre, functional);
  check_form_preserving(m, form, "symplectic transvection");
  return m;
}

Matrix unitary_transvection(const ClassicalForm& form,
                            const std::vector<unsigned>& centre,
                            unsigned lambda) {
  if (form.kind() != FormKind::Hermitian)
    throw PreconditionViolated("unitary transvection needs a hermitian form");
  const FieldPtr& f = form.field();
  if (lambda == 0 || is_zero_vec(centre))
    throw PreconditionViolated("transvection centre and scalar must be nonzero");
  if (form.pair(centre, centre) != 0)
    throw NotIsotropicPair("unitary transvection centre must be isotropic");
  if (f->add(lambda, form.conjugate(lambda)) != 0)
    throw PreconditionViolated("unitary transvection scalar must have trace zero");
  std::vector<unsigned> functional = pairing_functional(form, centre);
  for (auto& x : functional) x = f->mul(lambda, x);
  Matrix m = transvection(f, form.dim(), centre, functional);
  check_form_preserving(m, form, "unitary transvection");
  return m;
}

namespace {

// Reflection-style isometry for any norm-one eigenvalue; the public
// unitary_reflection wraps this with the order-3 requirements.
Matrix hermitian_reflection(const ClassicalForm& form,
                            const std::vector<unsigned>& axis,
                            unsigned eigenvalue) {
  if (form.kind() != FormKind::Hermitian)
    throw PreconditionViolated("unitary reflection needs a hermitian form");
  const FieldPtr& f = form.field();
  if (is_zero_vec(axis))
    throw PreconditionViolated("reflection axis must be nonzero");
  const unsigned norm = form.pair(axis, axis);
  if (norm == 0) throw IsotropicAxis("reflection axis must be nonisotropic");
  if (eigenvalue == f->one() ||
      f->mul(eigenvalue, form.conjugate(eigenvalue)) != f->one())
    throw PreconditionViolated(
        "reflection eigenvalue must be a nontrivial norm-one element");
  const unsigned scale = f->mul(f->sub(eigenvalue, f->one()), f->inv(norm));
  std::vector<unsigned> functional = pairing_functional(form, axis);
  for (auto& x : functional) x = f->mul(scale, x);
  Matrix m = Matrix::identity(f, form.dim());
  for (unsigned i = 0; i < form.dim(); ++i)
    for (unsigned j = 0; j < form.dim(); ++j)
      m.set(i, j, f->add(m.at(i, j), f->mul(axis[i], functional[j])));
  check_form_preserving(m, form, "unitary reflection");
  return m;
}

}  // namespace

Matrix unitary_reflection(const ClassicalForm& form,
                          const std::vector<unsigned>& axis,
                          unsigned eigenvalue) {
  const FieldPtr& f = form.field();
  if (eigenvalue == f->one() || f->pow(eigenvalue, 3) != f->one())
    throw PreconditionViolated(
        "reflection eigenvalue must be a nontrivial cube root of unity");
  Matrix m = hermitian_reflection(form, axis, eigenvalue);
  if (m.order() != 3)
    throw PreconditionViolated("unitary reflection is not of order 3 (internal)");
  return m;
}

Matrix siegel_element(const ClassicalForm& form, const std::vector<unsigned>& a,
                      const std::vector<unsigned>& b, unsigned lambda) {
  if (form.kind() != FormKind::Quadratic)
    throw PreconditionViolated("Siegel element needs a quadratic form");
  const FieldPtr& f = form.field();
  std::vector<std::string> failures;
  if (form.quadratic_value(a) != 0) failures.push_back("Q(a) != 0");
  if (form.quadratic_value(b) != 0) failures.push_back("Q(b) != 0");
  if (form.pair(a, b) != 0) failures.push_back("kappa(a,b) != 0");
  if (!failures.empty()) {
    std::string msg = "Siegel element preconditions failed:";
    for (const auto& s : failures) msg += " " + s + ";";
    throw PreconditionViolated(msg);
  }
  const std::vector<unsigned> ra = pairing_functional(form, a);
  const std::vector<unsigned> rb = pairing_functional(form, b);
  Matrix m = Matrix::identity(f, form.dim());
  for (unsigned i = 0; i < form.dim(); ++i)
    for (unsigned j = 0; j < form.dim(); ++j) {
      unsigned delta = f->sub(f->mul(b[i], ra[j]), f->mul(a[i], rb[j]));
      m.set(i, j, f->add(m.at(i, j), f->mul(lambda, delta)));
    }
  check_form_preserving(m, form, "Siegel element");
  return m;
}

const char* element_kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::Transvection: return "transvection";
    case ElementKind::UnitaryReflection: return "unitary_reflection";
    case ElementKind::Siegel: return "siegel";
    case ElementKind::PCycle: return "p_cycle";
    case ElementKind::ThreeCycle: return "three_cycle";
    case ElementKind::Custom: return "custom";
  }
  return "?";
}

const Distinguished* BuiltGroup::find_distinguished(
    const std::string& label) const {
  for (const auto& d : distinguished)
    if (d.label == label) return &d;
  return nullptr;
}

namespace {

BigInt factorial_big(unsigned n) {
  BigInt o = 1;
  for (unsigned i = 2; i <= n; ++i) o *= i;
  return o;
}

BigInt qpow(std::uint64_t q, unsigned e) {
  BigInt o = 1;
  for (unsigned i = 0; i < e; ++i) o *= q;
  return o;
}

BigInt gl_order(unsigned n, std::uint64_t q) {
  BigInt o = qpow(q, n * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) o *= qpow(q, i) - 1;
  return o;
}

BigInt sl_order(unsigned n, std::uint64_t q) { return gl_order(n, q) / (q - 1); }

BigInt sp4_order(std::uint64_t q) {
  return qpow(q, 4) * (qpow(q, 2) - 1) * (qpow(q, 4) - 1);
}

BigInt gu_order(unsigned n, std::uint64_t q0) {
  BigInt o = qpow(q0, n * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) {
    BigInt term = qpow(q0, i);
    if (i % 2 == 0) term -= 1; else term += 1;
    o *= term;
  }
  return o;
}

BigInt su_order(unsigned n, std::uint64_t q0) {
  return gu_order(n, q0) / (q0 + 1);
}

BigInt omega6_order(std::uint64_t q, int eps) {
  BigInt o = qpow(q, 6) * (qpow(q, 3) - eps) * (qpow(q, 2) - 1) *
             (qpow(q, 4) - 1);
  return o / 2;  // odd characteristic only in the supported table
}

Perm cycle_perm(std::size_t degree, const std::vector<std::uint32_t>& pts) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    img[pts[i]] = pts[(i + 1) % pts.size()];
  return Perm::from_images(std::move(img));
}

std::vector<Matrix> sl_generators(const FieldPtr& f, unsigned n) {
  const unsigned gamma = f->primitive_element();
  std::vector<Matrix> out;
  auto push_unique = [&out](const Matrix& m) {
    if (m.is_identity()) return;
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  Matrix e1 = Matrix::identity(f, n);
  e1.set(0, 1, f->one());
  push_unique(e1);
  Matrix eg = Matrix::identity(f, n);
  eg.set(0, 1, gamma);
  push_unique(eg);
  Matrix h = Matrix::identity(f, n);
  h.set(0, 0, gamma);
  h.set(1, 1, f->inv(gamma));
  push_unique(h);
  Matrix b(f, n);
  for (unsigned i = 0; i + 1 < n; ++i) b.set(i + 1, i, f->one());
  b.set(0, n - 1, (n - 1) % 2 == 1 ? f->neg(f->one()) : f->one());
  push_unique(b);
  for (const auto& m : out)
    if (m.det() != f->one())
      throw GeneratorValidationFailed("special linear generator has det != 1");
  return out;
}

struct CoverResult {
  std::vector<Matrix> gens;
  std::vector<Perm> images;
  PermGroup group;
};

// Greedy order-certified generation: walk the candidate stream, keep
// candidates that enlarge the group, and stop once the target order is
// reached.  Candidates must all lie inside the target group, so the order
// can only climb towards the target.
CoverResult grow_to_order(const MatrixActionMap& vmap,
                          const std::vector<Matrix>& candidates,
                          const BigInt& target, const std::string& what) {
  std::vector<Matrix> gens;
  std::vector<Perm> images;
  std::optional<PermGroup> cur;
  std::size_t i = 0;
  constexpr std::size_t kBatch = 4;
  while (i < candidates.size()) {
    std::size_t added = 0;
    while (i < candidates.size() && added < kBatch) {
      const Matrix& c = candidates[i++];
      Perm img = vmap.image(c);
      if (img.is_identity()) continue;
      if (cur && cur->contains(img)) continue;
      gens.push_back(c);
      images.push_back(std::move(img));
      ++added;
    }
    if (added == 0) break;
    cur.emplace(vmap.degree(), images);
    if (cur->order() == target)
      return {std::move(gens), std::move(images), std::move(*cur)};
    if (cur->order() > target)
      throw GeneratorValidationFailed(
          what + ": candidate stream overshot the target order");
  }
  std::ostringstream msg;
  msg << what << ": candidate stream exhausted at order "
      << (cur ? cur->order() : BigInt(1)) << " of " << target;
  throw GeneratorValidationFailed(msg.str());
}

// All normalized (first nonzero coordinate 1) nonzero vectors, in ascending
// key order.
std::vector<std::vector<unsigned>> projective_reps(const FieldPtr& f,
                                                   unsigned dim) {
  std::vector<std::vector<unsigned>> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i) total *= f->q();
  for (std::uint64_t key = 1; key < total; ++key) {
    std::vector<unsigned> v = vec_from_key(key, dim, f->q());
    unsigned lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] == 1) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Matrix> symplectic_candidates(const ClassicalForm& form) {
  const FieldPtr& f = form.field();
  std::vector<Matrix> out;
  for (const auto& a : projective_reps(f, form.dim()))
    for (unsigned lambda = 1; lambda < f->q(); ++lambda)
      out.push_back(symplectic_transvection(form, a, lambda));
  return out;
}

std::vector<unsigned> nonzero_trace_zero_elements(const ClassicalForm& form) {
  const FieldPtr& f = form.field();
  std::vector<unsigned> out;
  for (unsigned x = 1; x < f->q(); ++x)
    if (f->add(x, form.conjugate(x)) == 0) out.push_back(x);
  return out;
}

std::vector<unsigned> norm_one_elements(const ClassicalForm& form) {
  const FieldPtr& f = form.field();
  std::vector<unsigned> out;
  for (unsigned x = 1; x < f->q(); ++x)
    if (f->mul(x, form.conjugate(x)) == f->one()) out.push_back(x);
  return out;
}

// Unitary isometry candidate stream: transvections along isotropic centres,
// then (for the general groups) norm-one determinant spreaders, then norm-one
// diagonal matrices of determinant one, det-adjusted monomial matrices and
// finally determinant-one reflection pairs.
std::vector<Matrix> unitary_candidates(const ClassicalForm& form,
                                       bool with_det_surjection) {
  const FieldPtr& f = form.field();
  const unsigned n = form.dim();
  std::vector<Matrix> out;
  const std::vector<unsigned> units = norm_one_elements(form);
  // Determinant surjection first: diag(mu,1,..) for norm-one mu pushes the
  // determinant image up from SU to GU.  Emitting these before the
  // transvections keeps the greedy closure from sifting the rest of the
  // stream when only the determinant direction is missing.
  if (with_det_surjection) {
    for (unsigned u : units) {
      if (u == f->one()) continue;
      Matrix m = Matrix::identity(f, n);
      m.set(0, 0, u);
      check_form_preserving(m, form, "unitary diagonal");
      out.push_back(m);
    }
  }
  const std::vector<unsigned> lambdas = nonzero_trace_zero_elements(form);
  for (const auto& c : projective_reps(f, n)) {
    if (form.pair(c, c) != 0) continue;
    for (unsigned lambda : lambdas)
      out.push_back(unitary_transvection(form, c, lambda));
  }
  // diagonal norm-one matrices with determinant 1
  const std::size_t tuples = [&] {
    std::size_t t = 1;
    for (unsigned i = 0; i + 1 < n; ++i) t *= units.size();
    return t;
  }();
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t c = code;
    unsigned det = f->one();
    Matrix m = Matrix::identity(f, n);
    for (unsigned i = 0; i + 1 < n; ++i) {
      unsigned u = units[c % units.size()];
      c /= units.size();
      m.set(i, i, u);
      det = f->mul(det, u);
    }
    m.set(n - 1, n - 1, f->inv(det));  // norm-one since det is norm-one
    if (m.is_identity()) continue;
    check_form_preserving(m, form, "unitary diagonal");
    out.push_back(m);
  }
  // det-adjusted monomial matrices
  std::vector<unsigned> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    Matrix m(f, n);
    for (unsigned i = 0; i < n; ++i) m.set(sigma[i], i, f->one());
    if (m.det() != f->one()) m.set(sigma[0], 0, f->neg(f->one()));
    if (m.det() != f->one() || m.is_identity()) continue;
    check_form_preserving(m, form, "unitary monomial");
    out.push_back(m);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  // products of reflections with inverse eigenvalues (determinant one);
  // these finish off SU(3,2), which its transvections do not generate
  {
    std::vector<std::vector<unsigned>> axes;
    for (const auto& v : projective_reps(f, n))
      if (form.pair(v, v) != 0) axes.push_back(v);
    for (unsigned u : units) {
      if (u == f->one()) continue;
      for (const auto& v : axes)
        for (const auto& w : axes) {
          if (v == w) continue;
          Matrix m = hermitian_reflection(form, v, u) *
                     hermitian_reflection(form, w, f->inv(u));
          if (m.is_identity()) continue;
          check_form_preserving(m, form, "reflection pair");
          out.push_back(m);
        }
    }
  }
  return out;
}

std::vector<Matrix> siegel_candidates(const ClassicalForm& form) {
  const FieldPtr& f = form.field();
  std::vector<Matrix> out;
  const auto reps = projective_reps(f, form.dim());
  std::vector<std::vector<unsigned>> singular;
  for (const auto& v : reps)
    if (form.quadratic_value(v) == 0) singular.push_back(v);
  for (std::size_t i = 0; i < singular.size(); ++i)
    for (std::size_t j = 0; j < singular.size(); ++j) {
      if (i == j) continue;
      const auto& a = singular[i];
      const auto& b = singular[j];
      if (form.pair(a, b) != 0) continue;
      for (unsigned lambda = 1; lambda < f->q(); ++lambda)
        out.push_back(siegel_element(form, a, b, lambda));
    }
  return out;
}

std::vector<unsigned> scalars_in_group(const MatrixActionMap& vmap,
                                       const PermGroup& vgroup) {
  const FieldPtr& f = vmap.field();
  std::vector<unsigned> out;
  for (unsigned lambda = 1; lambda < f->q(); ++lambda) {
    const Matrix s = Matrix::scalar(f, vmap.dim(), lambda);
    if (lambda == f->one() || vgroup.contains(vmap.image(s)))
      out.push_back(lambda);
  }
  return out;
}

struct PermWithMap {
  PermGroup group;
  std::vector<Perm> images;
  std::shared_ptr<const MatrixActionMap> map;
};

PermWithMap realize(const FieldPtr& f, unsigned dim,
                    const std::vector<Matrix>& gens, MatrixAction action) {
  auto map = std::make_shared<const MatrixActionMap>(f, dim, action);
  std::vector<Perm> images;
  images.reserve(gens.size());
  for (const auto& m : gens) images.push_back(map->image(m));
  PermGroup group(map->degree(), images);
  return {std::move(group), std::move(images), std::move(map)};
}

bool is_projective_family(Family f) {
  switch (f) {
    case Family::PSL:
    case Family::PGL:
    case Family::PSp:
    case Family::PSU:
    case Family::PGU:
      return true;
    default:
      return false;
  }
}

// Builds any of the linear/symplectic/unitary/orthogonal families: certify
// the linear cover on the vector action, determine the scalars it contains,
// then realize the requested (vector or projective) action.
BuiltGroup build_matrix_family(const GroupSpec& spec) {
  const Family fam = spec.family;
  const unsigned n = spec.n;
  const std::uint64_t q = spec.q;

  FieldPtr f;
  std::optional<ClassicalForm> form;
  BigInt cover_target;
  BigInt expected;
  switch (fam) {
    case Family::SL:
    case Family::PSL:
      f = Field::get(q);
      cover_target = sl_order(n, q);
      expected = fam == Family::SL
                     ? cover_target
                     : cover_target / std::gcd(static_cast<std::uint64_t>(n), q - 1);
      break;
    case Family::GL:
    case Family::PGL:
      f = Field::get(q);
      cover_target = gl_order(n, q);
      expected = fam == Family::GL ? cover_target : cover_target / (q - 1);
      break;
    case Family::Sp:
    case Family::PSp:
      f = Field::get(q);
      form = ClassicalForm::symplectic(f, n);
      cover_target = sp4_order(q);
      expected = fam == Family::Sp
                     ? cover_target
                     : cover_target / std::gcd(std::uint64_t{2}, q - 1);
      break;
    case Family::SU:
    case Family::PSU:
      f = Field::get(q * q);
      form = ClassicalForm::hermitian(f, n);
      cover_target = su_order(n, q);
      expected = fam == Family::SU
                     ? cover_target
                     : cover_target / std::gcd(static_cast<std::uint64_t>(n), q + 1);
      break;
    case Family::GU:
    case Family::PGU:
      f = Field::get(q * q);
      form = ClassicalForm::hermitian(f, n);
      cover_target = gu_order(n, q);
      expected = fam == Family::GU ? cover_target : cover_target / (q + 1);
      break;
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      f = Field::get(q);
      const bool plus = fam == Family::OmegaPlus;
      form = plus ? ClassicalForm::quadratic_plus(f, n)
                  : ClassicalForm::quadratic_minus(f, n);
      cover_target = omega6_order(q, plus ? 1 : -1);
      expected = cover_target;
      break;
    }
    default:
      throw UnsupportedSpec("not a matrix family: " + spec.str());
  }

  auto vmap_ptr =
      std::make_shared<const MatrixActionMap>(f, n, MatrixAction::Vectors);
  const MatrixActionMap& vmap = *vmap_ptr;

  std::vector<Matrix> cover_gens;
  std::vector<Perm> cover_images;
  std::optional<PermGroup> cover;
  switch (fam) {
    case Family::SL:
    case Family::PSL:
    case Family::GL:
    case Family::PGL: {
      cover_gens = sl_generators(f, n);
      if (fam == Family::GL || fam == Family::PGL) {
        Matrix d = Matrix::identity(f, n);
        d.set(0, 0, f->primitive_element());
        if (!d.is_identity()) cover_gens.push_back(d);
      }
      for (const auto& m : cover_gens) cover_images.push_back(vmap.image(m));
      cover.emplace(vmap.degree(), cover_images);
      if (cover->order() != cover_target) {
        std::ostringstream msg;
        msg << "standard generators of " << spec.str() << " produced order "
            << cover->order() << ", expected " << cover_target;
        throw GeneratorValidationFailed(msg.str());
      }
      break;
    }
    case Family::Sp:
    case Family::PSp: {
      CoverResult r =
          grow_to_order(vmap, symplectic_candidates(*form), cover_target,
                        "symplectic transvection stream for " + spec.str());
      cover_gens = std::move(r.gens);
      cover_images = std::move(r.images);
      cover.emplace(std::move(r.group));
      break;
    }
    case Family::SU:
    case Family::PSU:
    case Family::GU:
    case Family::PGU: {
      const bool general = fam == Family::GU || fam == Family::PGU;
      CoverResult r =
          grow_to_order(vmap, unitary_candidates(*form, general), cover_target,
                        "unitary isometry stream for " + spec.str());
      cover_gens = std::move(r.gens);
      cover_images = std::move(r.images);
      cover.emplace(std::move(r.group));
      break;
    }
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      CoverResult r =
          grow_to_order(vmap, siegel_candidates(*form), cover_target,
                        "Siegel element stream for " + spec.str());
      cover_gens = std::move(r.gens);
      cover_images = std::move(r.images);
      cover.emplace(std::move(r.group));
      break;
    }
    default:
      break;
  }

  if (form) {
    for (const auto& m : cover_gens)
      if (!form_preserved(m, *form))
        throw GeneratorValidationFailed("generator violates the form for " +
                                        spec.str());
  }

  const std::vector<unsigned> kernel = scalars_in_group(vmap, *cover);

  MatrixData data;
  data.field = f;
  data.dim = n;
  data.form = form;
  data.gens = cover_gens;
  data.cover_order = cover->order();
  data.kernel_scalars = kernel;

  BuiltGroup out{spec, *cover};
  if (is_projective_family(fam)) {
    PermWithMap proj = realize(f, n, cover_gens, MatrixAction::ProjectivePoints);
    if (proj.group.order() * BigInt(kernel.size()) != cover->order())
      throw GeneratorValidationFailed(
          "projective image order does not match cover order / kernel for " +
          spec.str());
    data.action = MatrixAction::ProjectivePoints;
    data.action_map = proj.map;
    out.group = std::move(proj.group);
  } else {
    // the cover itself is the built group
    data.action = MatrixAction::Vectors;
    data.action_map = vmap_ptr;
  }
  out.expected_order = expected;
  if (out.group.order() != expected) {
    std::ostringstream msg;
    msg << spec.str() << " built with order " << out.group.order()
        << ", expected " << expected;
    throw GeneratorValidationFailed(msg.str());
  }

  // distinguished elements
  const MatrixActionMap& amap = *data.action_map;
  auto add_distinguished = [&](std::string label, ElementKind kind,
                               const Matrix& m) {
    Distinguished d{std::move(label), kind, amap.image(m), m};
    if (!out.group.contains(d.perm))
      throw GeneratorValidationFailed("distinguished element escapes " +
                                      spec.str());
    out.distinguished.push_back(std::move(d));
  };
  const std::uint64_t p = f->characteristic();
  switch (fam) {
    case Family::SL:
    case Family::PSL:
    case Family::GL:
    case Family::PGL: {
      Matrix t = Matrix::identity(f, n);
      t.set(0, 1, f->one());
      if (t.order() != p)
        throw GeneratorValidationFailed("transvection order mismatch");
      add_distinguished("transvection", ElementKind::Transvection, t);
      break;
    }
    case Family::Sp:
    case Family::PSp: {
      std::vector<unsigned> e0(n, 0);
      e0[0] = f->one();
      Matrix t = symplectic_transvection(*form, e0, f->one());
      if (t.order() != p)
        throw GeneratorValidationFailed("transvection order mismatch");
      add_distinguished("transvection", ElementKind::Transvection, t);
      break;
    }
    case Family::SU:
    case Family::PSU:
    case Family::GU:
    case Family::PGU: {
      const std::vector<unsigned> lambdas = nonzero_trace_zero_elements(*form);
      for (const auto& c : projective_reps(f, n)) {
        if (form->pair(c, c) != 0) continue;
        Matrix t = unitary_transvection(*form, c, lambdas.front());
        if (t.order() != p)
          throw GeneratorValidationFailed("transvection order mismatch");
        add_distinguished("transvection", ElementKind::Transvection, t);
        break;
      }
      // order-3 reflections exist only over GF(4) in the supported table
      unsigned omega = 0;
      for (unsigned x = 2; x < f->q(); ++x)
        if (f->pow(x, 3) == f->one() && x != f->one() &&
            f->mul(x, form->conjugate(x)) == f->one()) {
          omega = x;
          break;
        }
      if (omega != 0) {
        std::vector<unsigned> axis(n, 0);
        axis[0] = f->one();
        Matrix r = unitary_reflection(*form, axis, omega);
        if (fam == Family::GU || fam == Family::PGU) {
          add_distinguished("reflection", ElementKind::UnitaryReflection, r);
        } else {
          // scale into SU when a norm-one scalar fixes the determinant; the
          // projective image is the same point as the reflection's
          for (unsigned s : norm_one_elements(*form)) {
            Matrix scaled = r.scaled(s);
            if (scaled.det() == f->one() && scaled.order() == 3) {
              add_distinguished("reflection", ElementKind::UnitaryReflection,
                                scaled);
              break;
            }
          }
        }
      }
      break;
    }
    case Family::OmegaPlus:
    case Family::OmegaMinus: {
      // first two hyperbolic-pair basis vectors span a totally singular plane
      std::vector<unsigned> a(n, 0), b(n, 0);
      a[0] = f->one();
      b[2] = f->one();
      Matrix s = siegel_element(*form, a, b, f->one());
      if (s.order() != p)
        throw GeneratorValidationFailed("Siegel element order mismatch");
      add_distinguished("siegel", ElementKind::Siegel, s);
      break;
    }
    default:
      break;
  }

  out.matrix = std::move(data);
  return out;
}

BuiltGroup build_perm_family(const GroupSpec& spec) {
  const unsigned n = spec.n;
  const std::size_t degree = std::max(1u, n);
  std::vector<Perm> gens;
  BigInt expected = 1;
  switch (spec.family) {
    case Family::Alt:
      if (n >= 3) {
        gens.push_back(cycle_perm(degree, {0, 1, 2}));
        if (n > 3) {
          std::vector<std::uint32_t> long_cycle;
          if (n % 2 == 1) {
            for (unsigned i = 0; i < n; ++i) long_cycle.push_back(i);
          } else {
            for (unsigned i = 1; i < n; ++i) long_cycle.push_back(i);
          }
          gens.push_back(cycle_perm(degree, long_cycle));
        }
        expected = factorial_big(n) / 2;
      }
      break;
    case Family::Sym:
      if (n >= 2) {
        gens.push_back(cycle_perm(degree, {0, 1}));
        if (n > 2) {
          std::vector<std::uint32_t> long_cycle(n);
          std::iota(long_cycle.begin(), long_cycle.end(), 0);
          gens.push_back(cycle_perm(degree, long_cycle));
        }
        expected = factorial_big(n);
      }
      break;
    case Family::Cyclic:
      if (n >= 2) {
        std::vector<std::uint32_t> long_cycle(n);
        std::iota(long_cycle.begin(), long_cycle.end(), 0);
        gens.push_back(cycle_perm(degree, long_cycle));
      }
      expected = n;
      break;
    default:
      throw UnsupportedSpec("not a permutation family: " + spec.str());
  }
  PermGroup group(degree, gens);
  BuiltGroup out{spec, std::move(group)};
  out.expected_order = expected;
  if (out.group.order() != expected)
    throw GeneratorValidationFailed(spec.str() + " built with wrong order");
  if (spec.family == Family::Alt && n >= 3) {
    Distinguished d{"three_cycle", ElementKind::ThreeCycle,
                    cycle_perm(degree, {0, 1, 2}), std::nullopt};
    out.distinguished.push_back(std::move(d));
  }
  if (spec.family == Family::Sym && n >= 2) {
    Distinguished d{"transposition", ElementKind::Custom,
                    cycle_perm(degree, {0, 1}), std::nullopt};
    out.distinguished.push_back(std::move(d));
  }
  return out;
}

BuiltGroup build_wreath(const GroupSpec& spec) {
  auto bottom = std::make_shared<BuiltGroup>(build_group(spec.inner.at(0)));
  const unsigned t = spec.n;
  const std::size_t d = bottom->group.degree();
  const std::size_t degree = d * t;
  if (degree > 4000)
    throw UnsupportedSpec("wreath product degree " + std::to_string(degree) +
                          " exceeds the cap of 4000");
  std::vector<Perm> gens;
  for (const Perm& s : bottom->group.generators()) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t j = 0; j < d; ++j)
      img[j] = s(static_cast<std::uint32_t>(j));
    gens.push_back(Perm::from_images(std::move(img)));
  }
  auto block_perm = [&](const Perm& top) {
    std::vector<std::uint32_t> img(degree);
    for (unsigned i = 0; i < t; ++i)
      for (std::size_t j = 0; j < d; ++j)
        img[i * d + j] =
            static_cast<std::uint32_t>(top(i) * d + j);
    return Perm::from_images(std::move(img));
  };
  gens.push_back(block_perm(cycle_perm(t, {0, 1})));
  if (t > 2) {
    std::vector<std::uint32_t> all(t);
    std::iota(all.begin(), all.end(), 0);
    gens.push_back(block_perm(cycle_perm(t, all)));
  }
  PermGroup group(degree, gens);
  BuiltGroup out{spec, std::move(group)};
  BigInt expected = factorial_big(t);
  for (unsigned i = 0; i < t; ++i) expected *= bottom->expected_order;
  out.expected_order = expected;
  if (out.group.order() != expected)
    throw GeneratorValidationFailed(spec.str() + " built with wrong order");
  out.wreath_bottom = std::move(bottom);
  out.wreath_blocks = t;
  return out;
}

BuiltGroup build_direct(const GroupSpec& spec) {
  std::vector<std::shared_ptr<const BuiltGroup>> factors;
  std::vector<std::size_t> offsets;
  std::size_t degree = 0;
  for (const auto& inner : spec.inner) {
    auto g = std::make_shared<const BuiltGroup>(build_group(inner));
    offsets.push_back(degree);
    degree += g->group.degree();
    factors.push_back(std::move(g));
  }
  if (degree > 4000)
    throw UnsupportedSpec("direct product degree exceeds the cap of 4000");
  std::vector<Perm> gens;
  BigInt expected = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    expected *= factors[k]->expected_order;
    for (const Perm& s : factors[k]->group.generators()) {
      std::vector<std::uint32_t> img(degree);
      std::iota(img.begin(), img.end(), 0);
      for (std::size_t j = 0; j < factors[k]->group.degree(); ++j)
        img[offsets[k] + j] = static_cast<std::uint32_t>(
            offsets[k] + s(static_cast<std::uint32_t>(j)));
      gens.push_back(Perm::from_images(std::move(img)));
    }
  }
  PermGroup group(degree, gens);
  BuiltGroup out{spec, std::move(group)};
  out.expected_order = expected;
  if (out.group.order() != expected)
    throw GeneratorValidationFailed(spec.str() + " built with wrong order");
  out.direct_factors = std::move(factors);
  out.direct_offsets = std::move(offsets);
  return out;
}

// PSL(2, q) for the prime fields q = 11, 13, which lie past the matrix
// construction tables: the projective-line action with a registered
// transvection image (the translation z -> z + 1).
BuiltGroup build_psl2_prime(const GroupSpec& spec) {
  const unsigned q = static_cast<unsigned>(spec.q);
  PermGroup group = psl2_projective_line(q);
  BuiltGroup out{spec, std::move(group)};
  out.expected_order = out.group.order();

  std::vector<std::uint32_t> img(q + 1u);
  for (unsigned z = 0; z < q; ++z) img[z] = (z + 1u) % q;
  img[q] = q;
  Perm translation = Perm::from_images(std::move(img));
  if (translation.element_order() != BigInt(q) ||
      !out.group.contains(translation))
    throw GeneratorValidationFailed("translation is not a group element");
  out.distinguished.push_back(Distinguished{
      "transvection", ElementKind::Transvection, std::move(translation), {}});
  return out;
}

}  // namespace

PermGroup psl2_projective_line(unsigned q) {
  if (q != 5 && q != 7 && q != 11 && q != 13)
    throw UnsupportedSpec("psl2_projective_line supports q in {5, 7, 11, 13}");

  const std::uint32_t inf = q;
  const std::size_t degree = q + 1u;
  auto normalize = [&](unsigned xx, unsigned yy) -> std::uint32_t {
    xx %= q;
    yy %= q;
    if (yy == 0) return inf;
    unsigned inv = 1;
    for (unsigned k = 1; k < q; ++k)
      if ((yy * k) % q == 1) {
        inv = k;
        break;
      }
    return (xx * inv) % q;
  };
  // Action of [[a, b], [c, dd]] on column vectors.
  auto image = [&](unsigned a, unsigned b, unsigned c, unsigned dd) {
    std::vector<std::uint32_t> img(degree);
    for (unsigned z = 0; z < q; ++z) img[z] = normalize(a * z + b, c * z + dd);
    img[inf] = normalize(a, c);
    return Perm::from_images(std::move(img));
  };

  PermGroup psl(degree, {image(1, 1, 0, 1), image(1, 0, 1, 1)});
  const BigInt expected = BigInt(q) * (BigInt(q) * q - 1) / 2;
  if (psl.order() != expected)
    throw GeneratorValidationFailed("projective line action has wrong order");
  return psl;
}

BuiltGroup build_group(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::Alt:
    case Family::Sym:
    case Family::Cyclic:
      return build_perm_family(spec);
    case Family::Wreath:
      return build_wreath(spec);
    case Family::Direct:
      return build_direct(spec);
    case Family::PSL:
      if (spec.n == 2 && spec.q > 9) return build_psl2_prime(spec);
      return build_matrix_family(spec);
    default:
      return build_matrix_family(spec);
  }
}

BuiltGroup build_group(const std::string& spec_text) {
  return build_group(parse_group_spec(spec_text));
}

ToPermutationResult to_permutation(const FieldPtr& field, unsigned dim,
                                   const std::vector<Matrix>& gens,
                                   MatrixAction action) {
  MatrixActionMap vmap(field, dim, MatrixAction::Vectors);
  std::vector<Perm> vimages;
  vimages.reserve(gens.size());
  for (const auto& m : gens) vimages.push_back(vmap.image(m));
  PermGroup vgroup(vmap.degree(), vimages);
  const BigInt cover_order = vgroup.order();
  const std::vector<unsigned> kernel = scalars_in_group(vmap, vgroup);
  if (action == MatrixAction::Vectors) {
    auto map = std::make_shared<const MatrixActionMap>(field, dim,
                                                       MatrixAction::Vectors);
    return {std::move(vgroup), std::move(vimages), std::move(map), cover_order,
            kernel};
  }
  PermWithMap proj = realize(field, dim, gens, MatrixAction::ProjectivePoints);
  if (proj.group.order() * BigInt(kernel.size()) != cover_order)
    throw GeneratorValidationFailed(
        "projective image order does not match cover order / kernel");
  return {std::move(proj.group), std::move(proj.images), std::move(proj.map),
          cover_order, kernel};
}

std::optional<Matrix> matrix_of(const BuiltGroup& g, const Perm& p) {
  if (!g.matrix || g.matrix->action != MatrixAction::Vectors) return {};
  const MatrixActionMap& map = *g.matrix->action_map;
  const FieldPtr& f = g.matrix->field;
  const unsigned n = g.matrix->dim;
  if (p.degree() != map.degree())
    throw PreconditionViolated("matrix_of: permutation degree mismatch");
  Matrix m(f, n);
  for (unsigned j = 0; j < n; ++j) {
    std::vector<unsigned> e(n, 0);
    e[j] = f->one();
    const std::vector<unsigned>& img =
        map.points()[p(static_cast<std::uint32_t>(map.index_of(e)))];
    for (unsigned i = 0; i < n; ++i) m.set(i, j, img[i]);
  }
  // A permutation of the vector action determines the matrix exactly; check
  // it reproduces the whole action before handing it back.
  if (!(map.image(m) == p))
    throw PreconditionViolated("matrix_of: permutation is not linear");
  return m;
}

std::optional<ElementKind> classify_element(const BuiltGroup& g, const Perm& p) {
  std::optional<Matrix> mp = matrix_of(g, p);
  if (!mp) return {};
  const Matrix& m = *mp;
  const Matrix id = Matrix::identity(g.matrix->field, g.matrix->dim);
  if (m == id) return {};
  const Matrix res = m - id;
  const unsigned rank = res.rank();
  const Matrix zero(g.matrix->field, g.matrix->dim);
  const bool square_zero = (res * res) == zero;
  if (rank == 1 && square_zero) return ElementKind::Transvection;
  if (rank == 1 && !square_zero && (m * m * m) == id)
    return ElementKind::UnitaryReflection;
  const bool quadratic =
      g.matrix->form && g.matrix->form->kind() == FormKind::Quadratic;
  if (rank == 2 && square_zero && quadratic) return ElementKind::Siegel;
  return {};
}

Perm wreath_embed(const BuiltGroup& w, const std::vector<Perm>& bottom,
                  const Perm& top) {
  if (w.spec.family != Family::Wreath || !w.wreath_bottom)
    throw PreconditionViolated("wreath_embed needs a wreath-product group");
  const unsigned t = w.wreath_blocks;
  const std::size_t d = w.wreath_bottom->group.degree();
  if (bottom.size() != t)
    throw PreconditionViolated("wreath_embed needs one bottom element per block");
  if (top.degree() != t)
    throw PreconditionViolated("wreath_embed top degree mismatch");
  for (const Perm& s : bottom)
    if (s.degree() != d)
      throw PreconditionViolated("wreath_embed bottom degree mismatch");
  std::vector<std::uint32_t> img(t * d);
  for (unsigned i = 0; i < t; ++i)
    for (std::size_t j = 0; j < d; ++j)
      img[i * d + j] = static_cast<std::uint32_t>(
          top(i) * d + bottom[i](static_cast<std::uint32_t>(j)));
  return Perm::from_images(std::move(img));
}

std::pair<std::vector<Perm>, Perm> wreath_split(const BuiltGroup& w,
                                                const Perm& g) {
  if (w.spec.family != Family::Wreath || !w.wreath_bottom)
    throw PreconditionViolated("wreath_split needs a wreath-product group");
  const unsigned t = w.wreath_blocks;
  const std::size_t d = w.wreath_bottom->group.degree();
  if (g.degree() != t * d)
    throw PreconditionViolated("wreath_split degree mismatch");
  std::vector<std::uint32_t> top_img(t);
  std::vector<Perm> bottom;
  for (unsigned i = 0; i < t; ++i) {
    const std::size_t target = g(static_cast<std::uint32_t>(i * d)) / d;
    top_img[i] = static_cast<std::uint32_t>(target);
    std::vector<std::uint32_t> img(d);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t to = g(static_cast<std::uint32_t>(i * d + j));
      if (to / d != target)
        throw PreconditionViolated(
            "element does not preserve the block system");
      img[j] = static_cast<std::uint32_t>(to - target * d);
    }
    bottom.push_back(Perm::from_images(std::move(img)));
  }
  return {std::move(bottom), Perm::from_images(std::move(top_img))};
}

Perm direct_embed(const BuiltGroup& dgrp, const std::vector<Perm>& parts) {
  if (dgrp.spec.family != Family::Direct)
    throw PreconditionViolated("direct_embed needs a direct-product group");
  if (parts.size() != dgrp.direct_factors.size())
    throw PreconditionViolated("direct_embed needs one element per factor");
  std::vector<std::uint32_t> img(dgrp.group.degree());
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::size_t d = dgrp.direct_factors[k]->group.degree();
    if (parts[k].degree() != d)
      throw PreconditionViolated("direct_embed factor degree mismatch");
    for (std::size_t j = 0; j < d; ++j)
      img[dgrp.direct_offsets[k] + j] = static_cast<std::uint32_t>(
          dgrp.direct_offsets[k] + parts[k](static_cast<std::uint32_t>(j)));
  }
  return Perm::from_images(std::move(img));
}

std::vector<Perm> direct_split(const BuiltGroup& dgrp, const Perm& g) {
  if (dgrp.spec.family != Family::Direct)
    throw PreconditionViolated("direct_split needs a direct-product group");
  if (g.degree() != dgrp.group.degree())
    throw PreconditionViolated("direct_split degree mismatch");
  std::vector<Perm> parts;
  for (std::size_t k = 0; k < dgrp.direct_factors.size(); ++k) {
    const std::size_t off = dgrp.direct_offsets[k];
    const std::size_t d = dgrp.direct_factors[k]->group.degree();
    std::vector<std::uint32_t> img(d);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t to = g(static_cast<std::uint32_t>(off + j));
      if (to < off || to >= off + d)
        throw PreconditionViolated("element does not preserve the factors");
      img[j] = static_cast<std::uint32_t>(to - off);
    }
    parts.push_back(Perm::from_images(std::move(img)));
  }
  return parts;
}

}  // namespace srl

#include "srl/matrix.hpp"

namespace srl {

Matrix::Matrix(FieldPtr field, unsigned n) : field_(std::move(field)), n_(n) {
  if (n_ == 0 || n_ > kMaxDim) {
    throw InvalidScalar("matrix dimension must be 1.." + std::to_string(kMaxDim));
  }
  e_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

Matrix Matrix::identity(FieldPtr field, unsigned n) {
  Matrix m(std::move(field), n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, m.field_->one());
  return m;
}

Matrix Matrix::scalar(FieldPtr field, unsigned n, unsigned value) {
  Matrix m(std::move(field), n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, value);
  return m;
}

void Matrix::set(unsigned r, unsigned c, unsigned v) {
  if (v >= field_->q()) throw InvalidScalar("entry outside the field");
  e_[r * n_ + c] = v;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_->q() == o.field_->q() && n_ == o.n_ && e_ == o.e_;
}

bool Matrix::is_identity() const { return *this == identity(field_, n_); }

bool Matrix::is_scalar() const {
  unsigned d = at(0, 0);
  if (d == 0) return false;
  return *this == scalar(field_, n_, d);
}

void Matrix::check_compatible(const Matrix& o) const {
  if (field_->q() != o.field_->q()) throw FieldMismatch("matrices over different fields");
  if (n_ != o.n_) throw FieldMismatch("matrix dimension mismatch");
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_compatible(o);
  const Field& f = *field_;
  Matrix r(field_, n_);
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned k = 0; k < n_; ++k) {
      unsigned a = at(i, k);
      if (a == 0) continue;
      for (unsigned j = 0; j < n_; ++j) {
        unsigned prod = f.mul(a, o.at(k, j));
        r.e_[i * n_ + j] = f.add(r.e_[i * n_ + j], prod);
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->add(e_[i], o.e_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_compatible(o);
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->sub(e_[i], o.e_[i]);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) r.set(j, i, at(i, j));
  }
  return r;
}

Matrix Matrix::frobenius_entrywise(unsigned times) const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->frobenius_iter(e_[i], times);
  return r;
}

Matrix Matrix::scaled(unsigned value) const {
  Matrix r(field_, n_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->mul(e_[i], value);
  return r;
}

unsigned Matrix::det() const {
  const Field& f = *field_;
  Matrix a = *this;
  unsigned d = f.one();
  for (unsigned col = 0; col < n_; ++col) {
    unsigned pivot = col;
    while (pivot < n_ && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n_) return 0;
    if (pivot != col) {
      for (unsigned j = 0; j < n_; ++j) {
        std::swap(a.e_[pivot * n_ + j], a.e_[col * n_ + j]);
      }
      d = f.neg(d);
    }
    unsigned pv = a.at(col, col);
    d = f.mul(d, pv);
    unsigned pinv = f.inv(pv);
    for (unsigned r = col + 1; r < n_; ++r) {
      unsigned factor = f.mul(a.at(r, col), pinv);
      if (factor == 0) continue;
      for (unsigned j = col; j < n_; ++j) {
        a.e_[r * n_ + j] = f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
      }
    }
  }
  return d;
}

Matrix Matrix::inverse() const {
  const Field& f = *field_;
  Matrix a = *this;
  Matrix inv = identity(field_, n_);
  for (unsigned col = 0; col < n_; ++col) {
    unsigned pivot = col;
    while (pivot < n_ && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n_) throw SingularMatrix("matrix is singular");
    if (pivot != col) {
      for (unsigned j = 0; j < n_; ++j) {
        std::swap(a.e_[pivot * n_ + j], a.e_[col * n_ + j]);
        std::swap(inv.e_[pivot * n_ + j], inv.e_[col * n_ + j]);
      }
    }
    unsigned pinv = f.inv(a.at(col, col));
    for (unsigned j = 0; j < n_; ++j) {
      a.e_[col * n_ + j] = f.mul(a.at(col, j), pinv);
      inv.e_[col * n_ + j] = f.mul(inv.at(col, j), pinv);
    }
    for (unsigned r = 0; r < n_; ++r) {
      if (r == col) continue;
      unsigned factor = a.at(r, col);
      if (factor == 0) continue;
      for (unsigned j = 0; j < n_; ++j) {
        a.e_[r * n_ + j] = f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
        inv.e_[r * n_ + j] = f.sub(inv.at(r, j), f.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

unsigned Matrix::rank() const {
  const Field& f = *field_;
  Matrix a = *this;
  unsigned rank = 0;
  unsigned row = 0;
  for (unsigned col = 0; col < n_ && row < n_; ++col) {
    unsigned pivot = row;
    while (pivot < n_ && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n_) continue;
    if (pivot != row) {
      for (unsigned j = 0; j < n_; ++j) std::swap(a.e_[pivot * n_ + j], a.e_[row * n_ + j]);
    }
    unsigned pinv = f.inv(a.at(row, col));
    for (unsigned r = row + 1; r < n_; ++r) {
      unsigned factor = f.mul(a.at(r, col), pinv);
      if (factor == 0) continue;
      for (unsigned j = col; j < n_; ++j) {
        a.e_[r * n_ + j] = f.sub(a.at(r, j), f.mul(factor, a.at(row, j)));
      }
    }
    ++rank;
    ++row;
  }
  return rank;
}

Matrix Matrix::power(std::uint64_t e) const {
  Matrix base = *this;
  Matrix acc = identity(field_, n_);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::uint64_t Matrix::order() const {
  if (det() == 0) throw SingularMatrix("order of a singular matrix");
  Matrix acc = *this;
  std::uint64_t n = 1;
  Matrix id = identity(field_, n_);
  while (!(acc == id)) {
    acc = acc * *this;
    if (++n > kOrderCap) {
      throw OrderCapExceeded("matrix order exceeds " + std::to_string(kOrderCap));
    }
  }
  return n;
}

std::vector<unsigned> Matrix::apply(const std::vector<unsigned>& v) const {
  if (v.size() != n_) throw FieldMismatch("vector length mismatch");
  const Field& f = *field_;
  std::vector<unsigned> r(n_, 0);
  for (unsigned i = 0; i < n_; ++i) {
    unsigned acc = 0;
    for (unsigned j = 0; j < n_; ++j) acc = f.add(acc, f.mul(at(i, j), v[j]));
    r[i] = acc;
  }
  return r;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (unsigned i = 0; i < n_; ++i) {
    if (i) out += "; ";
    for (unsigned j = 0; j < n_; ++j) {
      if (j) out += " ";
      out += field_->element_string(at(i, j));
    }
  }
  out += "]";
  return out;
}

ClassicalForm ClassicalForm::symplectic(FieldPtr field, unsigned n) {
  if (n % 2 != 0) throw InvalidFamilyParams("symplectic forms need even dimension");
  Matrix gram(field, n);
  unsigned one = field->one();
  for (unsigned i = 0; i < n / 2; ++i) gram.set(i, n - 1 - i, one);
  for (unsigned i = n / 2; i < n; ++i) gram.set(i, n - 1 - i, field->neg(one));
  return ClassicalForm(FormKind::Symplectic, std::move(gram), {}, 0);
}

ClassicalForm ClassicalForm::hermitian(FieldPtr field, unsigned n) {
  if (field->degree() % 2 != 0) {
    throw InvalidFamilyParams("hermitian forms need a field of even degree over the prime field");
  }
  Matrix gram = Matrix::identity(field, n);
  return ClassicalForm(FormKind::Hermitian, std::move(gram), {}, field->degree() / 2);
}

namespace {

// Fills indices [start, start+2m) with hyperbolic pairs (e, f) laid out
// adjacently: Q(e) = Q(f) = 0, polar(e, f) = 1.
void add_hyperbolic_pairs(Matrix& gram, std::vector<unsigned>& diag, unsigned start,
                          unsigned pairs) {
  unsigned one = gram.field()->one();
  for (unsigned i = 0; i < pairs; ++i) {
    unsigned a = start + 2 * i, b = start + 2 * i + 1;
    gram.set(a, b, one);
    gram.set(b, a, one);
    diag[a] = 0;
    diag[b] = 0;
  }
}

}  // namespace

ClassicalForm ClassicalForm::quadratic_plus(FieldPtr field, unsigned n) {
  if (n % 2 != 0) throw InvalidFamilyParams("plus-type forms need even dimension");
  Matrix gram(field, n);
  std::vector<unsigned> diag(n, 0);
  add_hyperbolic_pairs(gram, diag, 0, n / 2);
  return ClassicalForm(FormKind::Quadratic, std::move(gram), std::move(diag), 0);
}

ClassicalForm ClassicalForm::quadratic_minus(FieldPtr field, unsigned n) {
  if (n % 2 != 0) throw InvalidFamilyParams("minus-type forms need even dimension");
  if (field->characteristic() == 2) {
    throw UnsupportedSpec("minus-type quadratic forms implemented for odd characteristic only");
  }
  Matrix gram(field, n);
  std::vector<unsigned> diag(n, 0);
  add_hyperbolic_pairs(gram, diag, 0, n / 2 - 1);
  // Anisotropic plane Q(x, y) = x^2 - delta y^2 with delta a non-square.
  const Field& f = *field;
  unsigned delta = 0;
  for (unsigned cand = 1; cand < f.q(); ++cand) {
    bool square = false;
    for (unsigned s = 1; s < f.q(); ++s) {
      if (f.mul(s, s) == cand) {
        square = true;
        break;
      }
    }
    if (!square) {
      delta = cand;
      break;
    }
  }
  if (delta == 0) throw Error("FieldTableError", "no non-square found (impossible for odd q)");
  unsigned a = n - 2, b = n - 1;
  diag[a] = f.one();
  diag[b] = f.neg(delta);
  // Polar form B(u,v) = Q(u+v) - Q(u) - Q(v): B(e_a,e_a) = 2 Q(e_a) etc.
  unsigned two = f.add(f.one(), f.one());
  gram.set(a, a, f.mul(two, diag[a]));
  gram.set(b, b, f.mul(two, diag[b]));
  return ClassicalForm(FormKind::Quadratic, std::move(gram), std::move(diag), 0);
}

unsigned ClassicalForm::pair(const std::vector<unsigned>& u,
                             const std::vector<unsigned>& v) const {
  const Field& f = *field();
  if (u.size() != dim() || v.size() != dim()) throw FieldMismatch("vector length mismatch");
  unsigned acc = 0;
  for (unsigned i = 0; i < dim(); ++i) {
    if (u[i] == 0) continue;
    for (unsigned j = 0; j < dim(); ++j) {
      unsigned g = gram_.at(i, j);
      if (g == 0) continue;
      unsigned vj = kind_ == FormKind::Hermitian ? conjugate(v[j]) : v[j];
      acc = f.add(acc, f.mul(u[i], f.mul(g, vj)));
    }
  }
  return acc;
}

unsigned ClassicalForm::quadratic_value(const std::vector<unsigned>& v) const {
  if (kind_ != FormKind::Quadratic) throw PreconditionViolated("not a quadratic form");
  const Field& f = *field();
  // Q(sum c_i e_i) = sum c_i^2 Q(e_i) + sum_{i<j} c_i c_j B(e_i, e_j).
  unsigned acc = 0;
  for (unsigned i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    acc = f.add(acc, f.mul(f.mul(v[i], v[i]), diag_[i]));
    for (unsigned j = i + 1; j < dim(); ++j) {
      if (v[j] == 0) continue;
      acc = f.add(acc, f.mul(f.mul(v[i], v[j]), gram_.at(i, j)));
    }
  }
  return acc;
}

bool ClassicalForm::is_isotropic_vector(const std::vector<unsigned>& v) const {
  if (kind_ == FormKind::Quadratic) return quadratic_value(v) == 0;
  return pair(v, v) == 0;
}

bool form_preserved(const Matrix& a, const ClassicalForm& form) {
  if (a.dim() != form.dim() || a.field()->q() != form.field()->q()) {
    throw FieldMismatch("matrix does not match the form's space");
  }
  Matrix rhs = form.kind() == FormKind::Hermitian
                   ? a.frobenius_entrywise(form.conjugation_power())
                   : a;
  if (!(a.transpose() * form.gram() * rhs == form.gram())) return false;
  if (form.kind() == FormKind::Quadratic) {
    unsigned n = a.dim();
    for (unsigned i = 0; i < n; ++i) {
      std::vector<unsigned> ei(n, 0);
      ei[i] = a.field()->one();
      if (form.quadratic_value(a.apply(ei)) != form.quadratic_value(ei)) return false;
      for (unsigned j = i + 1; j < n; ++j) {
        std::vector<unsigned> eij = ei;
        eij[j] = a.field()->one();
        if (form.quadratic_value(a.apply(eij)) != form.quadratic_value(eij)) return false;
      }
    }
  }
  return true;
}

}  // namespace srl

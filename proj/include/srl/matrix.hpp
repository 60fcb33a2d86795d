#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srl/field.hpp"
#include "srl/numeric.hpp"

namespace srl {

// Dense square matrix over a finite field; entries are field element indices.
// Dimensions are capped at 8 (the atlas needs at most dimension 6).
class Matrix {
public:
  static constexpr unsigned kMaxDim = 8;
  static constexpr std::uint64_t kOrderCap = 1'000'000;

  Matrix(FieldPtr field, unsigned n);  // zero matrix
  static Matrix identity(FieldPtr field, unsigned n);
  static Matrix scalar(FieldPtr field, unsigned n, unsigned value);

  unsigned dim() const { return n_; }
  const FieldPtr& field() const { return field_; }

  unsigned at(unsigned r, unsigned c) const { return e_[r * n_ + c]; }
  void set(unsigned r, unsigned c, unsigned v);

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_identity() const;
  bool is_scalar() const;  // nonzero scalar multiple of the identity

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  Matrix frobenius_entrywise(unsigned times = 1) const;
  Matrix scaled(unsigned value) const;

  unsigned det() const;
  Matrix inverse() const;  // throws SingularMatrix
  unsigned rank() const;
  Matrix power(std::uint64_t e) const;

  // Multiplicative order, by repeated multiplication; throws
  // OrderCapExceeded past kOrderCap.
  std::uint64_t order() const;

  // v -> M v for a column vector of field indices.
  std::vector<unsigned> apply(const std::vector<unsigned>& v) const;

  std::string to_string() const;

private:
  void check_compatible(const Matrix& o) const;

  FieldPtr field_;
  unsigned n_;
  std::vector<unsigned> e_;
};

enum class FormKind { Symplectic, Hermitian, Quadratic };

// A classical form on F^n:
//  - Symplectic: alternating bilinear, Gram matrix antidiag(1..1,-1..-1).
//  - Hermitian: sesquilinear over GF(q0^2) with conjugation x -> x^{q0};
//    standard Gram is the identity.
//  - Quadratic: stored as the polar Gram matrix together with the diagonal
//    values Q(e_i); standard shapes are hyperbolic (plus type) or hyperbolic
//    plus a 2-dimensional anisotropic block (minus type).
class ClassicalForm {
public:
  static ClassicalForm symplectic(FieldPtr field, unsigned n);
  static ClassicalForm hermitian(FieldPtr field, unsigned n);   // field = GF(q0^2)
  static ClassicalForm quadratic_plus(FieldPtr field, unsigned n);
  static ClassicalForm quadratic_minus(FieldPtr field, unsigned n);

  FormKind kind() const { return kind_; }
  const Matrix& gram() const { return gram_; }
  const FieldPtr& field() const { return gram_.field(); }
  unsigned dim() const { return gram_.dim(); }

  // Conjugation exponent: the number of Frobenius applications realizing
  // x -> x^{q0} for hermitian forms; 0 otherwise.
  unsigned conjugation_power() const { return conj_power_; }
  unsigned conjugate(unsigned a) const {
    return field()->frobenius_iter(a, conj_power_);
  }

  // kappa(u, v): bilinear or sesquilinear pairing of column vectors.
  unsigned pair(const std::vector<unsigned>& u, const std::vector<unsigned>& v) const;

  // Quadratic value Q(v); only for quadratic forms.
  unsigned quadratic_value(const std::vector<unsigned>& v) const;

  bool is_isotropic_vector(const std::vector<unsigned>& v) const;

private:
  ClassicalForm(FormKind kind, Matrix gram, std::vector<unsigned> diag, unsigned conj_power)
      : kind_(kind), gram_(std::move(gram)), diag_(std::move(diag)), conj_power_(conj_power) {}

  FormKind kind_;
  Matrix gram_;
  std::vector<unsigned> diag_;  // Q(e_i) for quadratic forms
  unsigned conj_power_ = 0;
};

// True iff A preserves the form: A^T Gram A^sigma == Gram (sigma = hermitian
// conjugation, identity otherwise), and for quadratic forms additionally
// Q(A e_i) == Q(e_i) and Q(A(e_i + e_j)) == Q(e_i + e_j) for all i < j.
bool form_preserved(const Matrix& a, const ClassicalForm& form);

}  // namespace srl

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "srl/error.hpp"

namespace srl {

// GF(p^k) for prime powers q = p^k <= 81.  Elements are represented by their
// index in [0, q): the element sum c_i t^i has index sum c_i p^i, where t is
// the class of the variable modulo the field's modulus polynomial.
//
// The modulus is the lexicographically least monic irreducible polynomial of
// degree k over GF(p), comparing the coefficient vectors
// (c_0, c_1, ..., c_{k-1}) of the non-leading coefficients.  Irreducibility
// is verified at construction by trial division against every monic
// polynomial of degree <= k/2.
//
// All arithmetic is table driven (q <= 81 keeps the tables tiny), which also
// makes Frobenius and inverses O(1).
class Field {
public:
  static constexpr std::uint64_t kMaxQ = 81;

  static std::shared_ptr<const Field> get(std::uint64_t q);  // cached per q

  std::uint64_t q() const { return q_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }

  // Modulus coefficients c_0..c_k (monic, c_k == 1); degree-1 fields report
  // the polynomial t - t for uniformity, i.e. {0, 1}.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  unsigned zero() const { return 0; }
  unsigned one() const { return 1; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned inv(unsigned a) const {
    if (a == 0) throw InvalidScalar("inverse of zero");
    return inv_[a];
  }
  // x -> x^p (generates Gal(GF(q)/GF(p))).
  unsigned frobenius(unsigned a) const { return frob_[a]; }
  unsigned frobenius_iter(unsigned a, unsigned times) const {
    for (unsigned i = 0; i < times; ++i) a = frob_[a];
    return a;
  }
  unsigned pow(unsigned a, std::uint64_t e) const;

  // Multiplicative order of a nonzero element.
  unsigned element_order(unsigned a) const;
  // Least-index element of multiplicative order q-1.
  unsigned primitive_element() const;

  // Coefficient vector (c_0..c_{k-1}) of an element.
  std::vector<unsigned> coefficients(unsigned a) const;
  unsigned from_coefficients(const std::vector<unsigned>& c) const;

  // Element from an integer literal (reduces mod p into the prime field).
  unsigned from_int(std::int64_t v) const;

  std::string element_string(unsigned a) const;  // e.g. "0", "1", "t+2"

private:
  explicit Field(std::uint64_t q);

  std::uint64_t q_ = 0, p_ = 0;
  unsigned k_ = 0;
  std::vector<std::uint64_t> modulus_;
  std::vector<unsigned> add_, mul_, neg_, inv_, frob_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Least e >= 1 with q^e == 1 (mod p); p an odd prime not dividing q.
// This is the order e(q, p) controlling which tori contain p-elements.
unsigned minimal_e(std::uint64_t p, std::uint64_t q);

}  // namespace srl

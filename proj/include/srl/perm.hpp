#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srl/numeric.hpp"

namespace srl {

// A permutation of {0, ..., degree-1}, stored as its image array.
//
// Composition convention: (a * b) applies a first, then b, i.e.
// (a * b)(i) = b(a(i)).  Under this convention conjugation
// x.conjugated_by(g) = g^-1 * x * g relabels the cycles of x by g:
// if x maps i -> j then x^g maps g(i) -> g(j).
//
// Cycle strings use 1-based points with comma separators, e.g. "(1,2,3)(4,5)";
// the identity prints as "()".
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t degree);  // identity

  static Perm from_images(std::vector<std::uint32_t> images);
  static Perm from_cycles(std::size_t degree, const std::string& cycles);

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t p) const { return img_[p]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const;
  Perm operator*(const Perm& then) const;
  Perm inverse() const;
  Perm conjugated_by(const Perm& g) const;  // g^-1 * *this * g
  Perm power(std::int64_t e) const;
  Perm commutator_with(const Perm& g) const;  // this^-1 g^-1 this g

  BigInt element_order() const;  // lcm of cycle lengths
  std::uint64_t smallest_moved() const;  // degree() if identity

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return !(*this == o); }

  // Canonical byte encoding used as a hash key for members of conjugacy
  // classes and for subgroup element sets: the image array serialized as
  // unsigned bytes when degree <= 256, else as little-endian 16-bit words
  // (degrees beyond 65536 are not used as hash keys).
  std::string encode() const;

  std::string cycle_string() const;
  std::vector<std::vector<std::uint32_t>> cycles() const;  // nontrivial cycles

private:
  std::vector<std::uint32_t> img_;
};

}  // namespace srl

#pragma once

#include <memory>
#include <vector>

#include "srl/perm.hpp"
#include "srl/stab_chain.hpp"

namespace srl {

class Rng;

// A finite permutation group given by generators, with an eagerly built
// stabilizer chain.  Instances are immutable after construction, so const
// queries (contains, order, random_element with a caller-owned Rng) are safe
// to share across worker threads.
//
// Degrees are capped at 10^5 points; callers construct groups on vector or
// projective actions well below that in practice.
class PermGroup {
public:
  static constexpr std::size_t kDegreeCap = 100'000;

  PermGroup(std::size_t degree, std::vector<Perm> gens);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const StabChain& chain() const { return *chain_; }

  BigInt order() const { return chain_->order(); }
  bool contains(const Perm& g) const { return chain_->contains(g); }
  bool is_trivial() const { return order() == 1; }

  Perm identity() const { return Perm(degree_); }
  Perm random_element(Rng& rng) const { return chain_->random_element(rng); }

  // Visits every element once (deterministic order).  Use only when the
  // order is known to be modest; the conjugacy module guards with caps.
  template <typename F>
  void for_each_element(F&& visit) const {
    chain_->enumerate(std::forward<F>(visit));
  }

  bool is_subgroup_of(const PermGroup& g) const;

  // Smallest normal subgroup of this group containing `seeds`
  // (which must be elements of this group).
  PermGroup normal_closure(const std::vector<Perm>& seeds) const;

  PermGroup derived_subgroup() const;

  // Derived series G = D0 > D1 > ... until stable; the final entry is
  // trivial iff the group is solvable.
  std::vector<PermGroup> derived_series() const;

  // True iff the derived series reaches the trivial group.  A Burnside
  // shortcut (orders with at most two distinct prime factors are solvable)
  // avoids the series for the common small cases; the two routes are
  // cross-checked in the test suite.
  bool is_solvable() const;

  // True iff the lower central series reaches the trivial group.
  bool is_nilpotent() const;

  // Group generated by this group's generators plus `extra`.
  PermGroup extended_by(const std::vector<Perm>& extra) const;

private:
  std::size_t degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<const StabChain> chain_;
};

// Convenience: subgroup of `ambient` degree generated by the given perms.
PermGroup generated_group(std::size_t degree, const std::vector<Perm>& gens);

// Stabilizer of a point, generated by the Schreier generators of the orbit
// of `point` under `g`.
PermGroup point_stabilizer(const PermGroup& g, std::uint32_t point);

}  // namespace srl

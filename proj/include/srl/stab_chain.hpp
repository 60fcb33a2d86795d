#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "srl/perm.hpp"

namespace srl {

// Stabilizer chain (base and strong generating set) built with the
// deterministic Schreier-Sims algorithm.
//
// Base points are chosen smallest-moved-point-first and orbits are extended
// by FIFO closure in generator insertion order, so the chain for a given
// generator sequence is reproducible.  Transversal entries, once written,
// are never rewritten, which keeps earlier sift certificates valid while the
// chain grows.
//
// Level i stores the orbit of base[i] under the subgroup generated by the
// strong generators fixing base[0..i-1] pointwise.  The group order is the
// product of the basic orbit lengths.
class StabChain {
public:
  // Builds the chain for the group generated by `gens` acting on
  // {0..degree-1}.  After construction every Schreier generator of every
  // level sifts to the identity and every input generator is verified to
  // sift to the identity.
  StabChain(std::size_t degree, const std::vector<Perm>& gens);

  std::size_t degree() const { return degree_; }
  BigInt order() const;
  std::size_t base_length() const { return levels_.size(); }
  std::uint32_t base_point(std::size_t level) const { return levels_[level].base; }
  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }
  const std::vector<std::uint32_t>& orbit(std::size_t level) const {
    return levels_[level].orbit;
  }
  const std::vector<Perm>& strong_generators() const { return strong_; }

  // Transversal representative u with u(base_point(level)) = point.
  Perm transversal(std::size_t level, std::uint32_t point) const;

  bool contains(const Perm& g) const;

  // Sifts g through the chain; returns the residue and the level at which
  // sifting stopped (== base_length() when the residue fixes every base
  // point; contains(g) iff that residue is the identity).
  std::pair<Perm, std::size_t> sift(const Perm& g) const;

  // Element with uniform distribution over the group: the product of
  // uniformly chosen transversal representatives, one per level.
  Perm random_element(class Rng& rng) const;

  // Visits every group element exactly once, in the deterministic order
  // induced by the basic orbits.  The callback may return false to stop.
  template <typename F>
  void enumerate(F&& visit) const {
    Perm id(degree_);
    enumerate_rec(0, id, visit);
  }

private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<int> gen_idx;             // indices into strong_
    std::vector<std::uint32_t> orbit;     // BFS order; orbit[0] == base
    std::vector<std::int32_t> pos;        // point -> index in orbit, or -1
    // For orbit position j > 0: orbit[j] was reached from point edge_from[j]
    // by strong_[edge_gen[j]].
    std::vector<std::uint32_t> edge_from;
    std::vector<int> edge_gen;
    // Optional fully materialized transversal (small degrees only).
    std::vector<Perm> table;
    bool has_table = false;
  };

  void build(const std::vector<Perm>& gens);
  std::pair<Perm, std::size_t> sift_from(const Perm& g, std::size_t start) const;
  void materialize_tables();

  template <typename F>
  bool enumerate_rec(std::size_t level, const Perm& suffix, F&& visit) const {
    if (level == levels_.size()) return visit(suffix);
    for (std::uint32_t p : levels_[level].orbit) {
      // transversal applied first, then the already-chosen deeper part
      if (!enumerate_rec(level + 1, transversal(level, p) * suffix, visit)) return false;
    }
    return true;
  }

  std::size_t degree_ = 0;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
};

}  // namespace srl

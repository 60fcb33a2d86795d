#include "srl/stab_chain.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "srl/error.hpp"
#include "srl/rng.hpp"

namespace srl {

namespace {
constexpr std::size_t kMaxTransversalTableEntries = 4'000'000;
}

StabChain::StabChain(std::size_t degree, const std::vector<Perm>& gens) : degree_(degree) {
  for (const Perm& g : gens) {
    if (g.degree() != degree_) throw FieldMismatch("generator degree mismatch");
  }
  build(gens);
  // Safety net required of every chain: the input generators must sift to
  // the identity.
  for (const Perm& g : gens) {
    if (!contains(g)) {
      throw Error("ChainVerificationFailed", "input generator fails to sift");
    }
  }
}

void StabChain::build(const std::vector<Perm>& gens) {
  // Pending (point, strong-generator) pairs per level.  A pair is both an
  // orbit-closure step and a Schreier-generator check: if the image point is
  // new it extends the orbit (tree edge, trivial Schreier generator);
  // otherwise the corresponding Schreier generator is sifted through the
  // deeper levels and any non-identity residue is adopted as a new strong
  // generator there.
  std::vector<std::deque<std::pair<std::uint32_t, int>>> work;

  auto ensure_level = [&](const Perm& mover) {
    Level lv;
    lv.base = static_cast<std::uint32_t>(mover.smallest_moved());
    lv.pos.assign(degree_, -1);
    lv.orbit.push_back(lv.base);
    lv.pos[lv.base] = 0;
    lv.edge_from.push_back(lv.base);
    lv.edge_gen.push_back(-1);
    levels_.push_back(std::move(lv));
    work.emplace_back();
  };

  auto add_gen_to_level = [&](int strong_idx, std::size_t level) {
    Level& lv = levels_[level];
    lv.gen_idx.push_back(strong_idx);
    for (std::uint32_t p : lv.orbit) work[level].emplace_back(p, strong_idx);
  };

  // Seed level 0 with the input generators.
  std::vector<int> initial;
  for (const Perm& g : gens) {
    if (g.is_identity()) continue;
    strong_.push_back(g);
    initial.push_back(static_cast<int>(strong_.size()) - 1);
  }
  if (strong_.empty()) return;  // trivial group
  std::uint32_t first_base = static_cast<std::uint32_t>(degree_);
  for (int idx : initial) {
    first_base = std::min(first_base,
                          static_cast<std::uint32_t>(strong_[idx].smallest_moved()));
  }
  {
    Level lv;
    lv.base = first_base;
    lv.pos.assign(degree_, -1);
    lv.orbit.push_back(lv.base);
    lv.pos[lv.base] = 0;
    lv.edge_from.push_back(lv.base);
    lv.edge_gen.push_back(-1);
    levels_.push_back(std::move(lv));
    work.emplace_back();
  }
  for (int idx : initial) add_gen_to_level(idx, 0);

  // Depth-first completion in the classic Schreier-Sims order: a level's
  // Schreier generators are only sifted once every deeper level is complete,
  // and placing a residue re-completes the deeper levels before the current
  // level continues.  Sifting against complete deeper chains keeps almost
  // all residues trivial; each adopted residue strictly extends an orbit, so
  // the strong generating set stays small.
  std::function<void(std::size_t)> complete_level = [&](std::size_t lvl) {
    while (!work[lvl].empty()) {
      auto [p, sidx] = work[lvl].front();
      work[lvl].pop_front();
      Level& lv = levels_[lvl];
      const Perm& s = strong_[sidx];
      std::uint32_t q = s(p);
      if (lv.pos[q] < 0) {
        lv.pos[q] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.edge_from.push_back(p);
        lv.edge_gen.push_back(sidx);
        for (int gi : lv.gen_idx) work[lvl].emplace_back(q, gi);
        continue;
      }
      // Schreier generator u_p * s * u_q^-1 for the stabilizer of base(lvl).
      Perm schreier = transversal(lvl, p) * s * transversal(lvl, q).inverse();
      if (schreier.is_identity()) continue;
      auto [residue, stall] = sift_from(schreier, lvl + 1);
      if (residue.is_identity()) continue;
      strong_.push_back(std::move(residue));
      int ridx = static_cast<int>(strong_.size()) - 1;
      if (stall == levels_.size()) ensure_level(strong_[ridx]);
      std::size_t target = std::min(stall, levels_.size() - 1);
      for (std::size_t m = lvl + 1; m <= target; ++m) add_gen_to_level(ridx, m);
      for (std::size_t m = target; m > lvl; --m) complete_level(m);
    }
  };
  complete_level(0);
  materialize_tables();
}

std::pair<Perm, std::size_t> StabChain::sift_from(const Perm& g, std::size_t start) const {
  Perm r = g;
  for (std::size_t lvl = start; lvl < levels_.size(); ++lvl) {
    const Level& lv = levels_[lvl];
    std::uint32_t p = r(lv.base);
    if (lv.pos[p] < 0) return {std::move(r), lvl};
    if (p == lv.base) continue;
    // Multiply by the inverse transversal edge by edge, avoiding a full
    // transversal product when no table is materialized.
    if (lv.has_table) {
      r = r * lv.table[lv.pos[p]].inverse();
    } else {
      std::uint32_t cur = p;
      while (cur != lv.base) {
        std::int32_t at = lv.pos[cur];
        r = r * strong_[lv.edge_gen[at]].inverse();
        cur = lv.edge_from[at];
      }
    }
  }
  return {std::move(r), levels_.size()};
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& g) const { return sift_from(g, 0); }

bool StabChain::contains(const Perm& g) const {
  if (g.degree() != degree_) throw FieldMismatch("degree mismatch in contains");
  auto [r, lvl] = sift_from(g, 0);
  return lvl == levels_.size() && r.is_identity();
}

Perm StabChain::transversal(std::size_t level, std::uint32_t point) const {
  const Level& lv = levels_[level];
  std::int32_t at = lv.pos[point];
  if (at < 0) throw Error("PointNotInOrbit", "no transversal representative");
  if (lv.has_table) return lv.table[at];
  // Compose generators along the tree path base -> point.
  std::vector<int> path;
  std::uint32_t cur = point;
  while (cur != lv.base) {
    std::int32_t k = lv.pos[cur];
    path.push_back(lv.edge_gen[k]);
    cur = lv.edge_from[k];
  }
  Perm t(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) t = t * strong_[*it];
  return t;
}

void StabChain::materialize_tables() {
  for (Level& lv : levels_) {
    if (lv.orbit.size() * degree_ > kMaxTransversalTableEntries) continue;
    lv.table.reserve(lv.orbit.size());
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      if (i == 0) {
        lv.table.emplace_back(degree_);
        continue;
      }
      // Parent entries precede children in BFS order.
      lv.table.push_back(lv.table[lv.pos[lv.edge_from[i]]] * strong_[lv.edge_gen[i]]);
    }
    lv.has_table = true;
  }
}

BigInt StabChain::order() const {
  BigInt n = 1;
  for (const Level& lv : levels_) n *= static_cast<std::uint64_t>(lv.orbit.size());
  return n;
}

Perm StabChain::random_element(Rng& rng) const {
  Perm g(degree_);
  // Product of uniformly chosen transversal representatives; by the unique
  // factorization over the chain this is uniform over the group.
  for (std::size_t lvl = levels_.size(); lvl-- > 0;) {
    const Level& lv = levels_[lvl];
    std::uint32_t p = lv.orbit[rng.below(lv.orbit.size())];
    g = g * transversal(lvl, p);
  }
  return g;
}

}  // namespace srl

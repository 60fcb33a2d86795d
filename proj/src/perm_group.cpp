#include "srl/perm_group.hpp"

#include <deque>
#include <set>

#include "srl/error.hpp"
#include "srl/numeric.hpp"

namespace srl {

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens)
    : degree_(degree), gens_(std::move(gens)) {
  if (degree_ > kDegreeCap) {
    throw DegreeCapExceeded("degree " + std::to_string(degree_) + " exceeds cap " +
                            std::to_string(kDegreeCap));
  }
  chain_ = std::make_shared<const StabChain>(degree_, gens_);
}

PermGroup generated_group(std::size_t degree, const std::vector<Perm>& gens) {
  return PermGroup(degree, gens);
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  for (const Perm& x : gens_) {
    if (!g.contains(x)) return false;
  }
  return true;
}

PermGroup PermGroup::normal_closure(const std::vector<Perm>& seeds) const {
  for (const Perm& s : seeds) {
    if (!contains(s)) throw PreconditionViolated("normal closure seed outside the group");
  }
  std::vector<Perm> closure_gens;
  std::deque<Perm> queue;
  for (const Perm& s : seeds) {
    if (s.is_identity()) continue;
    closure_gens.push_back(s);
    queue.push_back(s);
  }
  if (closure_gens.empty()) return PermGroup(degree_, {});
  auto chain = std::make_unique<StabChain>(degree_, closure_gens);
  while (!queue.empty()) {
    Perm k = std::move(queue.front());
    queue.pop_front();
    for (const Perm& g : gens_) {
      for (int dir = 0; dir < 2; ++dir) {
        Perm c = dir == 0 ? k.conjugated_by(g) : k.conjugated_by(g.inverse());
        if (!chain->contains(c)) {
          closure_gens.push_back(c);
          queue.push_back(c);
          chain = std::make_unique<StabChain>(degree_, closure_gens);
        }
      }
    }
  }
  return PermGroup(degree_, std::move(closure_gens));
}

PermGroup PermGroup::derived_subgroup() const {
  // [G,G] is the normal closure in G of the pairwise generator commutators.
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      Perm c = gens_[i].commutator_with(gens_[j]);
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  }
  return normal_closure(comms);
}

std::vector<PermGroup> PermGroup::derived_series() const {
  std::vector<PermGroup> series{*this};
  for (;;) {
    const PermGroup& cur = series.back();
    BigInt cur_order = cur.order();
    if (cur_order == 1) break;
    PermGroup next = cur.derived_subgroup();
    if (next.order() == cur_order) break;  // perfect group: series stabilizes
    series.push_back(std::move(next));
  }
  return series;
}

bool PermGroup::is_solvable() const {
  BigInt n = order();
  if (n == 1) return true;
  // Burnside: |G| = p^a q^b implies solvable.  Orders in this library stay
  // well within trial-division range.
  if (distinct_small_primes(n).size() <= 2) return true;
  auto series = derived_series();
  return series.back().order() == 1;
}

bool PermGroup::is_nilpotent() const {
  BigInt n = order();
  if (n == 1) return true;
  if (distinct_small_primes(n).size() == 1) return true;  // p-groups are nilpotent
  // Lower central series: L1 = G, L_{k+1} = [L_k, G].
  PermGroup cur = *this;
  for (;;) {
    BigInt cur_order = cur.order();
    if (cur_order == 1) return true;
    std::vector<Perm> comms;
    for (const Perm& a : cur.generators()) {
      for (const Perm& b : gens_) {
        Perm c = a.commutator_with(b);
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    }
    PermGroup next = normal_closure(comms);
    if (next.order() == cur_order) return false;  // stabilized above trivial
    cur = std::move(next);
  }
}

PermGroup PermGroup::extended_by(const std::vector<Perm>& extra) const {
  std::vector<Perm> gens = gens_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(degree_, std::move(gens));
}

PermGroup point_stabilizer(const PermGroup& g, std::uint32_t point) {
  if (point >= g.degree())
    throw PreconditionViolated("stabilizer point out of range");
  // Orbit of `point` with transversal elements, then Schreier generators.
  std::vector<Perm> transversal;
  std::vector<std::size_t> pos(g.degree(), SIZE_MAX);
  std::vector<std::uint32_t> orbit{point};
  pos[point] = 0;
  transversal.push_back(Perm(g.degree()));
  std::vector<Perm> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const Perm& s : g.generators()) {
      const std::uint32_t to = s(orbit[i]);
      if (pos[to] == SIZE_MAX) {
        pos[to] = orbit.size();
        orbit.push_back(to);
        transversal.push_back(transversal[i] * s);
      } else {
        Perm schreier = transversal[i] * s * transversal[pos[to]].inverse();
        if (schreier.is_identity()) continue;
        if (seen.insert(schreier.encode()).second)
          out.push_back(std::move(schreier));
      }
    }
  }
  return PermGroup(g.degree(), std::move(out));
}

}  // namespace srl

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srl {

enum class Family {
  Alt,
  Sym,
  Cyclic,
  SL,
  PSL,
  GL,
  PGL,
  Sp,
  PSp,
  SU,
  PSU,
  GU,
  PGU,
  OmegaPlus,
  OmegaMinus,
  Wreath,
  Direct,
};

const char* family_name(Family f);

// Parsed group description, e.g. Alt(5), PSL(2,7), Wreath(Alt(5),2),
// Direct(Alt(5),Cyclic(3)).  For permutation families n is the natural
// degree (or the cyclic order); for matrix families n is the dimension and
// q the field size; for Wreath the single inner spec is the bottom group and
// n the number of blocks; Direct holds two or more inner specs.
struct GroupSpec {
  Family family = Family::Alt;
  unsigned n = 0;
  std::uint64_t q = 0;
  std::vector<GroupSpec> inner;

  std::string str() const;  // canonical text form

  bool operator==(const GroupSpec& o) const;
};

// Parses the grammar
//   spec    := name '(' args ')'
//   args    := number {',' number} | spec {',' spec} [',' number]
// Family names are case-insensitive; whitespace is ignored.  Errors carry
// the offending position and what was expected.  Semantic validation (prime
// power q, supported parameter ranges) also happens here.
GroupSpec parse_group_spec(const std::string& text);

}  // namespace srl

#include "srl/group_spec.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "srl/error.hpp"
#include "srl/numeric.hpp"

namespace srl {

const char* family_name(Family f) {
  switch (f) {
    case Family::Alt: return "Alt";
    case Family::Sym: return "Sym";
    case Family::Cyclic: return "Cyclic";
    case Family::SL: return "SL";
    case Family::PSL: return "PSL";
    case Family::GL: return "GL";
    case Family::PGL: return "PGL";
    case Family::Sp: return "Sp";
    case Family::PSp: return "PSp";
    case Family::SU: return "SU";
    case Family::PSU: return "PSU";
    case Family::GU: return "GU";
    case Family::PGU: return "PGU";
    case Family::OmegaPlus: return "OmegaPlus";
    case Family::OmegaMinus: return "OmegaMinus";
    case Family::Wreath: return "Wreath";
    case Family::Direct: return "Direct";
  }
  return "?";
}

std::string GroupSpec::str() const {
  std::string s = family_name(family);
  s += '(';
  if (family == Family::Wreath) {
    s += inner.at(0).str();
    s += ',';
    s += std::to_string(n);
  } else if (family == Family::Direct) {
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (i) s += ',';
      s += inner[i].str();
    }
  } else {
    s += std::to_string(n);
    if (q != 0) {
      s += ',';
      s += std::to_string(q);
    }
  }
  s += ')';
  return s;
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  return family == o.family && n == o.n && q == o.q && inner == o.inner;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  GroupSpec run() {
    GroupSpec spec = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after group spec");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("at position " + std::to_string(pos_) + ": " + what +
                     " (input: \"" + text_ + "\")");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Family parse_family() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected a family name");
    std::string word = text_.substr(start, pos_ - start);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    static const std::map<std::string, Family> table = {
        {"alt", Family::Alt},
        {"sym", Family::Sym},
        {"cyclic", Family::Cyclic},
        {"sl", Family::SL},
        {"psl", Family::PSL},
        {"gl", Family::GL},
        {"pgl", Family::PGL},
        {"sp", Family::Sp},
        {"psp", Family::PSp},
        {"su", Family::SU},
        {"psu", Family::PSU},
        {"gu", Family::GU},
        {"pgu", Family::PGU},
        {"omegaplus", Family::OmegaPlus},
        {"omegaminus", Family::OmegaMinus},
        {"wreath", Family::Wreath},
        {"direct", Family::Direct},
    };
    auto it = table.find(word);
    if (it == table.end()) {
      pos_ = start;
      fail("unknown family \"" + word + "\"");
    }
    return it->second;
  }

  std::uint64_t parse_number() {
    skip_ws();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  bool next_is_number() {
    skip_ws();
    return pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  GroupSpec parse_spec() {
    GroupSpec spec;
    spec.family = parse_family();
    expect('(');
    if (spec.family == Family::Wreath) {
      spec.inner.push_back(parse_spec());
      expect(',');
      spec.n = checked_n(parse_number());
    } else if (spec.family == Family::Direct) {
      spec.inner.push_back(parse_spec());
      while (peek_is(',')) {
        expect(',');
        spec.inner.push_back(parse_spec());
      }
    } else {
      spec.n = checked_n(parse_number());
      if (peek_is(',')) {
        expect(',');
        spec.q = parse_number();
      }
    }
    expect(')');
    validate(spec);
    return spec;
  }

  unsigned checked_n(std::uint64_t v) {
    if (v > 1'000'000) fail("parameter out of range");
    return static_cast<unsigned>(v);
  }

  // Supported table: Alt/Sym n <= 12; SL/PSL/GL/PGL n <= 4, q <= 9
  // (plus PSL(2,11) and PSL(2,13) via their projective-line actions);
  // Sp/PSp (4,3); SU/PSU/GU/PGU n <= 4, q in {2,3}; Omega+- (6,3);
  // Wreath t in {2,3,4}; Cyclic as a direct-product helper.
  void validate(const GroupSpec& s) {
    switch (s.family) {
      case Family::Alt:
      case Family::Sym:
        if (s.n < 1 || s.n > 12) fail("degree must be in 1..12");
        if (s.q != 0) fail("family takes a single parameter");
        break;
      case Family::Cyclic:
        if (s.n < 1 || s.n > 100) fail("order must be in 1..100");
        if (s.q != 0) fail("family takes a single parameter");
        break;
      case Family::Wreath:
        if (s.n < 2 || s.n > 4) fail("block count must be in 2..4");
        break;
      case Family::Direct:
        if (s.inner.size() < 2) fail("Direct needs at least two factors");
        break;
      default: {
        // matrix families
        if (s.q == 0) fail("matrix family needs a field size");
        std::uint64_t q = s.q;
        bool psl2_prime = s.family == Family::PSL && s.n == 2 &&
                          (q == 11 || q == 13);
        if (!psl2_prime && (q < 2 || q > 9))
          fail("field size must be in 2..9");
        if (!as_prime_power(q)) fail("field size must be a prime power");
        switch (s.family) {
          case Family::SL:
          case Family::PSL:
          case Family::GL:
          case Family::PGL:
            if (s.n < 2 || s.n > 4) fail("dimension must be in 2..4");
            break;
          case Family::Sp:
          case Family::PSp:
            if (s.n != 4 || q != 3) fail("symplectic support is Sp(4,3) only");
            break;
          case Family::SU:
          case Family::PSU:
          case Family::GU:
          case Family::PGU:
            if (s.n < 2 || s.n > 4) fail("dimension must be in 2..4");
            if (q > 3) fail("unitary support needs q in {2,3}");
            break;
          case Family::OmegaPlus:
          case Family::OmegaMinus:
            if (s.n != 6 || q != 3)
              fail("orthogonal support is OmegaPlus(6,3)/OmegaMinus(6,3) only");
            break;
          default:
            break;
        }
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  Parser p(text);
  return p.run();
}

}  // namespace srl

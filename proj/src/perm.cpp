#include "srl/perm.hpp"

#include <algorithm>
#include <numeric>

#include "srl/error.hpp"

namespace srl {

Perm::Perm(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0u);
}

Perm Perm::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (std::uint32_t v : images) {
    if (v >= images.size() || seen[v]) {
      throw ParseError("image array is not a permutation");
    }
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::string& s) {
  Perm p(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  skip_ws();
  if (i == s.size()) throw ParseError("empty cycle string");
  while (i < s.size()) {
    skip_ws();
    if (i == s.size()) break;
    if (s[i] != '(') {
      throw ParseError("expected '(' at position " + std::to_string(i) + " in \"" + s + "\"");
    }
    ++i;
    std::vector<std::uint32_t> cyc;
    skip_ws();
    while (i < s.size() && s[i] != ')') {
      std::size_t start = i;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
      if (i == start) {
        throw ParseError("expected a point at position " + std::to_string(i) + " in \"" + s + "\"");
      }
      unsigned long v = std::stoul(s.substr(start, i - start));
      if (v == 0 || v > degree) {
        throw ParseError("point " + std::to_string(v) + " out of range 1.." +
                         std::to_string(degree));
      }
      cyc.push_back(static_cast<std::uint32_t>(v - 1));
      skip_ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i == s.size()) throw ParseError("unterminated cycle in \"" + s + "\"");
    ++i;  // ')'
    std::vector<bool> in_cycle(degree, false);
    for (std::uint32_t c : cyc) {
      if (in_cycle[c]) throw ParseError("point repeated within a cycle in \"" + s + "\"");
      in_cycle[c] = true;
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      std::uint32_t from = cyc[j];
      std::uint32_t to = cyc[(j + 1) % cyc.size()];
      if (p.img_[from] != from) {
        throw ParseError("point " + std::to_string(from + 1) + " repeated across cycles");
      }
      p.img_[from] = to;
    }
  }
  skip_ws();
  return p;
}

bool Perm::is_identity() const {
  for (std::uint32_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

Perm Perm::operator*(const Perm& then) const {
  if (degree() != then.degree()) throw FieldMismatch("permutation degree mismatch");
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = then.img_[img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::uint32_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = i;
  return r;
}

Perm Perm::conjugated_by(const Perm& g) const {
  if (degree() != g.degree()) throw FieldMismatch("permutation degree mismatch");
  // (g^-1 * x * g)(g(i)) = g(x(i)), computed without forming g^-1.
  Perm r(degree());
  for (std::uint32_t i = 0; i < img_.size(); ++i) r.img_[g.img_[i]] = g.img_[img_[i]];
  return r;
}

Perm Perm::power(std::int64_t e) const {
  Perm base = e >= 0 ? *this : inverse();
  std::uint64_t n = e >= 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e);
  Perm acc(degree());
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

Perm Perm::commutator_with(const Perm& g) const {
  return inverse() * g.inverse() * *this * g;
}

BigInt Perm::element_order() const {
  BigInt ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::uint32_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    std::uint32_t j = i;
    do {
      seen[j] = true;
      j = img_[j];
      ++len;
    } while (j != i);
    ord = boost::multiprecision::lcm(ord, BigInt(len));
  }
  return ord;
}

std::uint64_t Perm::smallest_moved() const {
  for (std::uint32_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return i;
  }
  return img_.size();
}

std::string Perm::encode() const {
  std::string out;
  if (img_.size() <= 256) {
    out.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out[i] = static_cast<char>(img_[i]);
  } else {
    out.resize(img_.size() * 2);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      out[2 * i] = static_cast<char>(img_[i] & 0xff);
      out[2 * i + 1] = static_cast<char>((img_[i] >> 8) & 0xff);
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> Perm::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(img_.size(), false);
  for (std::uint32_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = true;
      continue;
    }
    std::vector<std::uint32_t> cyc;
    std::uint32_t j = i;
    do {
      seen[j] = true;
      cyc.push_back(j);
      j = img_[j];
    } while (j != i);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Perm::cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& cyc : cs) {
    out += '(';
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(cyc[j] + 1);
    }
    out += ')';
  }
  return out;
}

}  // namespace srl

#include "srl/field.hpp"

#include <map>
#include <mutex>

#include "srl/numeric.hpp"

namespace srl {

namespace {

// Polynomials over GF(p) as coefficient vectors c_0..c_deg (trailing entry
// nonzero except for the zero polynomial, represented by {}).
using Poly = std::vector<std::uint64_t>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    // m is monic
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t sub = (lead * m[i]) % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_trim(std::move(r));
}

// Enumerates monic polynomials of exact degree d over GF(p) in
// lexicographic order of (c_0, ..., c_{d-1}).
bool next_monic(Poly& c, std::uint64_t p) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  unsigned d = static_cast<unsigned>(f.size()) - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (unsigned dd = 1; dd <= d / 2; ++dd) {
    Poly g(dd + 1, 0);
    g[dd] = 1;
    do {
      if (poly_mod(f, g, p).empty()) return false;
    } while (next_monic(g, p));
  }
  return true;
}

Poly least_irreducible(std::uint64_t p, unsigned k) {
  Poly f(k + 1, 0);
  f[k] = 1;
  do {
    if (f[0] != 0 && is_irreducible(f, p)) return f;
    // constant term 0 means divisible by t; skip early
  } while (next_monic(f, p));
  throw Error("NoIrreducible", "no irreducible polynomial found (impossible)");
}

}  // namespace

Field::Field(std::uint64_t q) {
  PrimePower pp = as_prime_power(q);
  if (!pp || q > kMaxQ) {
    throw InvalidScalar("field size must be a prime power <= " + std::to_string(kMaxQ) +
                        ", got " + std::to_string(q));
  }
  q_ = q;
  p_ = pp.p;
  k_ = pp.k;
  modulus_ = (k_ == 1) ? Poly{0, 1} : least_irreducible(p_, k_);

  auto index_to_poly = [&](unsigned a) {
    Poly c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a = static_cast<unsigned>(a / p_);
    }
    return poly_trim(std::move(c));
  };
  auto poly_to_index = [&](const Poly& c) {
    std::uint64_t idx = 0, w = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      idx += c[i] * w;
      w *= p_;
    }
    return static_cast<unsigned>(idx);
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    Poly pa = index_to_poly(a);
    for (unsigned b = 0; b < q_; ++b) {
      Poly pb = index_to_poly(b);
      Poly sum(std::max(pa.size(), pb.size()), 0);
      for (std::size_t i = 0; i < sum.size(); ++i) {
        std::uint64_t va = i < pa.size() ? pa[i] : 0;
        std::uint64_t vb = i < pb.size() ? pb[i] : 0;
        sum[i] = (va + vb) % p_;
      }
      add_[a * q_ + b] = poly_to_index(poly_trim(std::move(sum)));
      mul_[a * q_ + b] = poly_to_index(poly_mod(poly_mul(pa, pb, p_), modulus_, p_));
    }
  }
  for (unsigned a = 0; a < q_; ++a) {
    Poly pa = index_to_poly(a);
    Poly na(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[a] = poly_to_index(poly_trim(std::move(na)));
  }
  for (unsigned a = 1; a < q_; ++a) {
    for (unsigned b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] == 0) throw Error("FieldTableError", "element without inverse");
  }
  for (unsigned a = 0; a < q_; ++a) {
    unsigned r = 1;
    for (std::uint64_t i = 0; i < p_; ++i) r = mul_[r * q_ + a];
    frob_[a] = r;
  }
}

unsigned Field::pow(unsigned a, std::uint64_t e) const {
  unsigned r = 1;
  unsigned base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

unsigned Field::element_order(unsigned a) const {
  if (a == 0) throw InvalidScalar("multiplicative order of zero");
  unsigned e = 1;
  unsigned acc = a;
  while (acc != 1) {
    acc = mul(acc, a);
    ++e;
  }
  return e;
}

unsigned Field::primitive_element() const {
  for (unsigned a = 1; a < q_; ++a) {
    if (element_order(a) == q_ - 1) return a;
  }
  throw Error("FieldTableError", "no primitive element (impossible)");
}

std::vector<unsigned> Field::coefficients(unsigned a) const {
  std::vector<unsigned> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % static_cast<unsigned>(p_);
    a /= static_cast<unsigned>(p_);
  }
  return c;
}

unsigned Field::from_coefficients(const std::vector<unsigned>& c) const {
  if (c.size() > k_) throw InvalidScalar("too many coefficients");
  std::uint64_t idx = 0, w = 1;
  for (unsigned v : c) {
    if (v >= p_) throw InvalidScalar("coefficient out of range");
    idx += v * w;
    w *= p_;
  }
  return static_cast<unsigned>(idx);
}

unsigned Field::from_int(std::int64_t v) const {
  std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t r = ((v % m) + m) % m;
  return static_cast<unsigned>(r);
}

std::string Field::element_string(unsigned a) const {
  if (k_ == 1 || a < p_) return std::to_string(a % p_);
  auto c = coefficients(a);
  std::string out;
  for (unsigned i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += (i == 1) ? "t" : "t^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::shared_ptr<const Field> Field::get(std::uint64_t q) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<const Field>(new Field(q));
  cache.emplace(q, f);
  return f;
}

unsigned minimal_e(std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || p == 2) throw InvalidScalar("p must be an odd prime");
  if (q % p == 0) throw InvalidScalar("p must not divide q");
  return multiplicative_order_mod(q, p);
}

}  // namespace srl

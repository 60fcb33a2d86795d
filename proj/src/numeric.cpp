#include "srl/numeric.hpp"

#include "srl/error.hpp"

namespace srl {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimePower as_prime_power(std::uint64_t n) {
  if (n < 2) return {};
  std::uint64_t m = n;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {n, 1};  // n itself prime
  unsigned k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return {};
  return {p, k};
}

std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::vector<std::uint64_t> distinct_small_primes(const BigInt& n) {
  BigInt m = n;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d < 1000000; ++d) {
    if (m == 1) break;
    if (BigInt(d) * d > m) {
      // remaining cofactor is prime
      if (m < 1000000) {
        primes.push_back(static_cast<std::uint64_t>(m));
        m = 1;
      }
      break;
    }
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m != 1) {
    throw Error("FactorizationFailed",
                "order has a prime factor above 10^6: " + n.str());
  }
  return primes;
}

unsigned multiplicative_order_mod(std::uint64_t q, std::uint64_t p) {
  if (p < 2 || q % p == 0) {
    throw Error("BadModulus", "multiplicative order needs p prime, p not dividing q");
  }
  std::uint64_t v = q % p;
  std::uint64_t acc = v;
  unsigned e = 1;
  while (acc != 1) {
    acc = (acc * v) % p;
    ++e;
    if (e > p) throw Error("BadModulus", "no multiplicative order found; p not prime?");
  }
  return e;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt exact_sqrt(const BigInt& n) {
  if (n < 0) throw Error("NotAPerfectSquare", "negative argument");
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) throw Error("NotAPerfectSquare", n.str());
  return r;
}

}  // namespace srl

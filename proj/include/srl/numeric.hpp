#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace srl {

// Group orders are kept exact.  Orders of wreath products and of the larger
// matrix groups overflow 64 bits, so arbitrary precision integers are used
// throughout; rational bounds (counting checks, audits) use exact rationals.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Trial-division primality; all inputs in this library are tiny.
bool is_prime(std::uint64_t n);

// If n = p^k for a prime p, returns {p, k}; otherwise returns {0, 0}.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned k = 0;
  explicit operator bool() const { return p != 0; }
};
PrimePower as_prime_power(std::uint64_t n);

// Prime factorization by trial division (small inputs only).
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);

// Factorization of a BigInt whose prime factors are all < 10^6.  Returns the
// multiset of distinct primes; throws Error if a cofactor > 1 remains.
std::vector<std::uint64_t> distinct_small_primes(const BigInt& n);

// Multiplicative order of q modulo p (p prime, p does not divide q).
unsigned multiplicative_order_mod(std::uint64_t q, std::uint64_t p);

std::uint64_t ipow(std::uint64_t base, unsigned exp);
BigInt big_pow(const BigInt& base, unsigned exp);

// Exact integer square root of a perfect square; throws Error otherwise.
BigInt exact_sqrt(const BigInt& n);

}  // namespace srl

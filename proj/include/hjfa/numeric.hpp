#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hjfa {

using Integer = mpz_class;
// mpq_class keeps num/den canonical: den > 0, gcd = 1, zero is 0/1.
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
/// Accepts "n" or "n/d" with optional sign on n.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
/// Always "num/den", including integers ("5/1").
std::string to_string(const Rational& value);

// Fixed-width modular helpers for moduli below 2^63.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t mod_u64(const Integer& a, std::uint64_t m);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
std::uint64_t next_prime_at_least(std::uint64_t n);
std::uint64_t isqrt_u64(std::uint64_t n);
std::uint64_t isqrt_ceil_u64(std::uint64_t n);

/// Exponent of p in a nonzero integer.
long valuation(const Integer& value, std::uint64_t p);

/// Prime factorization of |n| by trial division up to `bound`. A leftover
/// cofactor below bound^2 is prime and reported as such; anything larger
/// raises factorization_limit. n must be nonzero.
std::vector<std::pair<Integer, unsigned>> factor_trial(const Integer& n, std::uint64_t bound);

}  // namespace hjfa

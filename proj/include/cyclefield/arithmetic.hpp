#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cyclefield {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical rational from a numerator/denominator pair (reduced, positive
/// denominator). Throws DivisionByZero on a zero denominator.
Rational make_rational(BigInt numerator, BigInt denominator);

/// Always "numerator/denominator", e.g. "3/8", "0/1", "-1/3".
std::string rational_string(const Rational& r);

/// Parses "num/den" or plain "num".
Rational rational_from_string(std::string_view text);

double to_double(const Rational& r);

/// Trial division; intended for desk-scale inputs.
bool is_prime(std::uint64_t n);

/// 1 on 1, (-1)^r on a product of r distinct primes, 0 otherwise.
int mobius(std::uint64_t n);

struct PrimePower {
    std::uint64_t p;
    unsigned k;
};

/// Decomposes q = p^k with p prime, k >= 1.
std::optional<PrimePower> as_prime_power(std::uint64_t q);

/// Same, but throws DomainError when q is not a prime power.
PrimePower require_prime_power(std::uint64_t q);

/// binomial(n, k) on big integers; zero when 0 <= n < k.
BigInt binomial(const BigInt& n, std::uint64_t k);

BigInt power(std::uint64_t base, unsigned exp);
BigInt factorial(unsigned n);

/// pi_q(i): the number of monic irreducible polynomials of degree i over F_q,
/// from i*pi_q(i) = sum over d | i of mu(d) * q^(i/d). The division by i is
/// asserted exact; a nonzero remainder throws InternalInconsistency.
BigInt gauss_irreducible_count(std::uint64_t q, unsigned i);

/// pi_q(i, a): the number of size-a multisets of monic irreducibles of degree
/// i, i.e. binomial(pi_q(i) + a - 1, a). pi_q(i, 0) = 1.
BigInt multiset_irreducible_count(std::uint64_t q, unsigned i, std::uint64_t a);

/// Exact check of q^i >= i*pi_q(i) >= q^i - 2*q^floor(i/2).
bool check_pi_bounds(std::uint64_t q, unsigned i);

struct BernoulliBound {
    Rational lower;
    Rational value;
    Rational upper;
};

/// For xs all in [0,1]: lower = 0, value = 1 - prod(1 - x_k), upper = sum x_k,
/// with 0 <= value <= upper verified exactly. Throws OutOfRange on inputs
/// outside [0,1].
BernoulliBound bernoulli_product_bound(std::span<const Rational> xs);

}  // namespace cyclefield

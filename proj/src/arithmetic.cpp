#include "cyclefield/arithmetic.hpp"

#include <charconv>

#include "cyclefield/errors.hpp"

namespace cyclefield {

Rational make_rational(BigInt numerator, BigInt denominator) {
    if (denominator == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(std::move(numerator), std::move(denominator));
    r.canonicalize();
    return r;
}

std::string rational_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(text)));
        }
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        return make_rational(std::move(num), std::move(den));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational: " + std::string(text));
    }
}

double to_double(const Rational& r) { return r.get_d(); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw DomainError("mobius(0)");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) return std::nullopt;
    return PrimePower{p, k};
}

PrimePower require_prime_power(std::uint64_t q) {
    auto pp = as_prime_power(q);
    if (!pp) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
    return *pp;
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

BigInt power(std::uint64_t base, unsigned exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return out;
}

BigInt factorial(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInt gauss_irreducible_count(std::uint64_t q, unsigned i) {
    if (i == 0) throw DomainError("degree must be positive");
    require_prime_power(q);
    BigInt sum = 0;
    for (unsigned d = 1; d <= i; ++d) {
        if (i % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        BigInt term = power(q, i / d);
        if (mu > 0)
            sum += term;
        else
            sum -= term;
    }
    BigInt count, rem;
    mpz_tdiv_qr_ui(count.get_mpz_t(), rem.get_mpz_t(), sum.get_mpz_t(), i);
    if (rem != 0) throw InternalInconsistency("irreducible count not divisible by the degree");
    return count;
}

BigInt multiset_irreducible_count(std::uint64_t q, unsigned i, std::uint64_t a) {
    if (a == 0) return 1;
    BigInt pi = gauss_irreducible_count(q, i);
    return binomial(pi + static_cast<unsigned long>(a) - 1, a);
}

bool check_pi_bounds(std::uint64_t q, unsigned i) {
    if (i == 0) throw DomainError("degree must be positive");
    BigInt upper = power(q, i);
    BigInt lower = upper - 2 * power(q, i / 2);
    BigInt i_pi = gauss_irreducible_count(q, i) * i;
    return upper >= i_pi && i_pi >= lower;
}

BernoulliBound bernoulli_product_bound(std::span<const Rational> xs) {
    Rational product = 1;
    Rational sum = 0;
    for (const auto& x : xs) {
        if (x < 0 || x > 1) throw OutOfRange("bernoulli_product_bound needs inputs in [0,1]");
        product *= Rational(1) - x;
        sum += x;
    }
    BernoulliBound out{Rational(0), Rational(1) - product, sum};
    if (out.value < out.lower || out.value > out.upper)
        throw InternalInconsistency("Bernoulli-type inequality failed");
    return out;
}

}  // namespace cyclefield

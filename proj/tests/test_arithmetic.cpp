#include <doctest.h>

#include "cyclefield/arithmetic.hpp"
#include "cyclefield/errors.hpp"
#include "cyclefield/rng.hpp"

using namespace cyclefield;

TEST_CASE("rationals are canonical and print as num/den") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(1, -2) == make_rational(-1, 2));
    CHECK(rational_string(make_rational(3, 8)) == "3/8");
    CHECK(rational_string(Rational(0)) == "0/1");
    CHECK(rational_string(make_rational(-1, 3)) == "-1/3");
    CHECK(rational_from_string("3/8") == make_rational(3, 8));
    CHECK(rational_from_string("7") == Rational(7));
    CHECK_THROWS_AS(make_rational(1, 0), DivisionByZero);
    CHECK_THROWS_AS(rational_from_string("x/3"), DomainError);
}

TEST_CASE("rational arithmetic is exact") {
    SubstreamRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        long a = static_cast<long>(rng.uniform_below(2001)) - 1000;
        long c = static_cast<long>(rng.uniform_below(2001)) - 1000;
        long b = static_cast<long>(rng.uniform_below(999)) + 1;
        long d = static_cast<long>(rng.uniform_below(999)) + 1;
        Rational sum = make_rational(a, b) + make_rational(c, d);
        CHECK(sum * Rational(b * d) == Rational(a * d + c * b));
    }
}

TEST_CASE("mobius values") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
}

TEST_CASE("mobius sums over divisors vanish") {
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        long sum = 0;
        for (std::uint64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            sum += mobius(d);
            if (d != n / d) sum += mobius(n / d);
        }
        REQUIRE(sum == 0);
    }
}

TEST_CASE("prime power decomposition") {
    CHECK_FALSE(as_prime_power(0).has_value());
    CHECK_FALSE(as_prime_power(1).has_value());
    CHECK_FALSE(as_prime_power(6).has_value());
    CHECK_FALSE(as_prime_power(12).has_value());
    auto pp = as_prime_power(8);
    REQUIRE(pp.has_value());
    CHECK(pp->p == 2);
    CHECK(pp->k == 3);
    pp = as_prime_power(25);
    REQUIRE(pp.has_value());
    CHECK(pp->p == 5);
    CHECK(pp->k == 2);
    CHECK(as_prime_power(7)->k == 1);
    CHECK_THROWS_AS(require_prime_power(1), DomainError);
    CHECK_THROWS_AS(require_prime_power(10), DomainError);
}

TEST_CASE("Gauss irreducible counts over F_2") {
    // i*pi = sum over divisors; frozen small values checked by hand:
    // i=1: 2; i=2: (4-2)/2 = 1; i=3: (8-2)/3 = 2; i=4: (16-4)/4 = 3;
    // i=5: (32-2)/5 = 6; i=6: (64-8-4+2)/6 = 9.
    const long expected[] = {2, 1, 2, 3, 6, 9};
    for (unsigned i = 1; i <= 6; ++i) {
        CHECK(gauss_irreducible_count(2, i) == expected[i - 1]);
    }
    CHECK(gauss_irreducible_count(5, 3) == 40);
    CHECK_THROWS_AS(gauss_irreducible_count(6, 2), DomainError);
}

TEST_CASE("multisets of irreducibles") {
    // Two monic linears over F_2 give three multisets of size two.
    CHECK(multiset_irreducible_count(2, 1, 2) == 3);
    CHECK(multiset_irreducible_count(2, 2, 2) == 1);
    CHECK(multiset_irreducible_count(7, 3, 0) == 1);
}

TEST_CASE("pi bounds hold on small inputs") {
    CHECK(check_pi_bounds(2, 1));
    CHECK(check_pi_bounds(2, 2));
    CHECK(check_pi_bounds(5, 3));
}

TEST_CASE("binomial edge cases") {
    CHECK(binomial(BigInt(5), 2) == 10);
    CHECK(binomial(BigInt(1), 2) == 0);  // fewer items than picks
    CHECK(binomial(BigInt(0), 0) == 1);
}

TEST_CASE("Bernoulli-type product bound") {
    CHECK_THROWS_AS(bernoulli_product_bound(std::vector<Rational>{Rational(2)}), OutOfRange);
    CHECK_THROWS_AS(bernoulli_product_bound(std::vector<Rational>{Rational(-1)}), OutOfRange);

    auto empty = bernoulli_product_bound(std::vector<Rational>{});
    CHECK(empty.lower == 0);
    CHECK(empty.value == 0);
    CHECK(empty.upper == 0);

    std::vector<Rational> halves{make_rational(1, 2), make_rational(1, 2)};
    auto mid = bernoulli_product_bound(halves);
    CHECK(mid.value == make_rational(3, 4));
    CHECK(mid.upper == 1);

    std::vector<Rational> one{Rational(1)};
    auto boundary = bernoulli_product_bound(one);
    CHECK(boundary.value == 1);
    CHECK(boundary.upper == 1);
}

TEST_CASE("Bernoulli bound as a property") {
    SubstreamRng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> xs;
        auto len = rng.uniform_below(6);
        for (std::uint64_t i = 0; i < len; ++i) {
            auto den = rng.uniform_below(20) + 1;
            auto num = rng.uniform_below(den + 1);
            xs.push_back(make_rational(num, den));
        }
        auto b = bernoulli_product_bound(xs);
        CHECK(b.lower <= b.value);
        CHECK(b.value <= b.upper);
    }
}

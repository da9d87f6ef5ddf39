#include <doctest.h>

#include <numeric>

#include "cyclefield/errors.hpp"
#include "cyclefield/measures.hpp"

using namespace cyclefield;

namespace {

Rational brute_force_derangement(unsigned n) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0u);
    std::uint64_t derangements = 0, total = 0;
    do {
        ++total;
        bool fixed = false;
        for (unsigned i = 0; i < n; ++i) {
            if (images[i] == i) {
                fixed = true;
                break;
            }
        }
        if (!fixed) ++derangements;
    } while (std::next_permutation(images.begin(), images.end()));
    return make_rational(derangements, total);
}

}  // namespace

TEST_CASE("cycle-type measure on pinned entries") {
    MeasureTable m3 = measure_sn(3);
    CHECK(m3.at(PartitionVector({0, 0, 1})) == make_rational(1, 3));
    CHECK(m3.at(PartitionVector({1, 1, 0})) == make_rational(1, 2));
    CHECK(m3.at(PartitionVector({3, 0, 0})) == make_rational(1, 6));
    CHECK(m3.total() == 1);

    MeasureTable m5 = measure_sn(5);
    CHECK(m5.at(PartitionVector({5, 0, 0, 0, 0})) == make_rational(1, 120));
    CHECK_THROWS_AS(measure_sn(0), DomainError);
}

TEST_CASE("factorization-type measure on pinned entries") {
    MeasureTable m = measure_poly(2, 2);
    CHECK(m.at(PartitionVector({0, 1})) == make_rational(1, 4));
    CHECK(m.at(PartitionVector({2, 0})) == make_rational(3, 4));

    MeasureTable m1 = measure_poly(2, 1);
    CHECK(m1.at(PartitionVector({1})) == 1);

    CHECK_THROWS_AS(measure_poly(6, 2), DomainError);
}

TEST_CASE("formula measure equals the brute-force measure on small grids") {
    struct Cell {
        std::uint64_t q;
        unsigned max_n;
    };
    for (Cell cell : {Cell{2, 8}, Cell{3, 5}, Cell{4, 4}, Cell{5, 3}}) {
        for (unsigned n = 1; n <= cell.max_n; ++n) {
            CAPTURE(cell.q);
            CAPTURE(n);
            MeasureTable formula = measure_poly(cell.q, n);
            MeasureTable brute = measure_poly_bruteforce(cell.q, n);
            REQUIRE(formula.size() == brute.size());
            for (std::size_t i = 0; i < formula.size(); ++i) {
                REQUIRE(formula.values[i] == brute.values[i]);
            }
        }
    }
    CHECK_THROWS_AS(measure_poly_bruteforce(2, 30), EnumerationTooLarge);
}

TEST_CASE("squarefree part on pinned entries and the pigeonhole zero") {
    PartitionMap sf = squarefree_submeasure(2, 2);
    CHECK(sf.at(PartitionVector({2, 0})) == make_rational(1, 4));
    CHECK(sf.at(PartitionVector({0, 1})) == make_rational(1, 4));

    // a_1 = 3 > pi_2(1) = 2: no squarefree polynomial has that type.
    PartitionMap sf3 = squarefree_submeasure(2, 3);
    CHECK(sf3.at(PartitionVector({3, 0, 0})) == 0);
}

TEST_CASE("measure decomposes into squarefree and non-squarefree parts") {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        for (unsigned n = 1; n <= 5; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            MeasureTable poly = measure_poly(q, n);
            PartitionMap sf = squarefree_submeasure(q, n);
            Rational tail = 0;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                Rational p2 = poly.values[i] - sf.values[i];
                REQUIRE(p2 >= 0);
                tail += p2;
            }
            Rational expected = n == 1 ? Rational(0) : make_rational(1, q);
            CHECK(tail == expected);
        }
    }
}

TEST_CASE("non-squarefree probability is 1/q") {
    CHECK(non_squarefree_probability(2, 2) == make_rational(1, 2));
    CHECK(non_squarefree_probability(3, 2) == make_rational(1, 3));
    CHECK(non_squarefree_probability(5, 1) == 0);
    CHECK(non_squarefree_probability(4, 3) == make_rational(1, 4));
}

TEST_CASE("derangement probability, inclusion-exclusion and brute force") {
    CHECK(derangement_probability(0) == 1);
    CHECK(derangement_probability(1) == 0);
    CHECK(derangement_probability(4) == make_rational(3, 8));
    for (unsigned n = 1; n <= 7; ++n) {
        CAPTURE(n);
        CHECK(derangement_probability(n) == brute_force_derangement(n));
    }
}

TEST_CASE("alternating tail: P_n sits within 1/(n+1)! of the limit bracket") {
    // P_m for even m decreases to 1/e, odd m increases; consecutive partial
    // sums bracket it, so |P_n - P_{n+1}| = 1/(n+1)! pins the remainder.
    for (unsigned n = 0; n <= 30; ++n) {
        Rational diff = abs(derangement_probability(n) - derangement_probability(n + 1));
        CHECK(diff == make_rational(1, factorial(n + 1)));
    }
}

TEST_CASE("rootless probability on pinned entries") {
    CHECK(rootless_probability(2, 3) == make_rational(1, 4));
    CHECK(rootless_probability(3, 3) == make_rational(8, 27));
    CHECK(rootless_probability(2, 1) == 0);
}

TEST_CASE("rootless probability equals ((q-1)/q)^q for n >= q") {
    struct Cell {
        std::uint64_t q;
        unsigned lo, hi;
    };
    for (Cell cell : {Cell{2, 2, 16}, Cell{3, 3, 10}, Cell{4, 4, 8}, Cell{5, 5, 7}}) {
        Rational expected =
            make_rational(power(cell.q - 1, static_cast<unsigned>(cell.q)),
                          power(cell.q, static_cast<unsigned>(cell.q)));
        for (unsigned n = cell.lo; n <= cell.hi; ++n) {
            CAPTURE(cell.q);
            CAPTURE(n);
            // The equality is also asserted inside the call itself.
            CHECK(rootless_probability(cell.q, n) == expected);
        }
    }
}

TEST_CASE("independence profile at q=2, n=2") {
    auto profile = independence_profile(2, 2);
    REQUIRE(profile.size() == 3);
    CHECK(profile[0].subset_size == 0);
    CHECK(profile[0].probability == 1);
    CHECK(profile[1].subset_count == 2);
    CHECK(profile[1].probability == make_rational(1, 2));
    CHECK(profile[2].probability == make_rational(1, 4));
}

TEST_CASE("independence refuses n < q") {
    CHECK_THROWS_AS(independence_profile(3, 2), AssumptionViolated);
    CHECK_THROWS_AS(independence_profile(4, 3), AssumptionViolated);
}

TEST_CASE("l1 distance on pinned cells") {
    CHECK(l1_distance(7, 1) == 0);
    CHECK(l1_distance(2, 1) == 0);
    CHECK(l1_distance(2, 2) == make_rational(1, 2));
}

TEST_CASE("l1 distance against the brute-force route") {
    for (std::uint64_t q : {2, 3}) {
        for (unsigned n = 2; n <= 6; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            MeasureTable sn = measure_sn(n);
            MeasureTable brute = measure_poly_bruteforce(q, n);
            Rational direct = 0;
            for (std::size_t i = 0; i < sn.size(); ++i) {
                direct += abs(sn.values[i] - brute.values[i]);
            }
            CHECK(direct == l1_distance(q, n));
        }
    }
}

TEST_CASE("derangement gap on pinned cells and the triangle chain") {
    CHECK(derangement_gap(5, 1) == 0);
    CHECK(derangement_gap(2, 3) == make_rational(1, 12));
    for (std::uint64_t q : {2, 3, 4}) {
        for (unsigned n = 2; n <= 8; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            MeasureComparison cm = compare_measures(q, n);
            CHECK(cm.gap <= cm.l1);
            CHECK(cm.l1 >= 0);
            CHECK(cm.l1 <= 2);
        }
    }
}

TEST_CASE("partition map lookups reject foreign partitions") {
    MeasureTable m = measure_sn(3);
    CHECK_THROWS_AS(m.at(PartitionVector({2, 0})), DomainError);
}

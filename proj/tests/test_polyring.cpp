#include <doctest.h>

#include <atomic>
#include <map>
#include <set>

#include "cyclefield/errors.hpp"
#include "cyclefield/parallel.hpp"
#include "cyclefield/polyring.hpp"
#include "cyclefield/rng.hpp"

using namespace cyclefield;

namespace {

// Trial-division oracle: f is reducible iff some monic divisor of degree
// 1..deg-1 divides it. Independent of the Frobenius-based test.
bool irreducible_by_trial_division(const Poly& f) {
    int n = f.degree();
    REQUIRE(n >= 1);
    for (int d = 1; d <= n / 2; ++d) {
        for (const Poly& g : enumerate_monic(f.field(), static_cast<unsigned>(d))) {
            if ((f % g).is_zero()) return false;
        }
    }
    return true;
}

Poly poly_of(const FieldPtr& field, std::vector<std::uint32_t> coeffs) {
    return Poly(field, std::move(coeffs));
}

}  // namespace

TEST_CASE("evaluation by Horner") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    Poly f = Poly::from_string("2^1:1,1,1");  // X^2+X+1
    CHECK(evaluate(f, FieldElement(f2, 0)).code() == 1);
    Poly g = Poly::from_string("2^1:0,1,1");  // X^2+X
    CHECK(evaluate(g, FieldElement(f2, 1)).code() == 0);

    FieldPtr f3 = FieldSpec::make(3, 1);
    Poly x = Poly::x(f3);
    CHECK(evaluate(x, FieldElement(f3, 2)).code() == 2);

    CHECK_THROWS_AS(evaluate(f, FieldElement(f3, 1)), MixedFields);
}

TEST_CASE("text format round trip") {
    Poly f = Poly::from_string("2^1:1,1,1");
    CHECK(f.degree() == 2);
    CHECK(f.to_string() == "2^1:1,1,1");
    CHECK(Poly::from_string("3^1:2,0,1").to_string() == "3^1:2,0,1");
    CHECK(Poly::from_string(f.to_string()) == f);
    CHECK_THROWS_AS(Poly::from_string("2^1:7"), DomainError);
    CHECK_THROWS_AS(Poly::from_string("1,1,1"), DomainError);
}

TEST_CASE("division and gcd behave like a Euclidean domain") {
    FieldPtr f9 = FieldSpec::make(3, 2);
    SubstreamRng rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint32_t> ca(rng.uniform_below(6) + 1), cb(rng.uniform_below(5) + 1);
        for (auto& c : ca) c = static_cast<std::uint32_t>(rng.uniform_below(9));
        for (auto& c : cb) c = static_cast<std::uint32_t>(rng.uniform_below(9));
        Poly a = poly_of(f9, ca), b = poly_of(f9, cb);
        if (b.is_zero()) continue;
        auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
        Poly g = gcd(a, b);
        if (!g.is_zero()) {
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
            CHECK(g.is_monic());
        }
    }
    CHECK_THROWS_AS(divmod(Poly::one(f9), Poly::zero(f9)), DivisionByZero);
}

TEST_CASE("Lagrange interpolation on pinned points") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    std::vector<std::pair<FieldElement, FieldElement>> pts{
        {FieldElement(f2, 0), FieldElement(f2, 1)},
        {FieldElement(f2, 1), FieldElement(f2, 0)},
    };
    CHECK(lagrange_interpolate(pts) == Poly::from_string("2^1:1,1"));  // X+1

    FieldPtr f7 = FieldSpec::make(7, 1);
    std::vector<std::pair<FieldElement, FieldElement>> single{
        {FieldElement(f7, 0), FieldElement(f7, 5)}};
    CHECK(lagrange_interpolate(single) == Poly::from_string("7^1:5"));

    FieldPtr f3 = FieldSpec::make(3, 1);
    std::vector<std::pair<FieldElement, FieldElement>> diag;
    for (std::uint32_t c = 0; c < 3; ++c)
        diag.emplace_back(FieldElement(f3, c), FieldElement(f3, c));
    CHECK(lagrange_interpolate(diag) == Poly::x(f3));

    std::vector<std::pair<FieldElement, FieldElement>> dup{
        {FieldElement(f2, 0), FieldElement(f2, 1)},
        {FieldElement(f2, 0), FieldElement(f2, 0)},
    };
    CHECK_THROWS_AS(lagrange_interpolate(dup), DuplicateAbscissa);
}

TEST_CASE("the interpolant is the unique low-degree polynomial through the points") {
    // Enumerate every polynomial of degree < #S over the field and count the
    // ones matching the prescribed values; exactly one must match.
    for (const char* name : {"2^1", "3^1", "2^2"}) {
        CAPTURE(name);
        FieldPtr field = FieldSpec::parse(name);
        std::uint64_t q = field->size();
        SubstreamRng rng(7 + q);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t s = 1 + rng.uniform_below(std::min<std::uint64_t>(q, 3));
            // distinct abscissae
            std::vector<std::uint32_t> xs;
            while (xs.size() < s) {
                auto x = static_cast<std::uint32_t>(rng.uniform_below(q));
                if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
            }
            std::vector<std::pair<FieldElement, FieldElement>> pts;
            for (auto x : xs)
                pts.emplace_back(FieldElement(field, x),
                                 FieldElement(field, static_cast<std::uint32_t>(
                                                         rng.uniform_below(q))));
            Poly g = lagrange_interpolate(pts);
            CHECK(g.degree() < static_cast<int>(s));
            for (const auto& [x, y] : pts) CHECK(evaluate(g, x) == y);

            std::uint64_t matches = 0;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < s; ++i) total *= q;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                std::vector<std::uint32_t> coeffs(s);
                std::uint64_t rest = idx;
                for (std::size_t i = 0; i < s; ++i) {
                    coeffs[i] = static_cast<std::uint32_t>(rest % q);
                    rest /= q;
                }
                Poly cand = poly_of(field, std::move(coeffs));
                bool hit = true;
                for (const auto& [x, y] : pts) {
                    if (!(evaluate(cand, x) == y)) {
                        hit = false;
                        break;
                    }
                }
                if (hit) {
                    ++matches;
                    CHECK(cand == g);
                }
            }
            CHECK(matches == 1);
        }
    }
}

TEST_CASE("monic polynomials through prescribed points") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    std::vector<std::pair<FieldElement, FieldElement>> s1{
        {FieldElement(f2, 0), FieldElement(f2, 1)}};
    CHECK(count_through_points(f2, 2, s1) == 2);
    CHECK(count_through_points(f2, 3, {}) == 8);

    FieldPtr f3 = FieldSpec::make(3, 1);
    std::vector<std::pair<FieldElement, FieldElement>> s2{
        {FieldElement(f3, 0), FieldElement(f3, 1)},
        {FieldElement(f3, 1), FieldElement(f3, 2)},
    };
    CHECK(count_through_points(f3, 2, s2) == 1);
    CHECK_THROWS_AS(count_through_points(f3, 1, s2), DegreeTooSmall);
}

TEST_CASE("irreducibility on pinned examples") {
    CHECK(is_irreducible(Poly::from_string("2^1:1,1,1")));        // X^2+X+1
    CHECK_FALSE(is_irreducible(Poly::from_string("2^1:0,1,1")));  // X(X+1)
    CHECK_FALSE(is_irreducible(Poly::from_string("2^1:1,0,1")));  // (X+1)^2
    CHECK_THROWS_AS(is_irreducible(Poly::one(FieldSpec::make(2, 1))), ZeroDegree);
}

TEST_CASE("irreducibility agrees with trial division exhaustively") {
    struct Grid {
        const char* field;
        unsigned max_degree;
    };
    for (Grid grid : {Grid{"2^1", 6}, Grid{"3^1", 4}, Grid{"2^2", 4}, Grid{"5^1", 3}}) {
        CAPTURE(grid.field);
        FieldPtr field = FieldSpec::parse(grid.field);
        for (unsigned n = 1; n <= grid.max_degree; ++n) {
            for (const Poly& f : enumerate_monic(field, n)) {
                REQUIRE(is_irreducible(f) == irreducible_by_trial_division(f));
            }
        }
    }
}

TEST_CASE("factor on pinned examples") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    Factorization a = factor(Poly::from_string("2^1:0,1,1"), 1);  // X^2+X
    REQUIRE(a.factors.size() == 2);
    CHECK(a.factors[0].first == Poly::from_string("2^1:0,1"));
    CHECK(a.factors[0].second == 1);
    CHECK(a.factors[1].first == Poly::from_string("2^1:1,1"));
    CHECK(a.factors[1].second == 1);

    Factorization b = factor(Poly::from_string("3^1:0,0,1"), 1);  // X^2 over F_3
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0].first == Poly::from_string("3^1:0,1"));
    CHECK(b.factors[0].second == 2);

    // X^4+X^2+1 = (X^2+X+1)^2 over F_2; multiply back to confirm.
    Poly f = Poly::from_string("2^1:1,0,1,0,1");
    Factorization c = factor(f, 1);
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0].first == Poly::from_string("2^1:1,1,1"));
    CHECK(c.factors[0].second == 2);
    CHECK(c.product() == f);

    CHECK_THROWS_AS(factor(Poly::one(f2), 1), ZeroDegree);
}

TEST_CASE("factorization round-trips over exhaustive small grids") {
    struct Grid {
        const char* field;
        unsigned max_degree;
    };
    // Degree 8 over F_2/F_3/F_5 per the module contract; F_4 exercises the
    // p-th-root path inside an extension field.
    for (Grid grid : {Grid{"2^1", 8}, Grid{"3^1", 8}, Grid{"5^1", 8}, Grid{"2^2", 6}}) {
        CAPTURE(grid.field);
        FieldPtr field = FieldSpec::parse(grid.field);
        for (unsigned n = 1; n <= grid.max_degree; ++n) {
            std::uint64_t total = 1;
            for (unsigned i = 0; i < n; ++i) total *= field->size();
            std::atomic<std::uint64_t> failures{0};
            unsigned workers = default_workers();
            parallel_ranges(total, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                std::vector<std::uint32_t> type;
                FactorizationTypeScanner scanner(field);
                for (std::uint64_t idx = begin; idx < end; ++idx) {
                    Poly f = monic_at(field, n, idx);
                    Factorization fac = factor(f, /*seed=*/idx);
                    bool ok = fac.product() == f;
                    // every factor irreducible, sorted, and consistent with
                    // both the type extractor and the squarefree test
                    std::vector<std::uint32_t> from_factors(n, 0);
                    bool all_single = true;
                    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
                        const auto& [g, m] = fac.factors[i];
                        ok = ok && is_irreducible(g);
                        if (i > 0) ok = ok && !(fac.factors[i].first < fac.factors[i - 1].first);
                        from_factors[g.degree() - 1] += m;
                        if (m != 1) all_single = false;
                    }
                    scanner.type_of(f.coeffs().subspan(0, n), type);
                    ok = ok && std::equal(type.begin(), type.end(), from_factors.begin());
                    ok = ok && (is_squarefree(f) == all_single);
                    if (!ok) ++failures;
                }
            });
            REQUIRE(failures.load() == 0);
        }
    }
}

TEST_CASE("factorization round-trips over a large prime field") {
    // No lookup tables at q = 1009; exercises the generic arithmetic and the
    // odd-characteristic equal-degree split with big exponents.
    FieldPtr f = FieldSpec::parse("1009");
    SubstreamRng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::uint32_t> lower(1 + rng.uniform_below(5));
        for (auto& c : lower) c = static_cast<std::uint32_t>(rng.uniform_below(1009));
        Poly poly = Poly::monic_with_lower(f, lower);
        Factorization fac = factor(poly, trial);
        CHECK(fac.product() == poly);
        for (const auto& [g, m] : fac.factors) {
            CHECK(is_irreducible(g));
            CHECK(m >= 1);
        }
    }
    // A forced repeated factor: (X - 3)^2 (X - 5).
    Poly a(f, {1006, 1});  // X - 3
    Poly b(f, {1004, 1});  // X - 5
    Poly prod = a * a * b;
    Factorization fac = factor(prod, 9);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.product() == prod);
}

TEST_CASE("factorization types on pinned examples") {
    auto type_str = [](const Poly& f) { return factorization_type(f).to_string(); };
    CHECK(type_str(Poly::from_string("2^1:0,1,1")) == "[2,0]");
    CHECK(type_str(Poly::from_string("2^1:1,1,1")) == "[0,1]");
    // X^3+X = X(X+1)^2 over F_2: three linear factors with multiplicity.
    CHECK(type_str(Poly::from_string("2^1:0,1,0,1")) == "[3,0,0]");
}

TEST_CASE("squarefree detection") {
    CHECK(is_squarefree(Poly::from_string("2^1:0,1,1")));
    CHECK_FALSE(is_squarefree(Poly::from_string("2^1:0,0,1")));
    // X^3 over F_3 has derivative zero; the p-th power branch must say no.
    CHECK_FALSE(is_squarefree(Poly::from_string("3^1:0,0,0,1")));
}

TEST_CASE("monic enumeration order and bounds") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    auto linear = enumerate_monic(f2, 1);
    REQUIRE(linear.size() == 2);
    CHECK(linear[0] == Poly::x(f2));                      // X first
    CHECK(linear[1] == Poly::from_string("2^1:1,1"));     // then X+1

    auto quadratics = enumerate_monic(f2, 2);
    CHECK(quadratics.size() == 4);
    std::set<std::string> seen;
    for (const auto& f : quadratics) seen.insert(f.to_string());
    CHECK(seen.size() == 4);

    FieldPtr f3 = FieldSpec::make(3, 1);
    CHECK(enumerate_monic(f3, 2).size() == 9);

    CHECK_THROWS_AS(enumerate_monic(f2, 30), EnumerationTooLarge);
    CHECK_THROWS_AS(enumerate_monic(f2, 5, /*cap=*/16), EnumerationTooLarge);
}

TEST_CASE("scan_monic agrees with monic_at and is worker-count independent") {
    FieldPtr f3 = FieldSpec::make(3, 1);
    unsigned degree = 4;
    for (unsigned workers : {1u, 2u, 3u}) {
        std::vector<std::string> seen(81);
        scan_monic(f3, degree, enumeration_cap(), workers,
                   [&](unsigned, std::uint64_t idx, std::span<const std::uint32_t> lower) {
                       seen[idx] = Poly::monic_with_lower(f3, lower).to_string();
                   });
        for (std::uint64_t idx = 0; idx < 81; ++idx) {
            CHECK(seen[idx] == monic_at(f3, degree, idx).to_string());
        }
    }
}

TEST_CASE("incremental point values match direct evaluation") {
    for (const char* name : {"2^1", "3^1", "2^2", "5^1"}) {
        CAPTURE(name);
        FieldPtr field = FieldSpec::parse(name);
        std::uint64_t q = field->size();
        unsigned degree = 3;
        std::uint64_t total = 1;
        for (unsigned i = 0; i < degree; ++i) total *= q;
        std::vector<std::vector<std::uint32_t>> got(total);
        scan_point_values(field, degree, enumeration_cap(), 2,
                          [&](unsigned, std::uint64_t idx, std::span<const std::uint32_t> vals) {
                              got[idx].assign(vals.begin(), vals.end());
                          });
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly f = monic_at(field, degree, idx);
            for (std::uint64_t c = 0; c < q; ++c) {
                CHECK(evaluate(f, FieldElement(field, static_cast<std::uint32_t>(c))).code() ==
                      got[idx][c]);
            }
        }
    }
}

TEST_CASE("exhaustive counts: rootless and squarefree against direct loops") {
    FieldPtr f2 = FieldSpec::make(2, 1);
    // Direct oracle over the 8 monic cubics: evaluate everywhere.
    std::uint64_t direct = 0;
    std::vector<std::string> rootless_polys;
    for (const Poly& f : enumerate_monic(f2, 3)) {
        bool hit = true;
        for (std::uint32_t c = 0; c < 2; ++c) {
            if (evaluate(f, FieldElement(f2, c)).is_zero()) hit = false;
        }
        if (hit) {
            ++direct;
            rootless_polys.push_back(f.to_string());
        }
    }
    CHECK(direct == 2);
    CHECK(rootless_polys ==
          std::vector<std::string>{"2^1:1,0,1,1", "2^1:1,1,0,1"});  // X^3+X^2+1, X^3+X+1
    CHECK(count_rootless_exhaustive(f2, 3) == 2);

    FieldPtr f3 = FieldSpec::make(3, 1);
    std::uint64_t direct3 = 0;
    for (const Poly& f : enumerate_monic(f3, 2)) {
        if (is_squarefree(f)) ++direct3;
    }
    CHECK(count_squarefree_exhaustive(f3, 2) == direct3);
    CHECK(direct3 == 6);  // 9 total minus the 3 squares of linears
}

TEST_CASE("exhaustive irreducible counts match the Gauss formula") {
    struct Grid {
        const char* field;
        unsigned max_degree;
    };
    for (Grid grid : {Grid{"2^1", 10}, Grid{"3^1", 7}, Grid{"2^2", 5}, Grid{"5^1", 5}}) {
        CAPTURE(grid.field);
        FieldPtr field = FieldSpec::parse(grid.field);
        for (unsigned i = 1; i <= grid.max_degree; ++i) {
            CHECK(BigInt(static_cast<unsigned long>(count_irreducible_exhaustive(field, i))) ==
                  gauss_irreducible_count(field->size(), i));
        }
    }
}

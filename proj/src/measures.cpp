#include "cyclefield/measures.hpp"

#include <algorithm>

#include "cyclefield/errors.hpp"
#include "cyclefield/parallel.hpp"

namespace cyclefield {

namespace {

std::shared_ptr<const std::vector<PartitionVector>> shared_support(unsigned n) {
    return std::make_shared<const std::vector<PartitionVector>>(enumerate_partitions(n));
}

void verify_probability_measure(const PartitionMap& table, const char* what) {
    Rational sum = 0;
    for (const auto& v : table.values) {
        if (v < 0) throw InternalInconsistency(std::string(what) + ": negative mass");
        sum += v;
    }
    if (sum != 1) throw InternalInconsistency(std::string(what) + ": total mass is not 1");
}

// prod_k k^(a_k) * a_k!
BigInt cycle_type_denominator(std::span<const std::uint32_t> a) {
    BigInt den = 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0) continue;
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(k + 1), a[k]);
        den *= p * factorial(a[k]);
    }
    return den;
}

}  // namespace

const Rational& PartitionMap::at(const PartitionVector& a) const {
    auto it = std::lower_bound(support->begin(), support->end(), a);
    if (it == support->end() || !(*it == a))
        throw DomainError("partition " + a.to_string() + " is not in a table over Omega(" +
                          std::to_string(n) + ")");
    return values[static_cast<std::size_t>(it - support->begin())];
}

Rational PartitionMap::total() const {
    Rational sum = 0;
    for (const auto& v : values) sum += v;
    return sum;
}

MeasureTable measure_sn(unsigned n) {
    if (n == 0) throw DomainError("measure needs n >= 1");
    MeasureTable table;
    table.n = n;
    table.support = shared_support(n);
    table.values.reserve(table.support->size());
    for (const auto& a : *table.support) {
        table.values.push_back(make_rational(1, cycle_type_denominator(a.counts())));
    }
    verify_probability_measure(table, "measure_sn");
    return table;
}

MeasureTable measure_poly(std::uint64_t q, unsigned n) {
    if (n == 0) throw DomainError("measure needs n >= 1");
    require_prime_power(q);
    std::vector<BigInt> pi(n + 1);
    for (unsigned i = 1; i <= n; ++i) pi[i] = gauss_irreducible_count(q, i);
    BigInt qn = power(q, n);

    MeasureTable table;
    table.n = n;
    table.support = shared_support(n);
    table.values.reserve(table.support->size());
    for (const auto& a : *table.support) {
        auto counts = a.counts();
        BigInt num = 1;
        for (unsigned i = 1; i <= n; ++i) {
            std::uint32_t ai = counts[i - 1];
            if (ai == 0) continue;
            num *= binomial(pi[i] + static_cast<unsigned long>(ai) - 1, ai);
        }
        Rational value = make_rational(num, qn);

        // Same entry through the falling-product form; the two published
        // shapes of the measure must agree as exact rationals.
        BigInt num2 = 1;
        for (unsigned i = 1; i <= n; ++i) {
            std::uint32_t ai = counts[i - 1];
            for (std::uint32_t j = 0; j < ai; ++j) {
                num2 *= (pi[i] + j) * i;
            }
        }
        BigInt den2 = cycle_type_denominator(counts) * qn;
        if (make_rational(num2, den2) != value)
            throw InternalInconsistency("the two forms of the polynomial measure disagree");

        table.values.push_back(std::move(value));
    }
    verify_probability_measure(table, "measure_poly");
    return table;
}

MeasureTable measure_poly_bruteforce(std::uint64_t q, unsigned n, std::uint64_t cap,
                                     unsigned workers) {
    if (n == 0) throw DomainError("measure needs n >= 1");
    PrimePower pp = require_prime_power(q);
    if (!within_cap(q, n, cap)) throw EnumerationTooLarge("q^n exceeds the enumeration cap");
    FieldPtr field = FieldSpec::make(pp.p, pp.k);

    MeasureTable table;
    table.n = n;
    table.support = shared_support(n);
    const auto& support = *table.support;

    unsigned used = workers ? workers : default_workers();
    std::vector<std::vector<std::uint64_t>> counts(
        used, std::vector<std::uint64_t>(support.size(), 0));
    std::vector<FactorizationTypeScanner> scanners;
    scanners.reserve(used);
    for (unsigned w = 0; w < used; ++w) scanners.emplace_back(field);
    std::vector<std::vector<std::uint32_t>> types(used);

    scan_monic(field, n, cap, used,
               [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> lower) {
                   scanners[w].type_of(lower, types[w]);
                   ++counts[w][partition_index(support, types[w])];
               });

    BigInt qn = power(q, n);
    BigInt seen = 0;
    table.values.reserve(support.size());
    for (std::size_t idx = 0; idx < support.size(); ++idx) {
        std::uint64_t c = 0;
        for (unsigned w = 0; w < used; ++w) c += counts[w][idx];
        seen += static_cast<unsigned long>(c);
        table.values.push_back(make_rational(BigInt(static_cast<unsigned long>(c)), qn));
    }
    if (seen != qn) throw InternalInconsistency("bruteforce histogram does not cover q^n");
    verify_probability_measure(table, "measure_poly_bruteforce");
    return table;
}

PartitionMap squarefree_submeasure(std::uint64_t q, unsigned n) {
    MeasureTable poly = measure_poly(q, n);
    std::vector<BigInt> pi(n + 1);
    for (unsigned i = 1; i <= n; ++i) pi[i] = gauss_irreducible_count(q, i);
    BigInt qn = power(q, n);

    PartitionMap out;
    out.n = n;
    out.support = poly.support;
    out.values.reserve(poly.size());
    Rational sum = 0;
    for (std::size_t idx = 0; idx < poly.size(); ++idx) {
        auto counts = (*out.support)[idx].counts();
        BigInt num = 1;
        for (unsigned i = 1; i <= n; ++i) {
            std::uint32_t ai = counts[i - 1];
            if (ai == 0) continue;
            num *= binomial(pi[i], ai);  // zero as soon as a_i > pi_q(i)
        }
        Rational value = make_rational(num, qn);
        if (value < 0 || value > poly.values[idx])
            throw InternalInconsistency("squarefree part exceeds the full measure");
        sum += value;
        out.values.push_back(std::move(value));
    }
    Rational expected = n == 1 ? Rational(1) : Rational(1) - make_rational(1, BigInt(static_cast<unsigned long>(q)));
    if (sum != expected)
        throw InternalInconsistency("squarefree mass is not 1 - 1/q");
    return out;
}

Rational non_squarefree_probability(std::uint64_t q, unsigned n, std::uint64_t cap) {
    if (n == 0) throw DomainError("needs n >= 1");
    PrimePower pp = require_prime_power(q);
    Rational value =
        n == 1 ? Rational(0) : make_rational(1, BigInt(static_cast<unsigned long>(q)));
    if (within_cap(q, n, cap) && q <= FieldSpec::kMaxCardinality) {
        FieldPtr field = FieldSpec::make(pp.p, pp.k);
        std::uint64_t squarefree = count_squarefree_exhaustive(field, n, cap);
        BigInt qn = power(q, n);
        Rational measured = make_rational(qn - static_cast<unsigned long>(squarefree), qn);
        if (measured != value)
            throw InternalInconsistency("non-squarefree fraction is not 1/q");
    }
    return value;
}

Rational derangement_probability(unsigned n) {
    Rational value = 0;
    BigInt fact = 1;
    for (unsigned i = 0; i <= n; ++i) {
        if (i > 0) fact *= i;
        Rational term = make_rational(1, fact);
        if (i % 2 == 0)
            value += term;
        else
            value -= term;
    }
    if (n >= 1) {
        // The same number as the mass of {a_1 = 0} under the cycle-type
        // distribution, summed directly over fixed-point-free types.
        Rational mass = 0;
        for_each_partition(n, [&](std::span<const std::uint32_t> a) {
            if (a[0] != 0) return;
            mass += make_rational(1, cycle_type_denominator(a));
        });
        if (mass != value)
            throw InternalInconsistency("inclusion-exclusion disagrees with the cycle-type mass");
    }
    return value;
}

Rational rootless_probability(std::uint64_t q, unsigned n, std::uint64_t cap) {
    if (n == 0) throw DomainError("needs n >= 1");
    MeasureTable poly = measure_poly(q, n);
    Rational value = 0;
    const auto& support = *poly.support;
    for (std::size_t idx = 0; idx < poly.size(); ++idx) {
        if (support[idx].counts()[0] == 0) value += poly.values[idx];
    }
    if (n >= q) {
        Rational product = make_rational(power(q - 1, static_cast<unsigned>(q)),
                                         power(q, static_cast<unsigned>(q)));
        if (value != product)
            throw IdentityError("rootless probability differs from ((q-1)/q)^q");
    }
    if (within_cap(q, n, cap) && q <= FieldSpec::kMaxCardinality) {
        PrimePower pp = require_prime_power(q);
        FieldPtr field = FieldSpec::make(pp.p, pp.k);
        std::uint64_t rootless = count_rootless_exhaustive(field, n, cap);
        if (make_rational(BigInt(static_cast<unsigned long>(rootless)), power(q, n)) != value)
            throw IdentityError("rootless probability differs from the exhaustive count");
    }
    return value;
}

std::vector<IndependenceLevel> independence_profile(std::uint64_t q, unsigned n, std::uint64_t cap,
                                                    unsigned workers) {
    if (n < q)
        throw AssumptionViolated("independence argument needs n >= q (got n = " +
                                 std::to_string(n) + ", q = " + std::to_string(q) + ")");
    PrimePower pp = require_prime_power(q);
    if (!within_cap(q, n, cap)) throw EnumerationTooLarge("q^n exceeds the enumeration cap");
    FieldPtr field = FieldSpec::make(pp.p, pp.k);

    unsigned used = workers ? workers : default_workers();
    std::size_t masks = std::size_t{1} << q;
    std::vector<std::vector<std::uint64_t>> counts(used, std::vector<std::uint64_t>(masks, 0));
    scan_point_values(field, n, cap, used,
                      [&](unsigned w, std::uint64_t, std::span<const std::uint32_t> vals) {
                          std::uint64_t root_mask = 0;
                          for (std::uint64_t c = 0; c < q; ++c) {
                              if (vals[c] == 0) root_mask |= std::uint64_t{1} << c;
                          }
                          ++counts[w][root_mask];
                      });
    std::vector<std::uint64_t> by_mask(masks, 0);
    for (unsigned w = 0; w < used; ++w) {
        for (std::size_t m = 0; m < masks; ++m) by_mask[m] += counts[w][m];
    }
    // Subset sums: zeta transform, then the polynomials avoiding roots on S
    // are those whose root mask lies inside the complement of S.
    std::vector<std::uint64_t> inside(by_mask);
    for (std::uint64_t bit = 0; bit < q; ++bit) {
        for (std::size_t m = 0; m < masks; ++m) {
            if (m & (std::size_t{1} << bit)) inside[m] += inside[m ^ (std::size_t{1} << bit)];
        }
    }
    for (std::size_t subset = 0; subset < masks; ++subset) {
        unsigned s = static_cast<unsigned>(__builtin_popcountll(subset));
        std::uint64_t good = inside[(masks - 1) ^ subset];
        BigInt expected = power(q - 1, s) * power(q, n - s);
        if (BigInt(static_cast<unsigned long>(good)) != expected)
            throw IdentityError("joint root-avoidance probability is not ((q-1)/q)^|S|");
    }
    std::vector<IndependenceLevel> profile;
    for (unsigned s = 0; s <= q; ++s) {
        IndependenceLevel level;
        level.subset_size = s;
        level.subset_count = static_cast<std::uint64_t>(mpz_get_ui(binomial(BigInt(static_cast<unsigned long>(q)), s).get_mpz_t()));
        level.probability = make_rational(power(q - 1, s), power(q, s));
        profile.push_back(std::move(level));
    }
    return profile;
}

MeasureComparison compare_measures(const MeasureTable& sn, const MeasureTable& poly,
                                   std::uint64_t q) {
    if (sn.n != poly.n || sn.size() != poly.size())
        throw DomainError("measure tables over different spaces");
    MeasureComparison out;
    out.q = q;
    out.n = sn.n;
    out.l1 = 0;
    out.derangement = 0;
    out.rootless = 0;
    const auto& support = *sn.support;
    for (std::size_t idx = 0; idx < sn.size(); ++idx) {
        Rational diff = sn.values[idx] - poly.values[idx];
        out.l1 += abs(diff);
        if (support[idx].counts()[0] == 0) {
            out.derangement += sn.values[idx];
            out.rootless += poly.values[idx];
        }
    }
    out.gap = abs(out.derangement - out.rootless);
    if (out.l1 < 0 || out.l1 > 2)
        throw InternalInconsistency("l1 distance escaped [0, 2]");
    if (out.gap > out.l1)
        throw IdentityError("derangement gap exceeds the l1 distance");
    return out;
}

MeasureComparison compare_measures(std::uint64_t q, unsigned n) {
    MeasureTable sn = measure_sn(n);
    MeasureTable poly = measure_poly(q, n);
    return compare_measures(sn, poly, q);
}

Rational l1_distance(std::uint64_t q, unsigned n) { return compare_measures(q, n).l1; }

Rational derangement_gap(std::uint64_t q, unsigned n) { return compare_measures(q, n).gap; }

}  // namespace cyclefield

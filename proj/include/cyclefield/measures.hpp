#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cyclefield/arithmetic.hpp"
#include "cyclefield/partitions.hpp"
#include "cyclefield/polyring.hpp"

namespace cyclefield {

/// Exact rational values attached to the partition space Omega(n). The
/// support is always the full space in enumeration order, shared between
/// tables of the same n.
struct PartitionMap {
    unsigned n = 0;
    std::shared_ptr<const std::vector<PartitionVector>> support;
    std::vector<Rational> values;

    std::size_t size() const { return values.size(); }
    const Rational& at(const PartitionVector& a) const;
    Rational total() const;
};

/// A PartitionMap that is a probability measure: nonnegative values summing
/// to exactly 1 (verified by every builder that returns one).
using MeasureTable = PartitionMap;

/// Cycle-type distribution of a uniform permutation:
/// P(a) = prod_k 1 / (k^(a_k) * a_k!).
MeasureTable measure_sn(unsigned n);

/// Factorization-type distribution of a uniform monic polynomial:
/// P(a) = prod_i pi_q(i, a_i) / q^n. Every entry is additionally recomputed
/// through the equivalent falling-product form and the two must agree
/// exactly.
MeasureTable measure_poly(std::uint64_t q, unsigned n);

/// Same distribution obtained by factoring all q^n monic polynomials.
MeasureTable measure_poly_bruteforce(std::uint64_t q, unsigned n,
                                     std::uint64_t cap = enumeration_cap(), unsigned workers = 0);

/// Squarefree contribution p_{a,1} = prod_i binom(pi_q(i), a_i) / q^n. Not a
/// probability measure: the total is 1 - 1/q for n >= 2 (verified), and
/// 0 <= p_{a,1} <= P(a) holds entrywise against measure_poly.
PartitionMap squarefree_submeasure(std::uint64_t q, unsigned n);

/// 1/q for n >= 2 and 0 for n = 1, cross-checked by exhaustive counting
/// whenever q^n fits under the cap.
Rational non_squarefree_probability(std::uint64_t q, unsigned n,
                                    std::uint64_t cap = enumeration_cap());

/// P_n = sum_{i=0..n} (-1)^i / i!, verified for n >= 1 against the mass of
/// {a_1 = 0} under measure_sn.
Rational derangement_probability(unsigned n);

/// Probability that a uniform monic polynomial of degree n has no root:
/// the mass of {a_1 = 0} under measure_poly. For n >= q this must equal
/// ((q-1)/q)^q exactly, and under the cap it is also checked against
/// exhaustive root counting.
Rational rootless_probability(std::uint64_t q, unsigned n, std::uint64_t cap = enumeration_cap());

struct IndependenceLevel {
    unsigned subset_size = 0;
    std::uint64_t subset_count = 0;
    Rational probability;
};

/// Exhaustively verifies that for every subset S of F_q the fraction of
/// monic degree-n polynomials nonvanishing on S equals ((q-1)/q)^|S|, and
/// returns the profile by subset size. Requires n >= q; refuses otherwise.
std::vector<IndependenceLevel> independence_profile(std::uint64_t q, unsigned n,
                                                    std::uint64_t cap = enumeration_cap(),
                                                    unsigned workers = 0);

/// sum over Omega(n) of |P_Sn(a) - P_M(a)|, exact, always in [0, 2].
Rational l1_distance(std::uint64_t q, unsigned n);

/// |P_n - P_{n,q}|, exact; never exceeds l1_distance(q, n).
Rational derangement_gap(std::uint64_t q, unsigned n);

/// Everything the measure comparison yields in one pass over the two tables.
struct MeasureComparison {
    std::uint64_t q = 0;
    unsigned n = 0;
    Rational l1;           // distance between the measures
    Rational derangement;  // mass of {a_1 = 0} under measure_sn
    Rational rootless;     // mass of {a_1 = 0} under measure_poly
    Rational gap;          // |derangement - rootless|
};

MeasureComparison compare_measures(const MeasureTable& sn, const MeasureTable& poly,
                                   std::uint64_t q);
MeasureComparison compare_measures(std::uint64_t q, unsigned n);

}  // namespace cyclefield

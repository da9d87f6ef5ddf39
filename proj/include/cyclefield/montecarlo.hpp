#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclefield/field.hpp"
#include "cyclefield/measures.hpp"
#include "cyclefield/partitions.hpp"
#include "cyclefield/polyring.hpp"
#include "cyclefield/rng.hpp"

namespace cyclefield {

/// Uniform over S_n (Fisher-Yates); deterministic given the generator state.
Permutation sample_permutation(unsigned n, SubstreamRng& rng);

/// Uniform monic polynomial of the given degree: every lower coefficient
/// drawn independently and uniformly.
Poly sample_monic(const FieldPtr& field, unsigned degree, SubstreamRng& rng);

/// Outcome of a hit-counting experiment against an exact reference value.
/// estimate = hits/trials; the z-score standardizes the estimate with the
/// exact probability as the null.
struct SampleReport {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    Rational exact;
    double z_score = 0.0;
    std::uint64_t seed = 0;

    std::string to_json() const;
};

/// Fraction of sampled permutations of n letters without fixed points,
/// against the exact P_n.
SampleReport estimate_derangement(unsigned n, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers = 0);

/// Fraction of sampled monic degree-n polynomials over F_q with no root,
/// tested by evaluation at all q points, against the exact P_{n,q}.
SampleReport estimate_rootless(std::uint64_t q, unsigned n, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 0);

/// Empirical factorization-type histogram with its exact counterpart and the
/// total-variation distance between them (an exact rational: the empirical
/// frequencies are rationals too).
struct TypeDistributionReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    MeasureTable exact;
    std::vector<std::uint64_t> counts;  // aligned with exact.support
    Rational tv_distance;

    std::string to_json() const;
};

TypeDistributionReport estimate_cycle_type_distribution(std::uint64_t q, unsigned n,
                                                        std::uint64_t trials, std::uint64_t seed,
                                                        unsigned workers = 0);

}  // namespace cyclefield

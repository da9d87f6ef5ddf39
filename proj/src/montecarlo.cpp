#include "cyclefield/montecarlo.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "cyclefield/errors.hpp"
#include "cyclefield/parallel.hpp"

namespace cyclefield {

namespace {

// One RNG substream per fixed-size block of trials, not per worker: block b
// always consumes substream b, so the aggregate is bit-identical for every
// worker count and the split is still deterministic.
constexpr std::uint64_t kTrialsPerBlock = std::uint64_t{1} << 16;

// per_block(block_index, trials_in_block, rng) -> hits in that block.
template <typename PerBlock>
std::uint64_t run_blocks(std::uint64_t trials, std::uint64_t seed, unsigned workers,
                         PerBlock per_block) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    unsigned used = workers ? workers : default_workers();
    std::vector<std::uint64_t> hits(used, 0);
    parallel_ranges(blocks, used, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t b = begin; b < end; ++b) {
            std::uint64_t in_block =
                std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock);
            SubstreamRng rng(seed, b);
            hits[w] += per_block(b, in_block, rng);
        }
    });
    return std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
}

double z_score_for(std::uint64_t hits, std::uint64_t trials, const Rational& exact) {
    double p = to_double(exact);
    double estimate = static_cast<double>(hits) / static_cast<double>(trials);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    if (se == 0.0) {
        if (estimate == p) return 0.0;
        return estimate > p ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
    }
    return (estimate - p) / se;
}

SampleReport make_report(std::uint64_t trials, std::uint64_t hits, Rational exact,
                         std::uint64_t seed) {
    SampleReport report;
    report.trials = trials;
    report.hits = hits;
    report.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    report.z_score = z_score_for(hits, trials, exact);
    report.exact = std::move(exact);
    report.seed = seed;
    return report;
}

}  // namespace

Permutation sample_permutation(unsigned n, SubstreamRng& rng) {
    if (n == 0) throw DomainError("permutation size must be >= 1");
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0u);
    for (unsigned i = n - 1; i > 0; --i) {
        auto j = static_cast<std::uint32_t>(rng.uniform_below(i + 1));
        std::swap(images[i], images[j]);
    }
    return Permutation(std::move(images));
}

Poly sample_monic(const FieldPtr& field, unsigned degree, SubstreamRng& rng) {
    if (!field) throw DomainError("null field");
    if (degree == 0) throw DomainError("degree must be >= 1");
    std::vector<std::uint32_t> lower(degree);
    for (auto& c : lower) c = static_cast<std::uint32_t>(rng.uniform_below(field->size()));
    return Poly::monic_with_lower(field, lower);
}

SampleReport estimate_derangement(unsigned n, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers) {
    if (n == 0) throw DomainError("needs n >= 1");
    Rational exact = derangement_probability(n);
    std::uint64_t hits =
        run_blocks(trials, seed, workers, [&](std::uint64_t, std::uint64_t in_block, SubstreamRng& rng) {
            std::vector<std::uint32_t> perm(n);
            std::uint64_t block_hits = 0;
            for (std::uint64_t t = 0; t < in_block; ++t) {
                std::iota(perm.begin(), perm.end(), 0u);
                for (unsigned i = n - 1; i > 0; --i) {
                    auto j = static_cast<std::uint32_t>(rng.uniform_below(i + 1));
                    std::swap(perm[i], perm[j]);
                }
                bool fixed_point = false;
                for (unsigned i = 0; i < n; ++i) {
                    if (perm[i] == i) {
                        fixed_point = true;
                        break;
                    }
                }
                if (!fixed_point) ++block_hits;
            }
            return block_hits;
        });
    return make_report(trials, hits, std::move(exact), seed);
}

SampleReport estimate_rootless(std::uint64_t q, unsigned n, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
    if (n == 0) throw DomainError("needs n >= 1");
    Rational exact = rootless_probability(q, n);
    PrimePower pp = require_prime_power(q);
    FieldPtr field = FieldSpec::make(pp.p, pp.k);
    const FieldSpec& F = *field;
    std::uint64_t hits =
        run_blocks(trials, seed, workers, [&](std::uint64_t, std::uint64_t in_block, SubstreamRng& rng) {
            std::vector<std::uint32_t> coeffs(n + 1);
            coeffs[n] = 1;
            std::uint64_t block_hits = 0;
            for (std::uint64_t t = 0; t < in_block; ++t) {
                for (unsigned i = 0; i < n; ++i)
                    coeffs[i] = static_cast<std::uint32_t>(rng.uniform_below(q));
                bool rootless = true;
                for (std::uint64_t c = 0; c < q && rootless; ++c) {
                    std::uint32_t acc = 0;
                    auto x = static_cast<std::uint32_t>(c);
                    for (std::size_t i = coeffs.size(); i-- > 0;)
                        acc = F.add(F.mul(acc, x), coeffs[i]);
                    rootless = acc != 0;
                }
                if (rootless) ++block_hits;
            }
            return block_hits;
        });
    return make_report(trials, hits, std::move(exact), seed);
}

TypeDistributionReport estimate_cycle_type_distribution(std::uint64_t q, unsigned n,
                                                        std::uint64_t trials, std::uint64_t seed,
                                                        unsigned workers) {
    if (n == 0) throw DomainError("needs n >= 1");
    if (trials == 0) throw DomainError("trials must be >= 1");
    TypeDistributionReport report;
    report.trials = trials;
    report.seed = seed;
    report.exact = measure_poly(q, n);
    PrimePower pp = require_prime_power(q);
    FieldPtr field = FieldSpec::make(pp.p, pp.k);

    const auto& support = *report.exact.support;
    std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    unsigned used = workers ? workers : default_workers();
    std::vector<std::vector<std::uint64_t>> counts(used,
                                                   std::vector<std::uint64_t>(support.size(), 0));
    parallel_ranges(blocks, used, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        FactorizationTypeScanner scanner(field);
        std::vector<std::uint32_t> lower(n), type;
        for (std::uint64_t b = begin; b < end; ++b) {
            std::uint64_t in_block = std::min(kTrialsPerBlock, trials - b * kTrialsPerBlock);
            SubstreamRng rng(seed, b);
            for (std::uint64_t t = 0; t < in_block; ++t) {
                for (auto& c : lower) c = static_cast<std::uint32_t>(rng.uniform_below(q));
                scanner.type_of(lower, type);
                ++counts[w][partition_index(support, type)];
            }
        }
    });
    report.counts.assign(support.size(), 0);
    for (unsigned w = 0; w < used; ++w) {
        for (std::size_t i = 0; i < support.size(); ++i) report.counts[i] += counts[w][i];
    }
    Rational tv = 0;
    BigInt total(static_cast<unsigned long>(trials));
    for (std::size_t i = 0; i < support.size(); ++i) {
        Rational empirical =
            make_rational(BigInt(static_cast<unsigned long>(report.counts[i])), total);
        tv += abs(empirical - report.exact.values[i]);
    }
    report.tv_distance = tv / 2;
    return report;
}

std::string SampleReport::to_json() const {
    nlohmann::ordered_json j;
    j["trials"] = trials;
    j["hits"] = hits;
    j["estimate"] = estimate;
    j["exact"] = rational_string(exact);
    j["z_score"] = z_score;
    j["seed"] = seed;
    return j.dump();
}

std::string TypeDistributionReport::to_json() const {
    nlohmann::ordered_json j;
    j["trials"] = trials;
    j["seed"] = seed;
    j["tv_distance"] = rational_string(tv_distance);
    j["tv_distance_float"] = to_double(tv_distance);
    nlohmann::ordered_json hist;
    const auto& support = *exact.support;
    for (std::size_t i = 0; i < support.size(); ++i) {
        hist[support[i].to_string()] = counts[i];
    }
    j["counts"] = std::move(hist);
    return j.dump();
}

}  // namespace cyclefield

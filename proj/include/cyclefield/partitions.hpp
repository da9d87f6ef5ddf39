#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cyclefield {

/// Dense count vector a = (a_1, ..., a_n) with sum i * a_i = n. Doubles as a
/// permutation cycle type and a polynomial factorization type.
class PartitionVector {
  public:
    /// counts[i] is a_{i+1}; n is the vector length. The weighted-sum
    /// invariant is checked at construction.
    explicit PartitionVector(std::vector<std::uint32_t> counts);

    unsigned n() const { return static_cast<unsigned>(counts_.size()); }
    std::span<const std::uint32_t> counts() const { return counts_; }

    /// a_part for 1 <= part <= n.
    std::uint32_t count_of(unsigned part) const;

    /// "[a1,...,an]"
    std::string to_string() const;

    friend bool operator==(const PartitionVector&, const PartitionVector&) = default;
    friend std::strong_ordering operator<=>(const PartitionVector& a, const PartitionVector& b) {
        return a.counts_ <=> b.counts_;
    }

  private:
    std::vector<std::uint32_t> counts_;
};

/// True iff a_1 = 0: no fixed points on the permutation side, no roots on the
/// polynomial side.
bool has_fixed_point_free_type(const PartitionVector& a);

/// All of Omega(n) in ascending lexicographic order on (a_1, ..., a_n).
std::vector<PartitionVector> enumerate_partitions(unsigned n);

/// Streaming variant of enumerate_partitions, same order, no materialization.
void for_each_partition(unsigned n, const std::function<void(std::span<const std::uint32_t>)>& fn);

/// Index of a count vector in a list sorted in enumeration order. Meant for
/// histogramming types against an enumerated Omega(n); a miss means the type
/// is not a partition of n at all and throws InternalInconsistency.
std::size_t partition_index(const std::vector<PartitionVector>& support,
                            std::span<const std::uint32_t> a);

class Permutation {
  public:
    /// images[i] is the image of i, both 0-based; must be a bijection.
    explicit Permutation(std::vector<std::uint32_t> images);

    static Permutation identity(unsigned n);

    unsigned size() const { return static_cast<unsigned>(images_.size()); }
    std::uint32_t image_of(std::uint32_t i) const { return images_[i]; }
    std::span<const std::uint32_t> images() const { return images_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    std::vector<std::uint32_t> images_;
};

/// a_i = number of orbits of length i.
PartitionVector cycle_type(const Permutation& sigma);

}  // namespace cyclefield

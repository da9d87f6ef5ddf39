#include "cyclefield/partitions.hpp"

#include <algorithm>
#include <numeric>

#include "cyclefield/errors.hpp"

namespace cyclefield {

PartitionVector::PartitionVector(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw DomainError("partition vector must have positive n");
    std::uint64_t weighted = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        weighted += static_cast<std::uint64_t>(i + 1) * counts_[i];
    }
    if (weighted != counts_.size())
        throw DomainError("partition vector weight " + std::to_string(weighted) +
                          " does not match n = " + std::to_string(counts_.size()));
}

std::uint32_t PartitionVector::count_of(unsigned part) const {
    if (part == 0 || part > counts_.size()) throw DomainError("part size out of range");
    return counts_[part - 1];
}

std::string PartitionVector::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(counts_[i]);
    }
    out += ']';
    return out;
}

bool has_fixed_point_free_type(const PartitionVector& a) { return a.counts()[0] == 0; }

namespace {

// Ascending lexicographic emission: position i takes values 0..rem/i in order,
// so the n-cycle type comes first and the identity type (n,0,...,0) last.
void emit_partitions(std::vector<std::uint32_t>& a, unsigned i, unsigned rem,
                     const std::function<void(std::span<const std::uint32_t>)>& fn) {
    unsigned n = static_cast<unsigned>(a.size());
    if (i == n) {
        // Last slot absorbs the remainder or nothing at all.
        if (rem % n == 0) {
            a[n - 1] = rem / n;
            fn(a);
            a[n - 1] = 0;
        }
        return;
    }
    unsigned limit = rem / i;
    for (unsigned v = 0; v <= limit; ++v) {
        a[i - 1] = v;
        emit_partitions(a, i + 1, rem - v * i, fn);
    }
    a[i - 1] = 0;
}

}  // namespace

void for_each_partition(unsigned n, const std::function<void(std::span<const std::uint32_t>)>& fn) {
    if (n == 0) throw DomainError("partition space needs n >= 1");
    std::vector<std::uint32_t> a(n, 0);
    emit_partitions(a, 1, n, fn);
}

std::vector<PartitionVector> enumerate_partitions(unsigned n) {
    std::vector<PartitionVector> out;
    for_each_partition(n, [&](std::span<const std::uint32_t> a) {
        out.emplace_back(std::vector<std::uint32_t>(a.begin(), a.end()));
    });
    return out;
}

std::size_t partition_index(const std::vector<PartitionVector>& support,
                            std::span<const std::uint32_t> a) {
    auto it = std::lower_bound(support.begin(), support.end(), a,
                               [](const PartitionVector& p, std::span<const std::uint32_t> s) {
                                   return std::lexicographical_compare(p.counts().begin(),
                                                                       p.counts().end(), s.begin(),
                                                                       s.end());
                               });
    if (it == support.end() || !std::ranges::equal(it->counts(), a))
        throw InternalInconsistency("type vector outside the partition space");
    return static_cast<std::size_t>(it - support.begin());
}

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    if (images_.empty()) throw DomainError("permutation must have positive size");
    std::vector<bool> seen(images_.size(), false);
    for (std::uint32_t v : images_) {
        if (v >= images_.size() || seen[v]) throw DomainError("images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(unsigned n) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0u);
    return Permutation(std::move(images));
}

PartitionVector cycle_type(const Permutation& sigma) {
    unsigned n = sigma.size();
    std::vector<std::uint32_t> counts(n, 0);
    std::vector<bool> visited(n, false);
    for (std::uint32_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        unsigned length = 0;
        std::uint32_t cur = start;
        do {
            visited[cur] = true;
            cur = sigma.image_of(cur);
            ++length;
        } while (cur != start);
        ++counts[length - 1];
    }
    return PartitionVector(std::move(counts));
}

}  // namespace cyclefield

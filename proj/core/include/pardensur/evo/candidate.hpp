#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace pardensur::evo {

// Identity hash of genes quantized at 1e-12, for caching and dedup.
inline std::uint64_t gene_identity(const std::vector<double>& genes) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (double g : genes) {
        const auto q = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(g / 1e-12)));
        h ^= q + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    }
    return h;
}

// A point in the normalized search space: d genes, each in [0, 1].
struct Candidate {
    std::vector<double> genes;

    Candidate() = default;
    explicit Candidate(std::vector<double> g) : genes(std::move(g)) {}

    std::uint64_t identity() const { return gene_identity(genes); }
    std::size_t dim() const { return genes.size(); }

    bool operator==(const Candidate&) const = default;
};

}  // namespace pardensur::evo

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ragleak {

/// Derive an independent stream seed from a base seed and a purpose label.
/// FNV-1a over the label, mixed with the base. Every random choice in an
/// experiment flows from one config seed through labeled derivations, so
/// adding a new consumer never perturbs existing streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : purpose) {
        h ^= c;
        h *= 1099511628211ull;
    }
    h ^= base + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return h;
}

/// mt19937_64 output is pinned by the standard; the modulo reduction keeps
/// draws reproducible across standard libraries (std::uniform_int_distribution
/// is not portable). Bias is irrelevant at desk-scale bounds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw in [0, bound). bound must be > 0.
    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

    double unit() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        if (items.size() < 2) return;
        for (std::size_t i = items.size() - 1; i > 0; --i) {
            std::size_t j = below(i + 1);
            using std::swap;
            swap(items[i], items[j]);
        }
    }

    /// First `count` positions of a seeded permutation of [0, n).
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        shuffle(idx);
        if (count < n) idx.resize(count);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ragleak

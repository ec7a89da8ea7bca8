#pragma once

#include "gsmodel/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace gsm {

/// Seeded source of every nondeterministic choice. Uses its own bounded
/// sampling instead of std distributions so streams are identical across
/// standard library implementations.
class Oracle {
public:
    explicit Oracle(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t next_natural(std::uint64_t bound) { return below(bound); }

    /// True with probability p (exact comparison of a 32-bit draw against p).
    bool bernoulli(const Rational& p);

    /// k elements of `items` chosen uniformly without replacement, returned in
    /// the input's order. All of them when k >= size.
    template <class T>
    std::vector<T> choose_k(const std::vector<T>& items, std::size_t k)
    {
        if (k >= items.size()) {
            return items;
        }
        std::vector<std::size_t> idx(items.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            idx[i] = i;
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + below(idx.size() - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        std::vector<T> out;
        out.reserve(k);
        for (std::size_t i : idx) {
            out.push_back(items[i]);
        }
        return out;
    }

    /// Each element kept independently with probability p.
    template <class T>
    std::vector<T> choose_subset(const std::vector<T>& items, const Rational& p)
    {
        std::vector<T> out;
        for (const T& x : items) {
            if (bernoulli(p)) {
                out.push_back(x);
            }
        }
        return out;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace gsm

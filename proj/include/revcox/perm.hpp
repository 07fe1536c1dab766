// Copyright 2026 The revcox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "revcox/boolfn.hpp"

namespace revcox {

/// Default cap on the total register width W of a lifted pipeline.
inline constexpr unsigned kDefaultWidthCap = 20;

/// A bijection of the basis {0, ..., 2^W - 1}.
///
/// `mapping[s]` is the image of basis index s. Bijectivity is checked on construction.
class Perm {
   public:
    Perm() = default;

    Perm(unsigned total_width, std::vector<uint32_t> mapping) : width_(total_width), mapping_(std::move(mapping)) {
        if (width_ > kDefaultWidthCap) {
            throw ValidationError(
                "Perm: width " + std::to_string(width_) + " exceeds cap " + std::to_string(kDefaultWidthCap));
        }
        if (mapping_.size() != (size_t{1} << width_)) {
            throw ValidationError(
                "Perm: mapping has " + std::to_string(mapping_.size()) + " entries, expected 2^" +
                std::to_string(width_));
        }
        std::vector<bool> seen(mapping_.size(), false);
        for (size_t s = 0; s < mapping_.size(); s++) {
            uint32_t t = mapping_[s];
            if (t >= mapping_.size() || seen[t]) {
                throw ValidationError("Perm: mapping is not a bijection (index " + std::to_string(s) + ")");
            }
            seen[t] = true;
        }
    }

    static Perm identity(unsigned total_width) {
        std::vector<uint32_t> m(size_t{1} << total_width);
        std::iota(m.begin(), m.end(), uint32_t{0});
        return Perm(total_width, std::move(m));
    }

    unsigned total_width() const {
        return width_;
    }
    size_t size() const {
        return mapping_.size();
    }
    const std::vector<uint32_t> &mapping() const {
        return mapping_;
    }
    uint32_t operator()(uint64_t s) const {
        if (s >= mapping_.size()) {
            throw DomainError("Perm: basis index " + std::to_string(s) + " out of range");
        }
        return mapping_[s];
    }

    bool is_identity() const {
        for (size_t s = 0; s < mapping_.size(); s++) {
            if (mapping_[s] != s) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const Perm &other) const = default;

   private:
    // Skips validation for results of operations on already-valid perms.
    struct Trusted {};
    Perm(Trusted, unsigned total_width, std::vector<uint32_t> mapping)
        : width_(total_width), mapping_(std::move(mapping)) {
    }

    friend Perm perm_compose(const Perm &p, const Perm &q);
    friend Perm perm_inverse(const Perm &p);

    unsigned width_ = 0;
    std::vector<uint32_t> mapping_{0};
};

/// Returns p after q: (p o q)(s) = p(q(s)).
inline Perm perm_compose(const Perm &p, const Perm &q) {
    if (p.width_ != q.width_) {
        throw ValidationError(
            "perm_compose: width mismatch (" + std::to_string(p.width_) + " vs " + std::to_string(q.width_) + ")");
    }
    std::vector<uint32_t> m(q.mapping_.size());
    for (size_t s = 0; s < m.size(); s++) {
        m[s] = p.mapping_[q.mapping_[s]];
    }
    return Perm(Perm::Trusted{}, p.width_, std::move(m));
}

inline Perm perm_inverse(const Perm &p) {
    std::vector<uint32_t> m(p.mapping_.size());
    for (size_t s = 0; s < m.size(); s++) {
        m[p.mapping_[s]] = static_cast<uint32_t>(s);
    }
    return Perm(Perm::Trusted{}, p.width_, std::move(m));
}

/// p composed with itself k times (k = 0 gives the identity).
inline Perm perm_power(const Perm &p, uint64_t k) {
    Perm result = Perm::identity(p.total_width());
    Perm base = p;
    while (k) {
        if (k & 1) {
            result = perm_compose(base, result);
        }
        k >>= 1;
        if (k) {
            base = perm_compose(base, base);
        }
    }
    return result;
}

/// Smallest k >= 1 with p^k = e, computed as the LCM of the cycle lengths.
inline uint64_t perm_order(const Perm &p) {
    const auto &m = p.mapping();
    std::vector<bool> visited(m.size(), false);
    uint64_t order = 1;
    for (size_t start = 0; start < m.size(); start++) {
        if (visited[start]) {
            continue;
        }
        uint64_t len = 0;
        for (size_t s = start; !visited[s]; s = m[s]) {
            visited[s] = true;
            len++;
        }
        uint64_t g = std::gcd(order, len);
        uint64_t factor = len / g;
        if (order > UINT64_MAX / factor) {
            throw std::overflow_error("perm_order: order does not fit in 64 bits");
        }
        order *= factor;
    }
    return order;
}

struct PermHash {
    size_t operator()(const Perm &p) const noexcept {
        // FNV-1a over the mapping words.
        uint64_t h = 0xcbf29ce484222325ULL ^ p.total_width();
        for (uint32_t v : p.mapping()) {
            h ^= v;
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

/// A word over generator symbols 0..n-1. The word (w1, ..., wk) denotes g_w1 o ... o g_wk,
/// so its last symbol acts first.
using Word = std::vector<size_t>;

inline Perm evaluate_word(const std::vector<Perm> &generators, const Word &word, unsigned total_width) {
    Perm result = Perm::identity(total_width);
    for (size_t k = word.size(); k-- > 0;) {
        if (word[k] >= generators.size()) {
            throw DomainError("evaluate_word: generator symbol " + std::to_string(word[k]) + " out of range");
        }
        result = perm_compose(generators[word[k]], result);
    }
    return result;
}

}  // namespace revcox

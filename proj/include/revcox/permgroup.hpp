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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "revcox/perm.hpp"

namespace revcox {

inline constexpr size_t kDefaultElementCap = 1000000;

/// Groups larger than this are enumerated without a full Cayley table.
inline constexpr size_t kCayleyLimit = 2048;

/// Raised when closure would produce more elements than the configured cap.
struct EnumerationOverflow : std::runtime_error {
    explicit EnumerationOverflow(size_t cap)
        : std::runtime_error("closure: group has more than " + std::to_string(cap) + " elements"), cap(cap) {
    }
    size_t cap;
};

/// A finite permutation group enumerated from its generators.
///
/// Elements appear in breadth-first discovery order, so element 0 is the identity and
/// words[e] is a shortest word for element e. Among shortest words the lexicographically
/// smallest symbol sequence is kept.
struct GroupClosure {
    std::vector<Perm> elements;
    std::vector<Word> words;
    size_t generator_count = 0;
    /// right_mult[e][g] is the index of elements[e] o generators[g].
    std::vector<std::vector<uint32_t>> right_mult;
    /// cayley[a][b] is the index of elements[a] o elements[b]. Empty above kCayleyLimit.
    std::vector<std::vector<uint32_t>> cayley;

    size_t order() const {
        return elements.size();
    }
    unsigned total_width() const {
        return elements.front().total_width();
    }
    bool has_cayley() const {
        return !cayley.empty();
    }

    std::optional<size_t> index_of(const Perm &p) const {
        auto it = lookup_.find(p);
        if (it == lookup_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Index of elements[a] o elements[b].
    size_t product(size_t a, size_t b) const {
        if (has_cayley()) {
            return cayley.at(a).at(b);
        }
        size_t cur = a;
        for (size_t g : words.at(b)) {
            cur = right_mult[cur][g];
        }
        return cur;
    }

    size_t inverse(size_t e) const {
        return *index_of(perm_inverse(elements.at(e)));
    }

   private:
    friend GroupClosure closure(const std::vector<Perm> &, size_t);
    std::unordered_map<Perm, size_t, PermHash> lookup_;
};

/// Enumerates the group generated by `generators`.
///
/// Breadth-first search from the identity: each discovered element e is multiplied on the right
/// by every generator, in symbol order. Appending the symbol to e's word keeps words in
/// shortlex order layer by layer. Throws EnumerationOverflow past `element_cap` elements.
inline GroupClosure closure(const std::vector<Perm> &generators, size_t element_cap = kDefaultElementCap) {
    if (generators.empty()) {
        throw ValidationError("closure: at least one generator is required");
    }
    if (element_cap == 0) {
        throw ValidationError("closure: element_cap must be positive");
    }
    unsigned width = generators.front().total_width();
    for (const Perm &g : generators) {
        if (g.total_width() != width) {
            throw ValidationError("closure: generators have different widths");
        }
    }

    GroupClosure group;
    group.generator_count = generators.size();
    group.elements.push_back(Perm::identity(width));
    group.words.emplace_back();
    group.lookup_.emplace(group.elements.front(), 0);

    for (size_t e = 0; e < group.elements.size(); e++) {
        std::vector<uint32_t> row(generators.size());
        for (size_t g = 0; g < generators.size(); g++) {
            Perm next = perm_compose(group.elements[e], generators[g]);
            auto [it, inserted] = group.lookup_.try_emplace(std::move(next), group.elements.size());
            if (inserted) {
                if (group.elements.size() >= element_cap) {
                    throw EnumerationOverflow(element_cap);
                }
                group.elements.push_back(it->first);
                Word w = group.words[e];
                w.push_back(g);
                group.words.push_back(std::move(w));
            }
            row[g] = static_cast<uint32_t>(it->second);
        }
        group.right_mult.push_back(std::move(row));
    }

    size_t n = group.elements.size();
    if (n <= kCayleyLimit) {
        group.cayley.assign(n, std::vector<uint32_t>(n));
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                size_t cur = a;
                for (size_t g : group.words[b]) {
                    cur = group.right_mult[cur][g];
                }
                group.cayley[a][b] = static_cast<uint32_t>(cur);
            }
        }
    }
    return group;
}

inline std::map<uint64_t, size_t> element_order_histogram(const GroupClosure &g) {
    std::map<uint64_t, size_t> hist;
    for (const Perm &p : g.elements) {
        hist[perm_order(p)]++;
    }
    return hist;
}

inline const Word &shortest_word(const GroupClosure &g, size_t element) {
    if (element >= g.order()) {
        throw DomainError("shortest_word: element index " + std::to_string(element) + " out of range");
    }
    return g.words[element];
}

struct DihedralCheck {
    bool is_dihedral = false;
    /// Witness pair (indices into the closure): a of order 4, b of order 2, b a b = a^-1.
    size_t a = 0;
    size_t b = 0;
    /// Set when the witness is a = g0 o g1, b = g1 for the first two generators.
    bool matches_lifted_identification = false;
};

namespace detail {

inline size_t subgroup_order(const GroupClosure &g, size_t a, size_t b) {
    std::vector<bool> in(g.order(), false);
    std::vector<size_t> queue{0};
    in[0] = true;
    for (size_t k = 0; k < queue.size(); k++) {
        for (size_t gen : {a, b}) {
            size_t next = g.product(queue[k], gen);
            if (!in[next]) {
                in[next] = true;
                queue.push_back(next);
            }
        }
    }
    return queue.size();
}

inline size_t element_order_in(const GroupClosure &g, size_t e) {
    size_t k = 1;
    for (size_t cur = e; cur != 0; cur = g.product(cur, e)) {
        k++;
    }
    return k;
}

}  // namespace detail

/// Decides whether g is dihedral of order 8 by exhaustive search over element pairs.
inline DihedralCheck is_dihedral_8(const GroupClosure &g) {
    DihedralCheck result;
    if (g.order() != 8) {
        return result;
    }
    auto is_witness = [&](size_t a, size_t b) {
        if (detail::element_order_in(g, a) != 4 || detail::element_order_in(g, b) != 2) {
            return false;
        }
        size_t bab = g.product(g.product(b, a), b);
        return bab == g.inverse(a) && detail::subgroup_order(g, a, b) == 8;
    };

    if (g.generator_count >= 2) {
        size_t g0 = g.right_mult[0][0];
        size_t g1 = g.right_mult[0][1];
        size_t a = g.product(g0, g1);
        if (is_witness(a, g1)) {
            result = {true, a, g1, true};
            return result;
        }
    }
    for (size_t a = 0; a < g.order(); a++) {
        for (size_t b = 0; b < g.order(); b++) {
            if (is_witness(a, b)) {
                result = {true, a, b, false};
                return result;
            }
        }
    }
    return result;
}

/// Why a generator set falls outside the generic case: identity generators, duplicates,
/// generators that are not involutions, or adjacent products whose order is not 4.
struct DegeneracyReport {
    std::vector<size_t> identity_generators;
    std::vector<std::pair<size_t, size_t>> duplicate_pairs;
    std::vector<size_t> non_involutions;
    /// (k, order of g_k o g_{k+1}) for adjacent pairs whose product order differs from 4.
    std::vector<std::pair<size_t, uint64_t>> adjacent_orders;

    /// No identity, duplicate or non-involution generators.
    bool valid_coxeter_generators() const {
        return identity_generators.empty() && duplicate_pairs.empty() && non_involutions.empty();
    }
    bool nondegenerate() const {
        return valid_coxeter_generators() && adjacent_orders.empty();
    }

    std::string describe() const {
        if (nondegenerate()) {
            return "nondegenerate";
        }
        std::string out;
        auto add = [&](const std::string &s) {
            if (!out.empty()) {
                out += "; ";
            }
            out += s;
        };
        for (size_t i : identity_generators) {
            add("generator f" + std::to_string(i + 1) + " is the identity");
        }
        for (auto [i, j] : duplicate_pairs) {
            add("generators f" + std::to_string(i + 1) + " and f" + std::to_string(j + 1) + " coincide");
        }
        for (size_t i : non_involutions) {
            add("generator f" + std::to_string(i + 1) + " is not an involution");
        }
        for (auto [k, ord] : adjacent_orders) {
            add("f" + std::to_string(k + 1) + " o f" + std::to_string(k + 2) + " has order " + std::to_string(ord) +
                ", not 4");
        }
        return out;
    }
};

inline DegeneracyReport check_degeneracy(const std::vector<Perm> &generators) {
    DegeneracyReport report;
    for (size_t i = 0; i < generators.size(); i++) {
        uint64_t ord = perm_order(generators[i]);
        if (ord == 1) {
            report.identity_generators.push_back(i);
        } else if (ord != 2) {
            report.non_involutions.push_back(i);
        }
        for (size_t j = i + 1; j < generators.size(); j++) {
            if (generators[i] == generators[j]) {
                report.duplicate_pairs.emplace_back(i, j);
            }
        }
    }
    for (size_t k = 0; k + 1 < generators.size(); k++) {
        uint64_t ord = perm_order(perm_compose(generators[k], generators[k + 1]));
        if (ord != 4) {
            report.adjacent_orders.emplace_back(k, ord);
        }
    }
    return report;
}

}  // namespace revcox

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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "revcox/lifting.hpp"
#include "revcox/perm.hpp"
#include "revcox/permgroup.hpp"

namespace revcox {

inline constexpr size_t kDefaultCosetCap = 100000;

/// Symmetric matrix of pairwise product orders with unit diagonal.
struct CoxeterMatrix {
    /// Marks an entry with no relation between the two generators.
    static constexpr uint64_t kInfinite = 0;

    size_t n = 0;
    std::vector<std::vector<uint64_t>> m;

    bool operator==(const CoxeterMatrix &other) const = default;

    bool well_formed() const {
        if (m.size() != n) {
            return false;
        }
        for (size_t i = 0; i < n; i++) {
            if (m[i].size() != n || m[i][i] != 1) {
                return false;
            }
            for (size_t j = 0; j < n; j++) {
                if (m[i][j] != m[j][i] || (i != j && m[i][j] != kInfinite && m[i][j] < 2)) {
                    return false;
                }
            }
        }
        return true;
    }
};

/// One defining relation: base^exponent = e.
struct Relation {
    Word base;
    uint64_t exponent = 1;
    /// Which family the relation belongs to, e.g. "square".
    std::string family;

    Word relator() const {
        Word w;
        for (uint64_t k = 0; k < exponent; k++) {
            w.insert(w.end(), base.begin(), base.end());
        }
        return w;
    }

    std::string to_string() const {
        std::string s = "(";
        for (size_t k = 0; k < base.size(); k++) {
            s += (k ? " s" : "s") + std::to_string(base[k] + 1);
        }
        return s + ")^" + std::to_string(exponent);
    }
};

struct Presentation {
    size_t generator_count = 0;
    std::vector<Relation> relations;

    void validate() const {
        if (relations.empty()) {
            throw ValidationError("Presentation: relation set is empty");
        }
        for (const Relation &r : relations) {
            if (r.base.empty() || r.exponent == 0) {
                throw ValidationError("Presentation: empty relator");
            }
            for (size_t s : r.base) {
                if (s >= generator_count) {
                    throw ValidationError("Presentation: relator uses unknown generator s" + std::to_string(s + 1));
                }
            }
        }
    }
};

/// The matrix asserted for an n-step pipeline: 4 between adjacent steps, 2 otherwise.
inline CoxeterMatrix claimed_matrix(size_t n) {
    CoxeterMatrix cm{n, std::vector<std::vector<uint64_t>>(n, std::vector<uint64_t>(n, 2))};
    for (size_t i = 0; i < n; i++) {
        cm.m[i][i] = 1;
        if (i + 1 < n) {
            cm.m[i][i + 1] = cm.m[i + 1][i] = 4;
        }
    }
    return cm;
}

/// Coxeter presentation <s_i | (s_i s_j)^m_ij> with s_i^2 listed first, then i < j pairs.
inline Presentation coxeter_presentation(const CoxeterMatrix &cm) {
    if (!cm.well_formed()) {
        throw ValidationError("coxeter_presentation: matrix is not a Coxeter matrix");
    }
    Presentation pres{cm.n, {}};
    for (size_t i = 0; i < cm.n; i++) {
        pres.relations.push_back({{i}, 2, "square"});
    }
    for (size_t i = 0; i < cm.n; i++) {
        for (size_t j = i + 1; j < cm.n; j++) {
            if (cm.m[i][j] != CoxeterMatrix::kInfinite) {
                pres.relations.push_back({{i, j}, cm.m[i][j], "m"});
            }
        }
    }
    return pres;
}

/// Squares of every step, fourth powers of adjacent products, squares of
/// non-adjacent products.
inline Presentation pipeline_presentation(size_t n) {
    if (n < 2) {
        throw ValidationError("pipeline_presentation: need at least 2 steps, got " + std::to_string(n));
    }
    Presentation pres{n, {}};
    for (size_t i = 0; i < n; i++) {
        pres.relations.push_back({{i}, 2, "square"});
    }
    for (size_t k = 0; k + 1 < n; k++) {
        pres.relations.push_back({{k, k + 1}, 4, "adjacent"});
    }
    for (size_t p = 0; p < n; p++) {
        for (size_t q = p + 2; q < n; q++) {
            pres.relations.push_back({{p, q}, 2, "distant"});
        }
    }
    return pres;
}

struct RelationCheck {
    Relation relation;
    bool holds = false;
};

inline std::vector<RelationCheck> relations_hold(const std::vector<Perm> &generators, const Presentation &pres) {
    pres.validate();
    if (generators.size() != pres.generator_count) {
        throw ValidationError(
            "relations_hold: " + std::to_string(generators.size()) + " generators for a presentation on " +
            std::to_string(pres.generator_count));
    }
    unsigned width = generators.empty() ? 0 : generators.front().total_width();
    std::vector<RelationCheck> out;
    for (const Relation &r : pres.relations) {
        out.push_back({r, evaluate_word(generators, r.relator(), width).is_identity()});
    }
    return out;
}

inline bool all_hold(const std::vector<RelationCheck> &checks) {
    for (const auto &c : checks) {
        if (!c.holds) {
            return false;
        }
    }
    return true;
}

/// Empirical Coxeter matrix of the given involutions, or nullopt with `degeneracy` filled in
/// when some generator is the identity, a duplicate, or not an involution.
struct CoxeterMatrixResult {
    std::optional<CoxeterMatrix> matrix;
    DegeneracyReport degeneracy;
};

/// Orders of all pairwise products g_i o g_j, without any precondition on the generators.
inline std::vector<std::vector<uint64_t>> product_orders(const std::vector<Perm> &generators) {
    size_t n = generators.size();
    std::vector<std::vector<uint64_t>> m(n, std::vector<uint64_t>(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            m[i][j] = m[j][i] = perm_order(perm_compose(generators[i], generators[j]));
        }
    }
    return m;
}

inline CoxeterMatrixResult coxeter_matrix(const std::vector<Perm> &generators) {
    CoxeterMatrixResult result;
    result.degeneracy = check_degeneracy(generators);
    if (!result.degeneracy.valid_coxeter_generators()) {
        return result;
    }
    result.matrix = CoxeterMatrix{generators.size(), product_orders(generators)};
    return result;
}

/// Outcome of coset enumeration; `order` is empty when the coset cap was reached.
struct CosetEnumeration {
    std::optional<uint64_t> order;
    size_t cap = 0;
    /// Total cosets defined, including ones later identified by coincidences.
    size_t cosets_defined = 0;

    bool bound_exceeded() const {
        return !order.has_value();
    }
};

namespace detail {

/// HLT coset enumeration over the trivial subgroup.
///
/// Columns 2s and 2s+1 hold generator s and its inverse. Live cosets are processed in
/// increasing order; each is scanned against every relator in presentation order, then any
/// still-undefined entries in its row are defined. Coincidences are resolved with a queue and
/// union-find, always keeping the smaller coset number as representative.
class CosetTable {
   public:
    CosetTable(size_t generator_count, size_t cap) : cols_(2 * generator_count), cap_(cap) {
    }

    CosetEnumeration run(const std::vector<std::vector<size_t>> &relators) {
        if (!new_coset()) {
            return {std::nullopt, cap_, defined_};
        }
        for (size_t alpha = 0; alpha < parent_.size(); alpha++) {
            for (const auto &w : relators) {
                if (!live(alpha)) {
                    break;
                }
                if (!scan_and_fill(alpha, w)) {
                    return {std::nullopt, cap_, defined_};
                }
            }
            for (size_t x = 0; x < cols_ && live(alpha); x++) {
                if (entry(alpha, x) == kNone && !define(alpha, x)) {
                    return {std::nullopt, cap_, defined_};
                }
            }
        }
        uint64_t count = 0;
        for (size_t c = 0; c < parent_.size(); c++) {
            count += live(c);
        }
        return {count, cap_, defined_};
    }

   private:
    static constexpr uint32_t kNone = UINT32_MAX;

    static size_t inv(size_t x) {
        return x ^ 1;
    }
    uint32_t &entry(size_t c, size_t x) {
        return table_[c * cols_ + x];
    }
    bool live(size_t c) const {
        return parent_[c] == c;
    }

    bool new_coset() {
        if (defined_ >= cap_) {
            return false;
        }
        parent_.push_back(static_cast<uint32_t>(parent_.size()));
        table_.resize(table_.size() + cols_, kNone);
        defined_++;
        return true;
    }

    bool define(size_t c, size_t x) {
        if (!new_coset()) {
            return false;
        }
        size_t d = parent_.size() - 1;
        entry(c, x) = static_cast<uint32_t>(d);
        entry(d, inv(x)) = static_cast<uint32_t>(c);
        return true;
    }

    // Relator symbols s map to column 2s.
    bool scan_and_fill(size_t alpha, const std::vector<size_t> &w) {
        size_t f = alpha;
        size_t b = alpha;
        size_t i = 0;
        size_t j = w.size();  // one past the last unscanned symbol
        while (true) {
            while (i < j && entry(f, 2 * w[i]) != kNone) {
                f = entry(f, 2 * w[i]);
                i++;
            }
            if (i == j) {
                if (f != b) {
                    coincidence(f, b);
                }
                return true;
            }
            while (j > i && entry(b, inv(2 * w[j - 1])) != kNone) {
                b = entry(b, inv(2 * w[j - 1]));
                j--;
            }
            if (j == i) {
                coincidence(f, b);
                return true;
            }
            if (j == i + 1) {
                entry(f, 2 * w[i]) = static_cast<uint32_t>(b);
                entry(b, inv(2 * w[i])) = static_cast<uint32_t>(f);
                return true;
            }
            if (!define(f, 2 * w[i])) {
                return false;
            }
        }
    }

    size_t rep(size_t c) {
        size_t root = c;
        while (parent_[root] != root) {
            root = parent_[root];
        }
        while (parent_[c] != root) {
            size_t next = parent_[c];
            parent_[c] = static_cast<uint32_t>(root);
            c = next;
        }
        return root;
    }

    void merge(size_t k, size_t l, std::vector<size_t> &queue) {
        size_t a = rep(k);
        size_t b = rep(l);
        if (a == b) {
            return;
        }
        size_t lo = std::min(a, b);
        size_t hi = std::max(a, b);
        parent_[hi] = static_cast<uint32_t>(lo);
        queue.push_back(hi);
    }

    void coincidence(size_t a, size_t b) {
        std::vector<size_t> queue;
        merge(a, b, queue);
        for (size_t k = 0; k < queue.size(); k++) {
            size_t gamma = queue[k];
            for (size_t x = 0; x < cols_; x++) {
                uint32_t delta = entry(gamma, x);
                if (delta == kNone) {
                    continue;
                }
                if (entry(delta, inv(x)) == gamma) {
                    entry(delta, inv(x)) = kNone;
                }
                size_t mu = rep(gamma);
                size_t nu = rep(delta);
                if (entry(mu, x) != kNone) {
                    merge(nu, entry(mu, x), queue);
                } else if (entry(nu, inv(x)) != kNone) {
                    merge(mu, entry(nu, inv(x)), queue);
                } else {
                    entry(mu, x) = static_cast<uint32_t>(nu);
                    entry(nu, inv(x)) = static_cast<uint32_t>(mu);
                }
            }
        }
    }

    size_t cols_;
    size_t cap_;
    size_t defined_ = 0;
    std::vector<uint32_t> parent_;
    std::vector<uint32_t> table_;
};

}  // namespace detail

/// Order of the group defined by `pres`, found by enumerating cosets of the trivial subgroup.
/// Gives up once `coset_cap` cosets have been defined.
inline CosetEnumeration todd_coxeter(const Presentation &pres, size_t coset_cap = kDefaultCosetCap) {
    pres.validate();
    if (coset_cap == 0) {
        throw ValidationError("todd_coxeter: coset_cap must be positive");
    }
    std::vector<std::vector<size_t>> relators;
    for (const Relation &r : pres.relations) {
        relators.push_back(r.relator());
    }
    return detail::CosetTable(pres.generator_count, coset_cap).run(relators);
}

enum class Verdict { CONFIRMED, PROPER_QUOTIENT, BOUND_EXCEEDED, DEGENERATE };

inline const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CONFIRMED:
            return "CONFIRMED";
        case Verdict::PROPER_QUOTIENT:
            return "PROPER_QUOTIENT";
        case Verdict::BOUND_EXCEEDED:
            return "BOUND_EXCEEDED";
        case Verdict::DEGENERATE:
            return "DEGENERATE";
    }
    return "?";
}

/// Result of checking the lifted generators of a pipeline against the claimed Coxeter presentation.
struct VerificationReport {
    size_t step_count = 0;
    bool relations_hold = false;
    uint64_t concrete_order = 0;
    CosetEnumeration abstract;
    Verdict verdict = Verdict::DEGENERATE;
    std::vector<RelationCheck> relations;
    /// Orders of g_i o g_j for every pair, computed even for degenerate generators.
    std::vector<std::vector<uint64_t>> product_orders;
    CoxeterMatrix claimed;
    std::optional<CoxeterMatrix> empirical;
    DegeneracyReport degeneracy;
    std::string conclusion;

    bool empirical_matches_claim() const {
        return empirical.has_value() && *empirical == claimed;
    }
};

/// Lifts `p`, enumerates its concrete group and the abstract claimed presentation, and compares them.
/// EnumerationOverflow from the concrete closure propagates to the caller.
inline VerificationReport verify_pipeline(
    const PipelineSpec &p, size_t coset_cap = kDefaultCosetCap, size_t element_cap = kDefaultElementCap) {
    VerificationReport rep;
    size_t n = p.step_count();
    rep.step_count = n;
    std::vector<Perm> gens = generators(p);

    CoxeterMatrixResult cm = coxeter_matrix(gens);
    rep.degeneracy = cm.degeneracy;
    rep.empirical = cm.matrix;
    rep.product_orders = product_orders(gens);
    rep.claimed = claimed_matrix(n);

    rep.concrete_order = closure(gens, element_cap).order();

    Presentation pres = n >= 2 ? pipeline_presentation(n) : coxeter_presentation(claimed_matrix(n));
    rep.relations = relations_hold(gens, pres);
    rep.relations_hold = all_hold(rep.relations);
    rep.abstract = todd_coxeter(pres, coset_cap);

    std::string concrete = std::to_string(rep.concrete_order);
    if (!cm.degeneracy.valid_coxeter_generators()) {
        rep.verdict = Verdict::DEGENERATE;
        rep.conclusion = "degenerate generators (" + cm.degeneracy.describe() + "); concrete group has order " +
                         concrete + " and is not compared with the presentation";
    } else if (!rep.relations_hold) {
        // Every lifted pipeline satisfies these relations, so this signals a defect in the lifting.
        throw std::logic_error("verify_pipeline: lifted generators violate the presentation");
    } else if (rep.abstract.bound_exceeded()) {
        rep.verdict = Verdict::BOUND_EXCEEDED;
        rep.conclusion = "relations hold; the concrete group (order " + concrete +
                         ") is a quotient of the presented group, whose enumeration exceeded " +
                         std::to_string(coset_cap) + " cosets";
    } else if (*rep.abstract.order == rep.concrete_order) {
        rep.verdict = Verdict::CONFIRMED;
        rep.conclusion = "relations hold and both groups have order " + concrete +
                         ", so the surjection from the presented group is an isomorphism";
    } else if (*rep.abstract.order > rep.concrete_order) {
        rep.verdict = Verdict::PROPER_QUOTIENT;
        rep.conclusion = "relations hold but the presented group has order " + std::to_string(*rep.abstract.order) +
                         " > " + concrete + "; the concrete group is a proper quotient";
    } else {
        throw std::logic_error("verify_pipeline: concrete group larger than the presented group it satisfies");
    }
    return rep;
}

}  // namespace revcox

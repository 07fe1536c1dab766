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
#include <stdexcept>
#include <string>
#include <vector>

#include "revcox/boolfn.hpp"
#include "revcox/perm.hpp"

namespace revcox {

/// An n-step non-invertible pipeline r0 -> f1(r0) -> f2(f1(r0)) -> ...
///
/// `widths` holds the n+1 register widths and `steps[i]` maps register i to register i+1.
class PipelineSpec {
   public:
    PipelineSpec(std::vector<unsigned> widths, std::vector<BoolFunc> steps, unsigned width_cap = kDefaultWidthCap)
        : widths_(std::move(widths)), steps_(std::move(steps)) {
        if (steps_.empty()) {
            throw ValidationError("PipelineSpec: at least one step is required");
        }
        if (widths_.size() != steps_.size() + 1) {
            throw ValidationError(
                "PipelineSpec: " + std::to_string(steps_.size()) + " steps need " + std::to_string(steps_.size() + 1) +
                " registers, got " + std::to_string(widths_.size()));
        }
        if (width_cap > kDefaultWidthCap) {
            throw ValidationError("PipelineSpec: width cap may not exceed " + std::to_string(kDefaultWidthCap));
        }
        unsigned total = 0;
        for (size_t r = 0; r < widths_.size(); r++) {
            if (widths_[r] == 0 || widths_[r] > kMaxArity) {
                throw ValidationError(
                    "PipelineSpec: register " + std::to_string(r) + " width must be in [1, " +
                    std::to_string(kMaxArity) + "]");
            }
            total += widths_[r];
        }
        if (total > width_cap) {
            throw ValidationError(
                "PipelineSpec: total width " + std::to_string(total) + " exceeds cap " + std::to_string(width_cap));
        }
        for (size_t i = 0; i < steps_.size(); i++) {
            if (steps_[i].arity_in() != widths_[i] || steps_[i].arity_out() != widths_[i + 1]) {
                throw ValidationError(
                    "PipelineSpec: step " + std::to_string(i + 1) + " maps " + std::to_string(steps_[i].arity_in()) +
                    " -> " + std::to_string(steps_[i].arity_out()) + " bits but registers are " +
                    std::to_string(widths_[i]) + " -> " + std::to_string(widths_[i + 1]));
            }
        }
    }

    size_t step_count() const {
        return steps_.size();
    }
    const std::vector<unsigned> &widths() const {
        return widths_;
    }
    const std::vector<BoolFunc> &steps() const {
        return steps_;
    }
    /// Step i, 1-based.
    const BoolFunc &step(size_t i) const {
        if (i < 1 || i > steps_.size()) {
            throw DomainError("PipelineSpec: step index " + std::to_string(i) + " out of range");
        }
        return steps_[i - 1];
    }
    unsigned total_width() const {
        unsigned total = 0;
        for (unsigned w : widths_) {
            total += w;
        }
        return total;
    }

    bool operator==(const PipelineSpec &other) const = default;

   private:
    std::vector<unsigned> widths_;
    std::vector<BoolFunc> steps_;
};

/// Bit positions of each register inside the packed basis index. Register 0 is least significant.
struct RegisterLayout {
    std::vector<unsigned> offsets;
    std::vector<unsigned> widths;
    unsigned total_width = 0;

    size_t register_count() const {
        return widths.size();
    }

    uint64_t mask(size_t r) const {
        return (uint64_t{1} << widths.at(r)) - 1;
    }

    uint64_t extract(uint64_t index, size_t r) const {
        return (index >> offsets.at(r)) & mask(r);
    }

    uint64_t pack(const std::vector<uint64_t> &values) const {
        if (values.size() != widths.size()) {
            throw EncodingError(
                "RegisterLayout: expected " + std::to_string(widths.size()) + " register values, got " +
                std::to_string(values.size()));
        }
        uint64_t index = 0;
        for (size_t r = 0; r < values.size(); r++) {
            if (values[r] > mask(r)) {
                throw DomainError(
                    "RegisterLayout: value " + std::to_string(values[r]) + " does not fit register " +
                    std::to_string(r) + " of width " + std::to_string(widths[r]));
            }
            index |= values[r] << offsets[r];
        }
        return index;
    }

    std::vector<uint64_t> unpack(uint64_t index) const {
        std::vector<uint64_t> values(widths.size());
        for (size_t r = 0; r < widths.size(); r++) {
            values[r] = extract(index, r);
        }
        return values;
    }
};

inline RegisterLayout layout(const PipelineSpec &p) {
    RegisterLayout result;
    result.widths = p.widths();
    unsigned offset = 0;
    for (unsigned w : p.widths()) {
        result.offsets.push_back(offset);
        offset += w;
    }
    result.total_width = offset;
    return result;
}

/// The involution (x, y) -> (x, y xor f(x)) on a + b bits, x in the low a bits.
inline Perm lift_hat(const BoolFunc &f, unsigned width_cap = kDefaultWidthCap) {
    unsigned a = f.arity_in();
    unsigned b = f.arity_out();
    if (a + b > width_cap || a + b > kDefaultWidthCap) {
        throw ValidationError(
            "lift_hat: lifted width " + std::to_string(a + b) + " exceeds cap " + std::to_string(width_cap));
    }
    std::vector<uint32_t> m(size_t{1} << (a + b));
    uint64_t x_mask = (uint64_t{1} << a) - 1;
    for (uint64_t s = 0; s < m.size(); s++) {
        uint64_t x = s & x_mask;
        uint64_t y = s >> a;
        m[s] = static_cast<uint32_t>(x | ((y ^ f.table()[x]) << a));
    }
    return Perm(a + b, std::move(m));
}

/// The lifted step i (1-based) padded with identities: register i ^= f_i(register i-1),
/// every other register fixed.
inline Perm extend(const PipelineSpec &p, size_t i) {
    const BoolFunc &f = p.step(i);
    RegisterLayout lay = layout(p);
    unsigned src = lay.offsets[i - 1];
    unsigned dst = lay.offsets[i];
    uint64_t src_mask = lay.mask(i - 1);
    std::vector<uint32_t> m(size_t{1} << lay.total_width);
    for (uint64_t s = 0; s < m.size(); s++) {
        uint64_t x = (s >> src) & src_mask;
        m[s] = static_cast<uint32_t>(s ^ (f.table()[x] << dst));
    }
    return Perm(lay.total_width, std::move(m));
}

/// All lifted steps phi_1..phi_n, in pipeline order.
inline std::vector<Perm> generators(const PipelineSpec &p) {
    std::vector<Perm> gens;
    for (size_t i = 1; i <= p.step_count(); i++) {
        gens.push_back(extend(p, i));
    }
    return gens;
}

/// The word phi_n o ... o phi_1 over 0-based generator symbols.
inline Word forward_word(size_t step_count) {
    Word w;
    for (size_t k = step_count; k-- > 0;) {
        w.push_back(k);
    }
    return w;
}

/// Inverse of a word over involutions: the same symbols reversed.
inline Word reversed_word(const Word &w) {
    return Word(w.rbegin(), w.rend());
}

inline Perm forward_perm(const PipelineSpec &p) {
    Perm result = Perm::identity(p.total_width());
    for (size_t i = 1; i <= p.step_count(); i++) {
        result = perm_compose(extend(p, i), result);
    }
    return result;
}

struct RegisterTrace {
    /// Register values after forward_perm on (x, 0, ..., 0).
    std::vector<uint64_t> invertible;
    /// x, f1(x), f2(f1(x)), ... by direct evaluation.
    std::vector<uint64_t> direct;
};

inline RegisterTrace run_classical(const PipelineSpec &p, uint64_t x) {
    RegisterLayout lay = layout(p);
    if (x > lay.mask(0)) {
        throw DomainError(
            "run_classical: input " + std::to_string(x) + " does not fit register 0 of width " +
            std::to_string(lay.widths[0]));
    }
    RegisterTrace trace;
    Perm fwd = forward_perm(p);
    trace.invertible = lay.unpack(fwd(x));

    trace.direct.push_back(x);
    for (const BoolFunc &f : p.steps()) {
        trace.direct.push_back(f(trace.direct.back()));
    }
    if (trace.invertible != trace.direct) {
        throw std::logic_error("run_classical: invertible trace disagrees with direct evaluation");
    }
    return trace;
}

}  // namespace revcox

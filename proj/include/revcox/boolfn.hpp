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
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revcox {

/// Largest input or output arity accepted for a single truth table.
inline constexpr unsigned kMaxArity = 16;

/// Raised when a bit tuple cannot be packed into a basis index.
struct EncodingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a truth table or pipeline fails validation.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when composing functions whose arities do not chain.
struct CompositionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside a function's domain.
struct DomainError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Packs a bit tuple into an integer. The first component is the least significant bit.
inline uint64_t pack_bits(std::span<const uint8_t> tuple, unsigned width) {
    if (tuple.size() != width) {
        throw EncodingError(
            "pack_bits: tuple has " + std::to_string(tuple.size()) + " bits but width is " + std::to_string(width));
    }
    if (width > 64) {
        throw EncodingError("pack_bits: width " + std::to_string(width) + " exceeds 64");
    }
    uint64_t result = 0;
    for (unsigned j = 0; j < width; j++) {
        if (tuple[j] > 1) {
            throw EncodingError("pack_bits: component " + std::to_string(j) + " is not a bit");
        }
        result |= uint64_t{tuple[j]} << j;
    }
    return result;
}

inline std::vector<uint8_t> unpack_bits(uint64_t index, unsigned width) {
    if (width > 64 || (width < 64 && (index >> width) != 0)) {
        throw EncodingError("unpack_bits: index " + std::to_string(index) + " does not fit in " + std::to_string(width) + " bits");
    }
    std::vector<uint8_t> tuple(width);
    for (unsigned j = 0; j < width; j++) {
        tuple[j] = static_cast<uint8_t>((index >> j) & 1);
    }
    return tuple;
}

/// A total Boolean function B^a -> B^b stored as an explicit truth table.
///
/// Row x of the table holds f(x), with inputs and outputs packed by `pack_bits`.
/// Instances are immutable once constructed.
class BoolFunc {
   public:
    BoolFunc(unsigned arity_in, unsigned arity_out, std::vector<uint64_t> table)
        : arity_in_(arity_in), arity_out_(arity_out), table_(std::move(table)) {
        if (arity_in_ == 0 || arity_out_ == 0) {
            throw ValidationError("BoolFunc: zero-width functions are not supported");
        }
        if (arity_in_ > kMaxArity || arity_out_ > kMaxArity) {
            throw ValidationError(
                "BoolFunc: arity exceeds the configured cap of " + std::to_string(kMaxArity) + " bits");
        }
        uint64_t rows = uint64_t{1} << arity_in_;
        if (table_.size() != rows) {
            throw ValidationError(
                "BoolFunc: table has " + std::to_string(table_.size()) + " rows, expected " + std::to_string(rows));
        }
        uint64_t limit = uint64_t{1} << arity_out_;
        for (size_t x = 0; x < table_.size(); x++) {
            if (table_[x] >= limit) {
                throw ValidationError(
                    "BoolFunc: table entry at index " + std::to_string(x) + " is " + std::to_string(table_[x]) +
                    ", which does not fit in " + std::to_string(arity_out_) + " output bits");
            }
        }
    }

    unsigned arity_in() const {
        return arity_in_;
    }
    unsigned arity_out() const {
        return arity_out_;
    }
    const std::vector<uint64_t> &table() const {
        return table_;
    }

    uint64_t operator()(uint64_t x) const {
        if (x >= table_.size()) {
            throw DomainError(
                "BoolFunc: input " + std::to_string(x) + " outside domain of " + std::to_string(arity_in_) + " bits");
        }
        return table_[x];
    }

    /// True when every row maps to zero.
    bool is_zero() const {
        for (uint64_t v : table_) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const BoolFunc &other) const = default;

   private:
    unsigned arity_in_;
    unsigned arity_out_;
    std::vector<uint64_t> table_;
};

inline BoolFunc make_fn(unsigned arity_in, unsigned arity_out, std::vector<uint64_t> table) {
    return BoolFunc(arity_in, arity_out, std::move(table));
}

inline BoolFunc identity_fn(unsigned width) {
    if (width == 0 || width > kMaxArity) {
        throw ValidationError("identity_fn: width must be in [1, " + std::to_string(kMaxArity) + "]");
    }
    std::vector<uint64_t> table(uint64_t{1} << width);
    for (uint64_t x = 0; x < table.size(); x++) {
        table[x] = x;
    }
    return BoolFunc(width, width, std::move(table));
}

inline BoolFunc constant_fn(unsigned arity_in, unsigned arity_out, uint64_t value) {
    if (arity_in == 0 || arity_in > kMaxArity) {
        throw ValidationError("constant_fn: arity_in must be in [1, " + std::to_string(kMaxArity) + "]");
    }
    return BoolFunc(arity_in, arity_out, std::vector<uint64_t>(uint64_t{1} << arity_in, value));
}

inline uint64_t eval(const BoolFunc &f, uint64_t x) {
    return f(x);
}

/// Returns g after f, i.e. x -> g(f(x)).
inline BoolFunc compose_fn(const BoolFunc &g, const BoolFunc &f) {
    if (f.arity_out() != g.arity_in()) {
        throw CompositionError(
            "compose_fn: inner function produces " + std::to_string(f.arity_out()) + " bits but outer expects " +
            std::to_string(g.arity_in()));
    }
    std::vector<uint64_t> table(f.table().size());
    for (size_t x = 0; x < table.size(); x++) {
        table[x] = g.table()[f.table()[x]];
    }
    return BoolFunc(f.arity_in(), g.arity_out(), std::move(table));
}

/// Deterministic random truth table.
///
/// The generator is std::mt19937_64 seeded with `seed`. Each row, in increasing index order,
/// consumes one 64-bit output and keeps its top `arity_out` bits. Both steps are fully specified
/// by the C++ standard, so tables reproduce on any conforming implementation.
inline BoolFunc random_fn(unsigned arity_in, unsigned arity_out, uint64_t seed) {
    if (arity_in == 0 || arity_in > kMaxArity || arity_out == 0 || arity_out > kMaxArity) {
        throw ValidationError("random_fn: arities must be in [1, " + std::to_string(kMaxArity) + "]");
    }
    std::mt19937_64 rng(seed);
    std::vector<uint64_t> table(uint64_t{1} << arity_in);
    for (auto &entry : table) {
        entry = rng() >> (64 - arity_out);
    }
    return BoolFunc(arity_in, arity_out, std::move(table));
}

}  // namespace revcox

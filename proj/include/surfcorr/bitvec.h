// Copyright 2026 The surfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SURFCORR_BITVEC_H
#define SURFCORR_BITVEC_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace surfcorr {

/// Fixed-length packed bit sequence; bit i lives in word i/64 at position i%64.
/// Unused high bits of the last word are always zero.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    static BitVec from_string(std::string_view bits);
    static BitVec from_indices(size_t num_bits, std::span<const size_t> ones);

    size_t size() const { return num_bits_; }
    size_t num_words() const { return words_.size(); }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool value) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }
    void clear();

    BitVec &operator^=(const BitVec &other);
    friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
    bool operator==(const BitVec &other) const = default;
    auto operator<=>(const BitVec &other) const = default;

    bool any() const;
    size_t popcount() const;
    /// Index of the lowest set bit, or size() when none is set.
    size_t first_one() const;
    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    bool dot(const BitVec &other) const;
    std::vector<size_t> ones() const;

    /// Copies `count` bits starting at `src_offset` of `src` into this vector at `dst_offset`.
    void copy_bits(const BitVec &src, size_t src_offset, size_t dst_offset, size_t count);
    BitVec slice(size_t offset, size_t count) const;

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    std::string str() const;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace surfcorr

#endif

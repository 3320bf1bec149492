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

#include "surfcorr/bitvec.h"

#include "surfcorr/errors.h"

namespace surfcorr {

BitVec BitVec::from_string(std::string_view bits) {
    BitVec out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            out.set(i, true);
        } else if (bits[i] != '0') {
            throw ContractViolation("bit string may only contain '0' and '1', got '" + std::string(1, bits[i]) + "'");
        }
    }
    return out;
}

BitVec BitVec::from_indices(size_t num_bits, std::span<const size_t> ones) {
    BitVec out(num_bits);
    for (size_t i : ones) {
        if (i >= num_bits) {
            throw ContractViolation("bit index " + std::to_string(i) + " out of range " + std::to_string(num_bits));
        }
        out.flip(i);
    }
    return out;
}

void BitVec::clear() {
    for (auto &w : words_) {
        w = 0;
    }
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.num_bits_ != num_bits_) {
        throw ContractViolation("BitVec size mismatch: " + std::to_string(num_bits_) + " vs " +
                                std::to_string(other.num_bits_));
    }
    for (size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

bool BitVec::any() const {
    for (auto w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVec::popcount() const {
    size_t total = 0;
    for (auto w : words_) {
        total += std::popcount(w);
    }
    return total;
}

size_t BitVec::first_one() const {
    for (size_t i = 0; i < words_.size(); ++i) {
        if (words_[i]) {
            return i * 64 + std::countr_zero(words_[i]);
        }
    }
    return num_bits_;
}

bool BitVec::dot(const BitVec &other) const {
    if (other.num_bits_ != num_bits_) {
        throw ContractViolation("BitVec size mismatch in dot product");
    }
    uint64_t acc = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t w = words_[i];
        while (w) {
            out.push_back(i * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

void BitVec::copy_bits(const BitVec &src, size_t src_offset, size_t dst_offset, size_t count) {
    if (src_offset + count > src.num_bits_ || dst_offset + count > num_bits_) {
        throw ContractViolation("BitVec::copy_bits range out of bounds");
    }
    // Word-aligned fast path covers the common symplectic layouts.
    if ((src_offset & 63) == 0 && (dst_offset & 63) == 0) {
        size_t full = count / 64;
        for (size_t i = 0; i < full; ++i) {
            words_[(dst_offset >> 6) + i] = src.words_[(src_offset >> 6) + i];
        }
        for (size_t i = full * 64; i < count; ++i) {
            set(dst_offset + i, src.get(src_offset + i));
        }
        return;
    }
    for (size_t i = 0; i < count; ++i) {
        set(dst_offset + i, src.get(src_offset + i));
    }
}

BitVec BitVec::slice(size_t offset, size_t count) const {
    BitVec out(count);
    out.copy_bits(*this, offset, 0, count);
    return out;
}

std::string BitVec::str() const {
    std::string out(num_bits_, '0');
    for (size_t i = 0; i < num_bits_; ++i) {
        if (get(i)) {
            out[i] = '1';
        }
    }
    return out;
}

}  // namespace surfcorr

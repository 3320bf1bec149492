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

#include <gtest/gtest.h>

#include "surfcorr/rng.h"

namespace surfcorr {
namespace {

TEST(BitVecTest, StringRoundTrip) {
    BitVec v = BitVec::from_string("0110001");
    EXPECT_EQ(v.size(), 7u);
    EXPECT_EQ(v.str(), "0110001");
    EXPECT_EQ(v.popcount(), 3u);
    EXPECT_EQ(v.first_one(), 1u);
    EXPECT_EQ(v.ones(), (std::vector<size_t>{1, 2, 6}));
}

TEST(BitVecTest, EmptyHasNoOnes) {
    BitVec v(130);
    EXPECT_FALSE(v.any());
    EXPECT_EQ(v.first_one(), 130u);
    v.set(129, true);
    EXPECT_EQ(v.first_one(), 129u);
    v.flip(129);
    EXPECT_FALSE(v.any());
}

TEST(BitVecTest, XorAndDotMatchBitwiseLoops) {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + rng() % 300;
        BitVec a(n), b(n);
        for (size_t i = 0; i < n; ++i) {
            a.set(i, rng() & 1);
            b.set(i, rng() & 1);
        }
        BitVec c = a ^ b;
        bool parity = false;
        for (size_t i = 0; i < n; ++i) {
            EXPECT_EQ(c.get(i), a.get(i) != b.get(i));
            parity ^= a.get(i) && b.get(i);
        }
        EXPECT_EQ(a.dot(b), parity);
    }
}

TEST(BitVecTest, CopyBitsAndSlice) {
    Rng rng(11);
    BitVec src(200);
    for (size_t i = 0; i < 200; ++i) src.set(i, rng() & 1);
    BitVec dst(150);
    dst.copy_bits(src, 37, 5, 100);
    for (size_t i = 0; i < 100; ++i) EXPECT_EQ(dst.get(5 + i), src.get(37 + i));
    BitVec s = src.slice(63, 70);
    for (size_t i = 0; i < 70; ++i) EXPECT_EQ(s.get(i), src.get(63 + i));
}

}  // namespace
}  // namespace surfcorr

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

#ifndef SURFCORR_GF2_H
#define SURFCORR_GF2_H

#include <optional>
#include <vector>

#include "surfcorr/bitvec.h"

namespace surfcorr {

/// Incremental Gaussian elimination over GF(2) with optional combination tracking.
///
/// Rows are kept fully reduced: each pivot column is set in exactly one stored row.
/// When tracking is on, every stored row remembers which inserted rows XOR to it.
class Gf2Eliminator {
   public:
    /// `max_rows` > 0 enables combination tracking for up to that many inserted rows.
    explicit Gf2Eliminator(size_t width, size_t max_rows = 0);

    struct InsertResult {
        bool independent;
        /// With tracking: the combination of inserted rows that produced the reduced row.
        /// For a dependent row this is a kernel element (its rows XOR to zero).
        BitVec combination;
    };

    /// Inserts a row. With tracking, inserted rows are numbered in insertion order.
    InsertResult insert(const BitVec &row);
    /// Reduces a vector against the stored rows in place; returns the combination used when tracking.
    BitVec reduce(BitVec &v) const;
    bool in_span(const BitVec &v) const;

    size_t rank() const { return rows_.size(); }
    size_t width() const { return width_; }
    const std::vector<BitVec> &rows() const { return rows_; }
    const std::vector<size_t> &pivots() const { return pivots_; }

   private:
    size_t width_;
    size_t max_rows_;
    size_t inserted_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> combos_;
    std::vector<size_t> pivots_;
};

}  // namespace surfcorr

#endif

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

#include "surfcorr/gf2.h"

#include "surfcorr/errors.h"

namespace surfcorr {

Gf2Eliminator::Gf2Eliminator(size_t width, size_t max_rows) : width_(width), max_rows_(max_rows) {}

BitVec Gf2Eliminator::reduce(BitVec &v) const {
    BitVec combo(max_rows_);
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (v.get(pivots_[r])) {
            v ^= rows_[r];
            if (max_rows_) {
                combo ^= combos_[r];
            }
        }
    }
    return combo;
}

bool Gf2Eliminator::in_span(const BitVec &v) const {
    BitVec copy = v;
    reduce(copy);
    return !copy.any();
}

Gf2Eliminator::InsertResult Gf2Eliminator::insert(const BitVec &row) {
    if (row.size() != width_) {
        throw ContractViolation("row width " + std::to_string(row.size()) + " does not match eliminator width " +
                                std::to_string(width_));
    }
    if (max_rows_ && inserted_ >= max_rows_) {
        throw ContractViolation("Gf2Eliminator combination capacity exceeded");
    }
    BitVec v = row;
    BitVec combo = reduce(v);
    if (max_rows_) {
        combo.flip(inserted_);
    }
    ++inserted_;
    size_t pivot = v.first_one();
    if (pivot == width_) {
        return {false, std::move(combo)};
    }
    // Keep the echelon form fully reduced so membership tests need one pass.
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].get(pivot)) {
            rows_[r] ^= v;
            if (max_rows_) {
                combos_[r] ^= combo;
            }
        }
    }
    rows_.push_back(v);
    pivots_.push_back(pivot);
    if (max_rows_) {
        combos_.push_back(combo);
    }
    return {true, std::move(combo)};
}

}  // namespace surfcorr

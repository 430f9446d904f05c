// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/matrix.hpp"

#include <cmath>

#include "strata/error.hpp"

namespace strata {

void ScoreMatrix::set(const DocumentId& doc, const ThoughtId& thought, double score) {
    if (!std::isfinite(score) || score < 0.0) {
        throw InternalError("score for (" + doc + ", " + thought + ") must be a finite non-negative number");
    }
    rows_[doc][thought] = score;
}

double ScoreMatrix::at(const DocumentId& doc, const ThoughtId& thought) const {
    auto row = rows_.find(doc);
    if (row != rows_.end()) {
        auto entry = row->second.find(thought);
        if (entry != row->second.end()) return entry->second;
    }
    throw IncompleteMatrixError("no score for document '" + doc + "' on thought '" + thought + "'");
}

std::optional<double> ScoreMatrix::find(const DocumentId& doc, const ThoughtId& thought) const {
    auto row = rows_.find(doc);
    if (row == rows_.end()) return std::nullopt;
    auto entry = row->second.find(thought);
    if (entry == row->second.end()) return std::nullopt;
    return entry->second;
}

bool ScoreMatrix::contains(const DocumentId& doc, const ThoughtId& thought) const {
    return find(doc, thought).has_value();
}

const ScoreMatrix::Row& ScoreMatrix::row(const DocumentId& doc) const {
    static const Row kEmpty;
    auto row = rows_.find(doc);
    return row == rows_.end() ? kEmpty : row->second;
}

std::size_t ScoreMatrix::size() const {
    std::size_t n = 0;
    for (const auto& [_, row] : rows_) n += row.size();
    return n;
}

void ScoreMatrix::merge(const ScoreMatrix& other) {
    for (const auto& [doc, row] : other.rows_) {
        for (const auto& [thought, score] : row) {
            rows_[doc][thought] = score;
        }
    }
}

}  // namespace strata

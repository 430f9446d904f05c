// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include "strata/types.hpp"

namespace strata {

/// Sparse mapping from (document, thought) to a non-negative relevance score.
///
/// Completeness is a per-operation precondition, not a global invariant:
/// comparisons demand full rows for the documents they touch and throw
/// IncompleteMatrixError naming the missing pair otherwise. This is what lets
/// progressive ranking defer scoring of weaker slots for pruned documents.
///
/// Rows are ordered maps so iteration (and thus every serialized artifact)
/// is deterministic.
class ScoreMatrix {
public:
    using Row = std::map<ThoughtId, double>;

    /// Inserts or overwrites one score. Throws InternalError on negative or
    /// non-finite scores; binary-range enforcement happens where thoughts are
    /// in scope (providers and fixture loading).
    void set(const DocumentId& doc, const ThoughtId& thought, double score);

    /// Score lookup; throws IncompleteMatrixError naming the pair if absent.
    double at(const DocumentId& doc, const ThoughtId& thought) const;

    std::optional<double> find(const DocumentId& doc, const ThoughtId& thought) const;
    bool contains(const DocumentId& doc, const ThoughtId& thought) const;

    /// Row for one document; empty row if the document has no entries.
    const Row& row(const DocumentId& doc) const;

    std::size_t size() const;
    bool empty() const { return rows_.empty(); }

    /// Copies every entry of `other` into this matrix (overwriting on key
    /// collision). Used to assemble per-layer slices into one run matrix.
    void merge(const ScoreMatrix& other);

    const std::map<DocumentId, Row>& rows() const { return rows_; }

private:
    std::map<DocumentId, Row> rows_;
};

}  // namespace strata

// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "strata/matrix.hpp"
#include "strata/types.hpp"

namespace strata {

/// Four-valued outcome of comparing two documents. Better/Worse are mutual
/// inverses under argument swap; Equivalent and Incomparable are symmetric.
enum class Ordering {
    Better,
    Worse,
    Equivalent,
    Incomparable,
};

const char* to_string(Ordering o);
std::ostream& operator<<(std::ostream& os, Ordering o);

/// Swaps the argument roles: Better <-> Worse, others unchanged.
Ordering flipped(Ordering o);

/// Numeric aggregation used by global level comparators. Scores are merit
/// (higher is better) throughout, so WorstCase takes the minimum weighted
/// score: a document is only as good as its weakest criterion.
enum class Aggregator {
    WeightedSum,   ///< sum of w_t * score
    WorstCase,     ///< min  of w_t * score
    LeastSquares,  ///< sum of w_t * score^2
};

const char* to_string(Aggregator a);

/// How one slot (strength level) compares two documents.
///
/// Local compares componentwise and is generally not total. Global compares
/// a single aggregated number and never yields Incomparable. `tolerance` is
/// an optional absolute tie width for global comparisons; the default 0
/// keeps exact-equality ties and full determinism.
struct ComparatorSpec {
    enum class Kind { Local, Global };

    Kind kind = Kind::Local;
    Aggregator aggregator = Aggregator::WeightedSum;
    double tolerance = 0.0;

    static ComparatorSpec local() { return {}; }
    static ComparatorSpec global(Aggregator a, double tolerance = 0.0) {
        return {Kind::Global, a, tolerance};
    }
};

/// One strength level of the flattened hierarchy: a non-empty set of
/// thoughts compared under one ComparatorSpec. (layer, level) record where
/// the slot came from in the nested form.
struct Slot {
    std::vector<OptionThought> thoughts;
    ComparatorSpec comparator;
    int layer = 1;
    int level = 1;
};

/// Aggregates one document's scores over a slot with the given function.
/// Every thought in the slot must be scored for `doc`.
double aggregate_slot(const ScoreMatrix& matrix, const DocumentId& doc, const Slot& slot,
                      Aggregator aggregator);

/// Compares two documents on a single slot.
///
/// Local: Equivalent iff scores match on every thought; Better iff >= on
/// every thought and > on at least one; Worse symmetric; else Incomparable.
/// Global: compares aggregates numerically, ties (within tolerance) map to
/// Equivalent.
Ordering level_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                       const Slot& slot, const ComparatorSpec& spec);

/// As above, using the slot's own comparator.
Ordering level_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                       const Slot& slot);

}  // namespace strata

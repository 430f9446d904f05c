// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/compare.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "strata/error.hpp"

namespace strata {

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Better: return "better";
        case Ordering::Worse: return "worse";
        case Ordering::Equivalent: return "equivalent";
        case Ordering::Incomparable: return "incomparable";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, Ordering o) { return os << to_string(o); }

Ordering flipped(Ordering o) {
    switch (o) {
        case Ordering::Better: return Ordering::Worse;
        case Ordering::Worse: return Ordering::Better;
        default: return o;
    }
}

const char* to_string(Aggregator a) {
    switch (a) {
        case Aggregator::WeightedSum: return "weighted-sum";
        case Aggregator::WorstCase: return "worst-case";
        case Aggregator::LeastSquares: return "least-squares";
    }
    return "?";
}

double aggregate_slot(const ScoreMatrix& matrix, const DocumentId& doc, const Slot& slot,
                      Aggregator aggregator) {
    if (slot.thoughts.empty()) {
        throw InternalError("cannot aggregate an empty slot");
    }
    switch (aggregator) {
        case Aggregator::WeightedSum: {
            double sum = 0.0;
            for (const auto& t : slot.thoughts) sum += t.weight * matrix.at(doc, t.id);
            return sum;
        }
        case Aggregator::WorstCase: {
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& t : slot.thoughts) worst = std::min(worst, t.weight * matrix.at(doc, t.id));
            return worst;
        }
        case Aggregator::LeastSquares: {
            double sum = 0.0;
            for (const auto& t : slot.thoughts) {
                const double s = matrix.at(doc, t.id);
                sum += t.weight * s * s;
            }
            return sum;
        }
    }
    throw InternalError("unknown aggregator");
}

namespace {

Ordering local_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                       const Slot& slot) {
    bool a_above = false;  // a strictly higher somewhere
    bool b_above = false;
    for (const auto& t : slot.thoughts) {
        const double sa = matrix.at(a, t.id);
        const double sb = matrix.at(b, t.id);
        if (sa > sb) a_above = true;
        if (sb > sa) b_above = true;
    }
    if (a_above && b_above) return Ordering::Incomparable;
    if (a_above) return Ordering::Better;
    if (b_above) return Ordering::Worse;
    return Ordering::Equivalent;
}

Ordering global_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                        const Slot& slot, const ComparatorSpec& spec) {
    const double ga = aggregate_slot(matrix, a, slot, spec.aggregator);
    const double gb = aggregate_slot(matrix, b, slot, spec.aggregator);
    if (std::abs(ga - gb) <= spec.tolerance) return Ordering::Equivalent;
    return ga > gb ? Ordering::Better : Ordering::Worse;
}

}  // namespace

Ordering level_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                       const Slot& slot, const ComparatorSpec& spec) {
    if (spec.kind == ComparatorSpec::Kind::Local) {
        return local_compare(matrix, a, b, slot);
    }
    return global_compare(matrix, a, b, slot, spec);
}

Ordering level_compare(const ScoreMatrix& matrix, const DocumentId& a, const DocumentId& b,
                       const Slot& slot) {
    return level_compare(matrix, a, b, slot, slot.comparator);
}

}  // namespace strata

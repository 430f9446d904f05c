// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "strata/compare.hpp"

namespace strata {

/// The flattened, ordered sequence of slots: layer-major, level-minor,
/// strongest first. Construction validates that no slot is empty and that
/// every thought id appears exactly once.
class Hierarchy {
public:
    Hierarchy() = default;
    explicit Hierarchy(std::vector<Slot> slots);

    const std::vector<Slot>& slots() const { return slots_; }
    std::size_t size() const { return slots_.size(); }
    bool empty() const { return slots_.empty(); }
    const Slot& slot(std::size_t i) const { return slots_.at(i); }

    /// The first `count` slots as a hierarchy; used by progressive ranking.
    Hierarchy prefix(std::size_t count) const;

    /// True if `id` names a thought in some slot.
    bool contains_thought(const ThoughtId& id) const;

private:
    std::vector<Slot> slots_;
};

/// One layer of the nested form: level-partitioned thoughts plus the
/// comparator its slots carry into the flat hierarchy.
struct LayerLevels {
    std::vector<std::vector<OptionThought>> levels;
    ComparatorSpec comparator;
    int layer = 1;
};

/// Flattens nested layers into the slot sequence, layer-major then
/// level-minor. Throws ConfigError on duplicate thought ids or empty levels.
Hierarchy flatten(const std::vector<LayerLevels>& layers);

/// Scans slots strongest-first and returns the first non-Equivalent outcome;
/// Incomparable at a stronger slot blocks weaker slots. Equivalent only if
/// every slot agrees.
Ordering hierarchical_compare(const ScoreMatrix& matrix, const DocumentId& a,
                              const DocumentId& b, const Hierarchy& hierarchy);

}  // namespace strata

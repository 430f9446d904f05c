// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/hierarchy.hpp"

#include <set>
#include <string>

#include "strata/error.hpp"

namespace strata {

namespace {

void validate_slots(const std::vector<Slot>& slots) {
    std::set<ThoughtId> seen;
    for (const auto& slot : slots) {
        if (slot.thoughts.empty()) {
            throw ConfigError("slot (layer " + std::to_string(slot.layer) + ", level " +
                              std::to_string(slot.level) + ") has no thoughts");
        }
        for (const auto& t : slot.thoughts) {
            if (t.id.empty()) throw ConfigError("thought with empty id in layer " + std::to_string(slot.layer));
            if (!seen.insert(t.id).second) {
                throw ConfigError("thought '" + t.id + "' appears in more than one slot");
            }
            if (t.weight < 0.0) throw ConfigError("thought '" + t.id + "' has negative weight");
        }
    }
}

}  // namespace

Hierarchy::Hierarchy(std::vector<Slot> slots) : slots_(std::move(slots)) {
    validate_slots(slots_);
}

Hierarchy Hierarchy::prefix(std::size_t count) const {
    if (count >= slots_.size()) return *this;
    return Hierarchy(std::vector<Slot>(slots_.begin(), slots_.begin() + count));
}

bool Hierarchy::contains_thought(const ThoughtId& id) const {
    for (const auto& slot : slots_) {
        for (const auto& t : slot.thoughts) {
            if (t.id == id) return true;
        }
    }
    return false;
}

Hierarchy flatten(const std::vector<LayerLevels>& layers) {
    std::vector<Slot> slots;
    for (const auto& layer : layers) {
        if (layer.levels.empty()) {
            throw ConfigError("layer " + std::to_string(layer.layer) + " has no levels");
        }
        int level = 1;
        for (const auto& thoughts : layer.levels) {
            Slot slot;
            slot.thoughts = thoughts;
            slot.comparator = layer.comparator;
            slot.layer = layer.layer;
            slot.level = level++;
            // consistent provenance even when the caller left defaults in place
            for (auto& t : slot.thoughts) {
                t.layer = slot.layer;
                t.level = slot.level;
            }
            slots.push_back(std::move(slot));
        }
    }
    return Hierarchy(std::move(slots));
}

Ordering hierarchical_compare(const ScoreMatrix& matrix, const DocumentId& a,
                              const DocumentId& b, const Hierarchy& hierarchy) {
    for (const auto& slot : hierarchy.slots()) {
        const Ordering o = level_compare(matrix, a, b, slot);
        if (o != Ordering::Equivalent) return o;
    }
    return Ordering::Equivalent;
}

}  // namespace strata

// Copyright 2026 The Strata Authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/ranking.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "strata/error.hpp"

namespace strata {

std::vector<DocumentId> hard_filter(const std::vector<DocumentId>& corpus,
                                    const ScoreMatrix& matrix, const Slot& hard_slot,
                                    const FilterMode& mode) {
    const int slot_size = static_cast<int>(hard_slot.thoughts.size());
    if (mode.kind == FilterMode::Kind::AtLeast) {
        if (mode.k < 1) throw ConfigError("at-least filter requires k >= 1");
        if (mode.k > slot_size) {
            throw ConfigError("at-least filter k=" + std::to_string(mode.k) +
                              " exceeds slot size " + std::to_string(slot_size));
        }
    }
    std::vector<DocumentId> kept;
    for (const auto& doc : corpus) {
        int positives = 0;
        for (const auto& t : hard_slot.thoughts) {
            if (matrix.at(doc, t.id) > 0.0) ++positives;
        }
        const bool pass = mode.kind == FilterMode::Kind::All ? positives == slot_size
                                                             : positives >= mode.k;
        if (pass) kept.push_back(doc);
    }
    return kept;
}

namespace {

/// Pairwise Better edges: better[i][j] true iff docs[i] strictly beats docs[j].
std::vector<std::vector<bool>> dominance(const std::vector<DocumentId>& docs,
                                         const ScoreMatrix& matrix, const Hierarchy& hierarchy) {
    const std::size_t n = docs.size();
    std::vector<std::vector<bool>> better(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            switch (hierarchical_compare(matrix, docs[i], docs[j], hierarchy)) {
                case Ordering::Better: better[i][j] = true; break;
                case Ordering::Worse: better[j][i] = true; break;
                default: break;
            }
        }
    }
    return better;
}

DepthMap depths_from_dominance(const std::vector<DocumentId>& docs,
                               const std::vector<std::vector<bool>>& better) {
    const std::size_t n = docs.size();
    std::vector<int> depth(n, -1);
    std::vector<char> on_stack(n, 0);

    // longest path over incoming Better edges, memoized DFS with cycle check
    std::function<int(std::size_t)> solve = [&](std::size_t j) -> int {
        if (depth[j] >= 0) return depth[j];
        if (on_stack[j]) {
            throw InternalError("dominance cycle detected at document '" + docs[j] + "'");
        }
        on_stack[j] = 1;
        int longest = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (better[i][j]) longest = std::max(longest, solve(i) + 1);
        }
        on_stack[j] = 0;
        depth[j] = longest;
        return longest;
    };

    DepthMap result;
    for (std::size_t j = 0; j < n; ++j) result[docs[j]] = solve(j);
    return result;
}

RankedOutput rank_by_depth(const std::vector<DocumentId>& docs, DepthMap depths, int k) {
    RankedOutput out;
    out.k = k;
    out.depths = std::move(depths);
    for (const auto& doc : docs) {
        if (out.depths.at(doc) < k) out.survivors.push_back(doc);
    }
    // ascending depth, input order within a tier
    std::stable_sort(out.survivors.begin(), out.survivors.end(),
                     [&](const DocumentId& a, const DocumentId& b) {
                         return out.depths.at(a) < out.depths.at(b);
                     });
    return out;
}

}  // namespace

std::vector<DocumentId> maximal_set(const std::vector<DocumentId>& docs,
                                    const ScoreMatrix& matrix, const Hierarchy& hierarchy) {
    const auto better = dominance(docs, matrix, hierarchy);
    std::vector<DocumentId> result;
    for (std::size_t j = 0; j < docs.size(); ++j) {
        bool dominated = false;
        for (std::size_t i = 0; i < docs.size() && !dominated; ++i) {
            dominated = better[i][j];
        }
        if (!dominated) result.push_back(docs[j]);
    }
    return result;
}

DepthMap depth_map(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                   const Hierarchy& hierarchy) {
    return depths_from_dominance(docs, dominance(docs, matrix, hierarchy));
}

RankedOutput top_k(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                   const Hierarchy& hierarchy, int k) {
    if (k < 1) throw ConfigError("top-k requires k >= 1");
    return rank_by_depth(docs, depth_map(docs, matrix, hierarchy), k);
}

RankedOutput progressive_top_k(const std::vector<DocumentId>& docs, const ScoreMatrix& matrix,
                               const Hierarchy& hierarchy, int k) {
    if (k < 1) throw ConfigError("top-k requires k >= 1");
    std::vector<DocumentId> survivors = docs;
    DepthMap depths;
    for (const auto& doc : survivors) depths[doc] = 0;
    for (std::size_t j = 1; j <= hierarchy.size(); ++j) {
        const Hierarchy restricted = hierarchy.prefix(j);
        depths = depth_map(survivors, matrix, restricted);
        std::vector<DocumentId> next;
        for (const auto& doc : survivors) {
            if (depths.at(doc) < k) next.push_back(doc);
        }
        survivors = std::move(next);
    }
    DepthMap survivor_depths;
    for (const auto& doc : survivors) survivor_depths[doc] = depths.at(doc);
    return rank_by_depth(survivors, std::move(survivor_depths), k);
}

}  // namespace strata

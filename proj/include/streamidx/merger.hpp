#pragma once

#include <cstdint>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

// Offline fine-to-coarse construction. Works on a value snapshot of the fine
// codebook: each Active slot becomes a unit (codeword + EMA count), the
// working set starts as one singleton prototype per unit, and greedy merging
// by affinity shrinks it to the target size. Silhouette pruning then ejects
// poorly placed units, which re-enter the next merging round, until the
// pruned set is empty or the round budget runs out.
struct MergeState {
    struct Unit {
        Vec codeword;
        double ema_count = 0.0;
        std::uint32_t fine_slot = 0;
    };
    std::vector<Unit> units;                    // frozen per-slot data
    std::vector<CoarsePrototype> working;       // members hold unit ids
    std::size_t target_size = 1;
    std::uint32_t round = 0;
    std::uint32_t max_rounds = 10;

    double total_count() const;
};

MergeState make_merge_state(const FineCodebook& fine, std::size_t target_size,
                            std::uint32_t max_rounds = 10);

// cosine(x, y) - lambda * min(N_x, N_y): the size term steers the greedy
// merge toward absorbing small prototypes first.
double affinity(const CoarsePrototype& x, const CoarsePrototype& y, const IndexConfig& cfg);

// Count-weighted average; members are concatenated (and kept sorted).
CoarsePrototype merge_pair(const CoarsePrototype& x, const CoarsePrototype& y);

// Repeatedly merges the highest-affinity pair (ties: lexicographically
// smallest index pair over the current working order) until the working set
// is down to target_size. No-op when already at or below target.
void merge_round(MergeState& state, const IndexConfig& cfg);

// Silhouette of one unit inside its current prototype, using distances
// d(u,v) = 1 - affinity(u,v) between units (each with its own EMA count).
// a = mean distance to co-members, b = smallest mean distance to another
// prototype's members; returns (b - a) / max(a, b). Singletons score 0.
double silhouette(std::uint32_t unit_id, const MergeState& state, const IndexConfig& cfg);

// Removes every member of a multi-member prototype whose silhouette falls
// below cfg.prune_threshold (scores computed on the frozen pre-prune state),
// recomputes the surviving prototypes, and deletes emptied ones. Returns the
// pruned unit ids, ascending. The caller reintroduces them via reconnect().
std::vector<std::uint32_t> prune(MergeState& state, const IndexConfig& cfg);

// Reintroduces pruned units as singleton prototypes (ascending id order).
void reconnect(MergeState& state, const std::vector<std::uint32_t>& pruned);

// Full merging / pruning / reconnection loop. The final round always skips
// pruning so the result has exactly target_size prototypes and every Active
// fine slot has exactly one coarse parent.
CoarseCodebook build_hierarchy(const FineCodebook& fine, const IndexConfig& cfg,
                               std::size_t target_size, std::uint32_t max_rounds = 10);

}  // namespace streamidx

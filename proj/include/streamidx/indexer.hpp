#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "streamidx/batcher.hpp"
#include "streamidx/types.hpp"

namespace streamidx {

// Per-batch matching outcome. matched/failed partition the batch by the
// threshold gate: best_score >= tau joins, everything else (including every
// item when no Active slot exists) fails.
struct MatchResult {
    static constexpr std::int64_t kNoSlot = -1;
    std::vector<std::int64_t> best_slot;   // parallel to batch; kNoSlot if no candidate
    std::vector<double> best_score;        // parallel to batch; undefined when kNoSlot
    std::vector<std::size_t> matched;      // batch indices, ascending
    std::vector<std::size_t> failed;       // batch indices, ascending
};

// Argmax of cosine over Active slots, ties toward the lowest slot index.
MatchResult match_batch(const Batch& batch, const FineCodebook& fine, const IndexConfig& cfg);

// EMA update applied to every Active slot, including slots that won nothing
// this step (their mass decays, which is what lets the occupancy monitor
// observe falling occupancy):
//   S_k <- gamma*S_k + (1-gamma) * sum of matched embeddings
//   N_k <- gamma*N_k + (1-gamma) * matched count
// then codeword <- S_k / N_k wherever N_k > 0.
void update_clusters(const Batch& batch, const MatchResult& match, FineCodebook& fine,
                     const IndexConfig& cfg);

struct UfGroup {
    std::vector<std::size_t> members;  // indices into the failed span, ascending
    Vec mean;                          // arithmetic mean of member embeddings
};

// Connected components of the thresholded similarity graph over the failed
// items (cosine >= tau_prime), plus the validity split by min_cluster_size.
struct UnionFindResult {
    std::vector<UfGroup> groups;            // all components, by smallest member
    std::vector<std::size_t> valid_groups;  // indices into groups
    std::vector<std::size_t> rejected;      // failed-span indices in no valid group
};

UnionFindResult union_find_extend(std::span<const ItemRecord> failed, const IndexConfig& cfg);

// A valid new cluster ready for insertion.
struct PendingCluster {
    Vec embedding_sum;                     // sum of member embeddings
    std::size_t member_count = 0;
    std::uint64_t min_item_id = 0;         // tie-break key
    std::vector<std::uint64_t> member_ids;
};

// Fill-then-append: new clusters are ordered by member count descending
// (ties: smallest member item id), placed into Empty slots in ascending
// index order, and appended past the tail once those run out. Pre-existing
// Active slots are never touched. Returns the assigned slot index for each
// input cluster, parallel to the input order.
std::vector<std::uint32_t> fill_then_append(FineCodebook& fine,
                                            const std::vector<PendingCluster>& clusters);

struct StepReport {
    std::uint64_t step = 0;
    std::size_t matched = 0;
    std::size_t new_clusters = 0;
    std::size_t resets = 0;
    std::size_t recycled = 0;
    std::size_t active_slots = 0;
};

struct StepHooks {
    // Fired after matching, before any mutation; the codebook argument is the
    // state the decisions were made against.
    std::function<void(const Batch&, const MatchResult&, const FineCodebook&)> on_match;

    // Fired at the end of the step.
    std::function<void(const StepReport&, const FineCodebook&)> on_step_end;
};

// One full update step: match -> EMA update -> occupancy sweep -> union-find
// extension -> fill-then-append -> recycle rejects. Matched items and new
// cluster members are recorded in the assignment index.
StepReport run_step(const Batch& batch, FineCodebook& fine, AssignmentIndex& index,
                    TagBatcher& batcher, const IndexConfig& cfg,
                    const StepHooks* hooks = nullptr);

}  // namespace streamidx

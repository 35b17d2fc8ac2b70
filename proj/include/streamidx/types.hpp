#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace streamidx {

using Vec = std::vector<double>;

// One element of the input stream: an embedding plus routing metadata.
// Popularity is a synthetic view count consumed only by the evaluator.
struct ItemRecord {
    std::uint64_t item_id = 0;
    Vec embedding;
    std::uint32_t tag = 0;
    std::uint64_t popularity = 0;
};

using Batch = std::vector<ItemRecord>;

enum class SlotState : std::uint8_t { Empty = 0, Active = 1 };

// One fine-codebook entry. While Active with ema_count > 0 the codeword is
// the EMA mean: codeword == ema_sum / ema_count (see audit_codeword_identity).
// Empty slots keep all-zero vectors and zero count so they can be refilled
// in place without disturbing the indices of their neighbors.
struct ClusterSlot {
    Vec codeword;
    Vec ema_sum;
    double ema_count = 0.0;
    SlotState state = SlotState::Empty;
    std::uint64_t created_step = 0;
    std::optional<std::uint64_t> growing_since;
};

// Dynamically sized fine codebook. Slot indices are stable: slots are only
// ever reset to Empty or refilled in place; Active entries never move.
struct FineCodebook {
    std::vector<ClusterSlot> slots;
    std::uint64_t step = 0;

    // Value snapshot for read-only consumers (evaluator, query serving).
    // The training pipeline is single-writer; snapshots are safe to share.
    FineCodebook snapshot() const { return *this; }
};

std::size_t active_count(const FineCodebook& fine);
std::vector<std::uint32_t> empty_slot_indices(const FineCodebook& fine);

struct AuditReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_rel_err = 0.0;
};

// Verifies codeword == ema_sum / ema_count (vector-norm relative error) for
// every Active slot with positive count, and the all-zero contract for Empty
// slots. Cheap enough to run after every step in paranoid/test modes.
AuditReport audit_codeword_identity(const FineCodebook& fine, double rel_tol = 1e-9);

// Run-wide hyperparameters. Defaults follow the deployed configuration.
struct IndexConfig {
    double tau = 0.88;               // match threshold: cosine >= tau joins a cluster
    double gamma = 0.9993;           // EMA decay factor
    double tau_prime = 0.83;         // union-find edge threshold over failed items
    std::uint32_t min_cluster_size = 4;  // m: smallest valid new cluster
    double eps1 = 0.25;              // occupancy: below -> underfilled (reset)
    double eps2 = 0.2644;            // occupancy: at or above -> stable
    std::uint64_t growth_window = 80;    // M: steps a growing slot may linger
    double lambda = 0.01;            // merge affinity size penalty weight
    double prune_threshold = 0.0;    // r: silhouette floor for merged members
    std::size_t batch_size = 20480;
    std::size_t dim = 64;

    std::size_t recycle_capacity() const { return 10 * batch_size; }

    // Throws std::invalid_argument naming the offending field.
    // tau may go down to -1 and tau_prime up to 2 so the degenerate
    // always-match / never-extend configuration stays expressible.
    void validate() const;
};

// Merged coarse prototype: count-weighted average of the fine codewords
// listed in members (fine-slot indices, disjoint across prototypes).
struct CoarsePrototype {
    Vec embedding;
    double ema_count = 0.0;
    std::vector<std::uint32_t> members;
};

struct CoarseCodebook {
    std::vector<CoarsePrototype> prototypes;

    // Dense fine-slot -> prototype-index map (kUnmapped where absent).
    static constexpr std::uint32_t kUnmapped = 0xFFFFFFFFu;
    std::vector<std::uint32_t> fine_to_coarse(std::size_t fine_slot_count) const;
};

// Bidirectional item <-> (coarse, fine) code mapping. forward and reverse
// stay mutually consistent through every mutation.
class AssignmentIndex {
public:
    static constexpr std::uint32_t kNoCoarse = 0xFFFFFFFFu;

    struct Codes {
        std::uint32_t coarse = kNoCoarse;
        std::uint32_t fine = 0;
    };

    // Inserts or reassigns; a previous assignment is unlinked first.
    void assign(std::uint64_t item_id, std::uint32_t coarse, std::uint32_t fine);
    std::optional<Codes> lookup(std::uint64_t item_id) const;
    const std::vector<std::uint64_t>* items_in(std::uint32_t fine) const;

    // Drops every record assigned to the given fine slot; returns the items.
    std::vector<std::uint64_t> clear_fine(std::uint32_t fine);
    void erase(std::uint64_t item_id);

    std::size_t size() const { return forward_.size(); }
    bool empty() const { return forward_.empty(); }

    // Entries sorted by item id; the canonical order for persistence.
    std::vector<std::pair<std::uint64_t, Codes>> sorted_entries() const;

    // O(n) structural check that forward and reverse agree record-for-record.
    bool consistent() const;

private:
    std::unordered_map<std::uint64_t, Codes> forward_;
    std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> reverse_;
};

}  // namespace streamidx

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

// Groups the incoming stream into tag-homogeneous batches and holds the
// recycle pool of twice-rejected items. Single-producer, single-consumer;
// not internally synchronized.
//
// Recycled items re-enter at the front of their tag queue at the next push,
// so they are emitted no later than any fresh same-tag item that arrived
// after their recycling. The recycle pool is bounded; on overflow the oldest
// entries are dropped.
class TagBatcher {
public:
    TagBatcher(std::size_t batch_size, std::size_t recycle_capacity);

    // Appends the item to its tag queue (after re-entering any pending
    // recycled items). Returns the drained queue once it reaches batch_size.
    std::optional<Batch> push(ItemRecord item);

    // Items rejected by both matching and union-find validity, in rejection
    // order (oldest first).
    void recycle(std::vector<ItemRecord> items);

    // End-of-stream drain: every non-empty tag queue as an undersized batch
    // (ascending tag order), then the recycle pool grouped by tag.
    std::vector<Batch> flush();

    std::size_t pending_items() const;
    std::size_t recycle_pending() const { return recycle_.size(); }
    std::uint64_t recycle_dropped() const { return recycle_dropped_; }

private:
    void reenter_recycled();

    std::size_t batch_size_;
    std::size_t recycle_capacity_;
    std::map<std::uint32_t, std::deque<ItemRecord>> queues_;
    std::deque<ItemRecord> recycle_;
    std::uint64_t recycle_dropped_ = 0;
};

}  // namespace streamidx

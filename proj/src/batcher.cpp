#include "streamidx/batcher.hpp"

#include <stdexcept>

namespace streamidx {

TagBatcher::TagBatcher(std::size_t batch_size, std::size_t recycle_capacity)
    : batch_size_(batch_size), recycle_capacity_(recycle_capacity) {
    if (batch_size_ == 0) throw std::invalid_argument("TagBatcher: batch_size must be positive");
}

void TagBatcher::reenter_recycled() {
    // Oldest recycled item must end up frontmost, so walk newest-first and
    // push each one ahead of the previous.
    while (!recycle_.empty()) {
        ItemRecord item = std::move(recycle_.back());
        recycle_.pop_back();
        queues_[item.tag].push_front(std::move(item));
    }
}

std::optional<Batch> TagBatcher::push(ItemRecord item) {
    reenter_recycled();
    auto& queue = queues_[item.tag];
    const std::uint32_t tag = item.tag;
    queue.push_back(std::move(item));
    if (queue.size() < batch_size_) return std::nullopt;
    Batch batch(std::make_move_iterator(queue.begin()), std::make_move_iterator(queue.end()));
    queues_.erase(tag);
    return batch;
}

void TagBatcher::recycle(std::vector<ItemRecord> items) {
    for (auto& item : items) {
        recycle_.push_back(std::move(item));
        if (recycle_.size() > recycle_capacity_) {
            recycle_.pop_front();
            ++recycle_dropped_;
        }
    }
}

std::vector<Batch> TagBatcher::flush() {
    std::vector<Batch> batches;
    for (auto& [tag, queue] : queues_) {
        if (queue.empty()) continue;
        batches.emplace_back(std::make_move_iterator(queue.begin()),
                             std::make_move_iterator(queue.end()));
    }
    queues_.clear();
    // Recycle remnants last, grouped by tag, FIFO within each group.
    std::map<std::uint32_t, Batch> grouped;
    for (auto& item : recycle_) grouped[item.tag].push_back(std::move(item));
    recycle_.clear();
    for (auto& [tag, batch] : grouped) batches.push_back(std::move(batch));
    return batches;
}

std::size_t TagBatcher::pending_items() const {
    std::size_t n = recycle_.size();
    for (const auto& [tag, queue] : queues_) n += queue.size();
    return n;
}

}  // namespace streamidx

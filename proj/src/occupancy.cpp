#include "streamidx/occupancy.hpp"

#include <algorithm>
#include <stdexcept>

namespace streamidx {

SlotStatus classify(const ClusterSlot& slot, const IndexConfig& cfg) {
    if (slot.state != SlotState::Active)
        throw std::domain_error("classify: slot is not Active");
    if (slot.ema_count < cfg.eps1) return SlotStatus::Underfilled;
    if (slot.ema_count < cfg.eps2) return SlotStatus::Growing;
    return SlotStatus::Stable;
}

namespace {

void reset_slot(ClusterSlot& slot) {
    std::fill(slot.codeword.begin(), slot.codeword.end(), 0.0);
    std::fill(slot.ema_sum.begin(), slot.ema_sum.end(), 0.0);
    slot.ema_count = 0.0;
    slot.state = SlotState::Empty;
    slot.growing_since.reset();
}

}  // namespace

std::vector<std::uint32_t> sweep(FineCodebook& fine, const IndexConfig& cfg,
                                 AssignmentIndex* index) {
    std::vector<std::uint32_t> resets;
    for (std::uint32_t k = 0; k < fine.slots.size(); ++k) {
        ClusterSlot& slot = fine.slots[k];
        if (slot.state != SlotState::Active) continue;
        switch (classify(slot, cfg)) {
            case SlotStatus::Underfilled:
                reset_slot(slot);
                resets.push_back(k);
                break;
            case SlotStatus::Stable:
                slot.growing_since.reset();
                break;
            case SlotStatus::Growing:
                if (!slot.growing_since) {
                    slot.growing_since = fine.step;
                } else if (fine.step - *slot.growing_since >= cfg.growth_window) {
                    reset_slot(slot);
                    resets.push_back(k);
                }
                break;
        }
    }
    if (index)
        for (std::uint32_t k : resets) index->clear_fine(k);
    return resets;
}

}  // namespace streamidx

#include "streamidx/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "streamidx/similarity.hpp"

namespace streamidx {

std::size_t active_count(const FineCodebook& fine) {
    std::size_t n = 0;
    for (const auto& s : fine.slots)
        if (s.state == SlotState::Active) ++n;
    return n;
}

std::vector<std::uint32_t> empty_slot_indices(const FineCodebook& fine) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < fine.slots.size(); ++i)
        if (fine.slots[i].state == SlotState::Empty) out.push_back(i);
    return out;
}

AuditReport audit_codeword_identity(const FineCodebook& fine, double rel_tol) {
    AuditReport rep;
    for (const auto& slot : fine.slots) {
        if (slot.state == SlotState::Empty) {
            bool zero = slot.ema_count == 0.0;
            for (double v : slot.codeword) zero = zero && v == 0.0;
            for (double v : slot.ema_sum) zero = zero && v == 0.0;
            if (!zero) ++rep.violations;
            continue;
        }
        if (!(slot.ema_count >= 0.0) || !std::isfinite(slot.ema_count)) {
            ++rep.violations;
            continue;
        }
        if (slot.ema_count == 0.0) continue;
        ++rep.checked;
        double err2 = 0.0;
        double ref2 = 0.0;
        for (std::size_t i = 0; i < slot.codeword.size(); ++i) {
            const double expect = slot.ema_sum[i] / slot.ema_count;
            const double diff = slot.codeword[i] - expect;
            err2 += diff * diff;
            ref2 += expect * expect;
        }
        const double rel = std::sqrt(err2) / std::max(std::sqrt(ref2), 1e-300);
        rep.worst_rel_err = std::max(rep.worst_rel_err, rel);
        if (rel > rel_tol) ++rep.violations;
    }
    return rep;
}

void IndexConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("IndexConfig: " + msg); };
    if (!(tau >= -1.0 && tau <= 1.0)) fail("tau must be in [-1,1]");
    if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must be in (0,1)");
    if (!(tau_prime >= 0.0 && tau_prime <= 2.0)) fail("tau_prime must be in [0,2]");
    if (min_cluster_size < 1) fail("min_cluster_size must be positive");
    if (!(eps1 >= 0.0)) fail("eps1 must be >= 0");
    if (!(eps1 <= eps2)) fail("eps1 must be <= eps2");
    if (growth_window < 1) fail("growth_window must be positive");
    if (!(lambda >= 0.0)) fail("lambda must be >= 0");
    if (!(prune_threshold >= -1.0 && prune_threshold <= 1.0)) fail("prune_threshold must be in [-1,1]");
    if (batch_size < 1) fail("batch_size must be positive");
    if (dim < 1) fail("dim must be positive");
}

std::vector<std::uint32_t> CoarseCodebook::fine_to_coarse(std::size_t fine_slot_count) const {
    std::vector<std::uint32_t> map(fine_slot_count, kUnmapped);
    for (std::uint32_t p = 0; p < prototypes.size(); ++p)
        for (std::uint32_t slot : prototypes[p].members)
            if (slot < fine_slot_count) map[slot] = p;
    return map;
}

void AssignmentIndex::assign(std::uint64_t item_id, std::uint32_t coarse, std::uint32_t fine) {
    erase(item_id);
    forward_[item_id] = Codes{coarse, fine};
    reverse_[fine].push_back(item_id);
}

std::optional<AssignmentIndex::Codes> AssignmentIndex::lookup(std::uint64_t item_id) const {
    auto it = forward_.find(item_id);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::uint64_t>* AssignmentIndex::items_in(std::uint32_t fine) const {
    auto it = reverse_.find(fine);
    if (it == reverse_.end()) return nullptr;
    return &it->second;
}

std::vector<std::uint64_t> AssignmentIndex::clear_fine(std::uint32_t fine) {
    std::vector<std::uint64_t> items;
    auto it = reverse_.find(fine);
    if (it == reverse_.end()) return items;
    items = std::move(it->second);
    reverse_.erase(it);
    for (std::uint64_t id : items) forward_.erase(id);
    return items;
}

void AssignmentIndex::erase(std::uint64_t item_id) {
    auto it = forward_.find(item_id);
    if (it == forward_.end()) return;
    auto rev = reverse_.find(it->second.fine);
    if (rev != reverse_.end()) {
        auto& list = rev->second;
        list.erase(std::remove(list.begin(), list.end(), item_id), list.end());
        if (list.empty()) reverse_.erase(rev);
    }
    forward_.erase(it);
}

std::vector<std::pair<std::uint64_t, AssignmentIndex::Codes>> AssignmentIndex::sorted_entries() const {
    std::vector<std::pair<std::uint64_t, Codes>> out(forward_.begin(), forward_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

bool AssignmentIndex::consistent() const {
    std::size_t rev_total = 0;
    for (const auto& [fine, items] : reverse_) {
        rev_total += items.size();
        for (std::uint64_t id : items) {
            auto it = forward_.find(id);
            if (it == forward_.end() || it->second.fine != fine) return false;
        }
    }
    return rev_total == forward_.size();
}

}  // namespace streamidx

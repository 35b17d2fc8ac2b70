#include "streamidx/indexer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "streamidx/occupancy.hpp"
#include "streamidx/similarity.hpp"

namespace streamidx {

namespace {

// Disjoint-set with path halving.
struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a; else parent[a] = b;
    }
};

}  // namespace

MatchResult match_batch(const Batch& batch, const FineCodebook& fine, const IndexConfig& cfg) {
    if (batch.empty()) throw std::invalid_argument("match_batch: empty batch");

    // Candidate slots and their inverse norms, fixed for the whole batch.
    std::vector<std::uint32_t> active;
    std::vector<double> inv_norm;
    active.reserve(fine.slots.size());
    for (std::uint32_t k = 0; k < fine.slots.size(); ++k) {
        const ClusterSlot& slot = fine.slots[k];
        if (slot.state != SlotState::Active) continue;
        const double n = norm(slot.codeword);
        if (n == 0.0) continue;  // Active slots with zero count pending first update
        active.push_back(k);
        inv_norm.push_back(1.0 / n);
    }

    MatchResult result;
    result.best_slot.assign(batch.size(), MatchResult::kNoSlot);
    result.best_score.assign(batch.size(), 0.0);

    for (std::size_t i = 0; i < batch.size(); ++i) {
        const Vec& e = batch[i].embedding;
        const double e_inv = 1.0 / norm(e);
        double best = -2.0;
        std::int64_t best_k = MatchResult::kNoSlot;
        for (std::size_t a = 0; a < active.size(); ++a) {
            const double score = dot(e, fine.slots[active[a]].codeword) * e_inv * inv_norm[a];
            if (score > best) {  // strict: ties keep the lowest slot index
                best = score;
                best_k = active[a];
            }
        }
        result.best_slot[i] = best_k;
        result.best_score[i] = best;
        if (best_k != MatchResult::kNoSlot && best >= cfg.tau)
            result.matched.push_back(i);
        else
            result.failed.push_back(i);
    }
    return result;
}

void update_clusters(const Batch& batch, const MatchResult& match, FineCodebook& fine,
                     const IndexConfig& cfg) {
    const double g = cfg.gamma;
    const double one_minus_g = 1.0 - g;

    // Per-slot sums over this step's matched items.
    std::vector<double> won_count(fine.slots.size(), 0.0);
    std::vector<Vec> won_sum(fine.slots.size());
    for (std::size_t i : match.matched) {
        const auto k = static_cast<std::size_t>(match.best_slot[i]);
        if (won_sum[k].empty()) won_sum[k].assign(batch[i].embedding.size(), 0.0);
        const Vec& e = batch[i].embedding;
        for (std::size_t j = 0; j < e.size(); ++j) won_sum[k][j] += e[j];
        won_count[k] += 1.0;
    }

    for (std::size_t k = 0; k < fine.slots.size(); ++k) {
        ClusterSlot& slot = fine.slots[k];
        if (slot.state != SlotState::Active) continue;
        for (std::size_t j = 0; j < slot.ema_sum.size(); ++j) {
            const double add = won_sum[k].empty() ? 0.0 : won_sum[k][j];
            slot.ema_sum[j] = g * slot.ema_sum[j] + one_minus_g * add;
        }
        slot.ema_count = g * slot.ema_count + one_minus_g * won_count[k];
        if (slot.ema_count > 0.0)
            for (std::size_t j = 0; j < slot.codeword.size(); ++j)
                slot.codeword[j] = slot.ema_sum[j] / slot.ema_count;
    }
}

UnionFindResult union_find_extend(std::span<const ItemRecord> failed, const IndexConfig& cfg) {
    UnionFindResult result;
    const std::size_t n = failed.size();
    if (n == 0) return result;

    std::vector<double> inv_norm(n);
    for (std::size_t i = 0; i < n; ++i) inv_norm[i] = 1.0 / norm(failed[i].embedding);

    DisjointSet dsu(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double cos =
                dot(failed[i].embedding, failed[j].embedding) * inv_norm[i] * inv_norm[j];
            if (cos >= cfg.tau_prime) dsu.unite(i, j);
        }
    }

    // Components keyed by root; roots compare by their smallest member since
    // unite() always keeps the lower index, so ascending root order is
    // ascending smallest-member order.
    std::vector<std::vector<std::size_t>> by_root(n);
    for (std::size_t i = 0; i < n; ++i) by_root[dsu.find(i)].push_back(i);

    for (std::size_t root = 0; root < n; ++root) {
        if (by_root[root].empty()) continue;
        UfGroup group;
        group.members = std::move(by_root[root]);
        const std::size_t dim = failed[group.members.front()].embedding.size();
        group.mean.assign(dim, 0.0);
        for (std::size_t idx : group.members)
            for (std::size_t j = 0; j < dim; ++j) group.mean[j] += failed[idx].embedding[j];
        for (double& v : group.mean) v /= static_cast<double>(group.members.size());

        const bool valid = group.members.size() >= cfg.min_cluster_size;
        if (valid)
            result.valid_groups.push_back(result.groups.size());
        else
            result.rejected.insert(result.rejected.end(), group.members.begin(),
                                   group.members.end());
        result.groups.push_back(std::move(group));
    }
    std::sort(result.rejected.begin(), result.rejected.end());
    return result;
}

std::vector<std::uint32_t> fill_then_append(FineCodebook& fine,
                                            const std::vector<PendingCluster>& clusters) {
    std::vector<std::size_t> order(clusters.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (clusters[a].member_count != clusters[b].member_count)
            return clusters[a].member_count > clusters[b].member_count;
        return clusters[a].min_item_id < clusters[b].min_item_id;
    });

    std::vector<std::uint32_t> empties = empty_slot_indices(fine);
    std::size_t next_empty = 0;

    std::vector<std::uint32_t> assigned(clusters.size(), 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const PendingCluster& c = clusters[order[pos]];
        std::uint32_t slot_idx;
        if (next_empty < empties.size()) {
            slot_idx = empties[next_empty++];
        } else {
            slot_idx = static_cast<std::uint32_t>(fine.slots.size());
            fine.slots.emplace_back();
        }
        ClusterSlot& slot = fine.slots[slot_idx];
        slot.ema_sum = c.embedding_sum;
        slot.ema_count = static_cast<double>(c.member_count);
        slot.codeword.resize(c.embedding_sum.size());
        for (std::size_t j = 0; j < slot.codeword.size(); ++j)
            slot.codeword[j] = slot.ema_sum[j] / slot.ema_count;
        slot.state = SlotState::Active;
        slot.created_step = fine.step;
        slot.growing_since.reset();
        assigned[order[pos]] = slot_idx;
    }
    return assigned;
}

StepReport run_step(const Batch& batch, FineCodebook& fine, AssignmentIndex& index,
                    TagBatcher& batcher, const IndexConfig& cfg, const StepHooks* hooks) {
    ++fine.step;
    StepReport report;
    report.step = fine.step;

    MatchResult match = match_batch(batch, fine, cfg);
    if (hooks && hooks->on_match) hooks->on_match(batch, match, fine);

    report.matched = match.matched.size();
    for (std::size_t i : match.matched)
        index.assign(batch[i].item_id, AssignmentIndex::kNoCoarse,
                     static_cast<std::uint32_t>(match.best_slot[i]));

    update_clusters(batch, match, fine, cfg);
    report.resets = sweep(fine, cfg, &index).size();

    std::vector<ItemRecord> failed_items;
    failed_items.reserve(match.failed.size());
    for (std::size_t i : match.failed) failed_items.push_back(batch[i]);

    UnionFindResult uf = union_find_extend(failed_items, cfg);

    std::vector<PendingCluster> pending;
    pending.reserve(uf.valid_groups.size());
    for (std::size_t g : uf.valid_groups) {
        const UfGroup& group = uf.groups[g];
        PendingCluster c;
        c.member_count = group.members.size();
        c.embedding_sum.assign(group.mean.size(), 0.0);
        c.min_item_id = UINT64_MAX;
        for (std::size_t idx : group.members) {
            const ItemRecord& item = failed_items[idx];
            for (std::size_t j = 0; j < c.embedding_sum.size(); ++j)
                c.embedding_sum[j] += item.embedding[j];
            c.min_item_id = std::min(c.min_item_id, item.item_id);
            c.member_ids.push_back(item.item_id);
        }
        pending.push_back(std::move(c));
    }

    const std::vector<std::uint32_t> slots = fill_then_append(fine, pending);
    report.new_clusters = pending.size();
    for (std::size_t c = 0; c < pending.size(); ++c)
        for (std::uint64_t id : pending[c].member_ids)
            index.assign(id, AssignmentIndex::kNoCoarse, slots[c]);

    std::vector<ItemRecord> rejects;
    rejects.reserve(uf.rejected.size());
    for (std::size_t idx : uf.rejected) rejects.push_back(std::move(failed_items[idx]));
    report.recycled = rejects.size();
    batcher.recycle(std::move(rejects));

    report.active_slots = active_count(fine);
    if (hooks && hooks->on_step_end) hooks->on_step_end(report, fine);
    return report;
}

}  // namespace streamidx

#include "streamidx/merger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "streamidx/similarity.hpp"

namespace streamidx {

double MergeState::total_count() const {
    double total = 0.0;
    for (const auto& p : working) total += p.ema_count;
    return total;
}

MergeState make_merge_state(const FineCodebook& fine, std::size_t target_size,
                            std::uint32_t max_rounds) {
    MergeState state;
    state.target_size = target_size;
    state.max_rounds = max_rounds;
    for (std::uint32_t k = 0; k < fine.slots.size(); ++k) {
        const ClusterSlot& slot = fine.slots[k];
        if (slot.state != SlotState::Active) continue;
        const auto unit_id = static_cast<std::uint32_t>(state.units.size());
        state.units.push_back({slot.codeword, slot.ema_count, k});
        CoarsePrototype proto;
        proto.embedding = slot.codeword;
        proto.ema_count = slot.ema_count;
        proto.members = {unit_id};
        state.working.push_back(std::move(proto));
    }
    if (target_size < 1) throw std::invalid_argument("build_hierarchy: target_size must be >= 1");
    if (target_size > state.units.size())
        throw std::invalid_argument("build_hierarchy: target_size exceeds Active slot count");
    return state;
}

double affinity(const CoarsePrototype& x, const CoarsePrototype& y, const IndexConfig& cfg) {
    return cosine_similarity(x.embedding, y.embedding) -
           cfg.lambda * std::min(x.ema_count, y.ema_count);
}

CoarsePrototype merge_pair(const CoarsePrototype& x, const CoarsePrototype& y) {
    const double total = x.ema_count + y.ema_count;
    if (total == 0.0) throw std::domain_error("merge_pair: both counts are zero");
    CoarsePrototype merged;
    merged.embedding.resize(x.embedding.size());
    for (std::size_t j = 0; j < merged.embedding.size(); ++j)
        merged.embedding[j] = (x.ema_count * x.embedding[j] + y.ema_count * y.embedding[j]) / total;
    merged.ema_count = total;
    merged.members.reserve(x.members.size() + y.members.size());
    merged.members.insert(merged.members.end(), x.members.begin(), x.members.end());
    merged.members.insert(merged.members.end(), y.members.begin(), y.members.end());
    std::sort(merged.members.begin(), merged.members.end());
    return merged;
}

void merge_round(MergeState& state, const IndexConfig& cfg) {
    ++state.round;
    if (state.working.size() <= 1 || state.working.size() <= state.target_size) return;

    // Tombstoned working copy with a cached pairwise affinity matrix. Alive
    // positions keep their relative order, so lexicographic tie-breaks agree
    // with a compacted vector. Only rows touched by a merge are recomputed;
    // equality with full recomputation is covered by tests.
    const std::size_t n = state.working.size();
    std::vector<CoarsePrototype> protos = std::move(state.working);
    std::vector<char> alive(n, 1);
    std::vector<double> aff(n * n, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return aff[i * n + j]; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) at(i, j) = affinity(protos[i], protos[j], cfg);

    // Per-row best over alive columns j > i; ties keep the lowest j, and the
    // global scan keeps the lowest row, so selection matches a full
    // lexicographic argmax over the compacted pair order.
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    std::vector<double> best_a(n, kNone);
    std::vector<std::size_t> best_j(n, 0);
    auto rescan_row = [&](std::size_t i) {
        best_a[i] = kNone;
        for (std::size_t j = i + 1; j < n; ++j)
            if (alive[j] && at(i, j) > best_a[i]) {
                best_a[i] = at(i, j);
                best_j[i] = j;
            }
    };
    for (std::size_t i = 0; i < n; ++i) rescan_row(i);

    std::size_t alive_count = n;
    while (alive_count > state.target_size) {
        double best = kNone;
        std::size_t bi = n;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && best_a[i] > best) {
                best = best_a[i];
                bi = i;
            }
        const std::size_t bj = best_j[bi];

        protos[bi] = merge_pair(protos[bi], protos[bj]);
        alive[bj] = 0;
        --alive_count;
        for (std::size_t k = 0; k < n; ++k) {
            if (!alive[k] || k == bi) continue;
            const double a = affinity(protos[bi], protos[k], cfg);
            if (k < bi) at(k, bi) = a; else at(bi, k) = a;
        }
        rescan_row(bi);
        for (std::size_t k = 0; k < bi; ++k) {
            if (!alive[k]) continue;
            if (best_j[k] == bi || best_j[k] == bj) {
                rescan_row(k);
            } else if (at(k, bi) > best_a[k] ||
                       (at(k, bi) == best_a[k] && bi < best_j[k])) {
                best_a[k] = at(k, bi);
                best_j[k] = bi;
            }
        }
        for (std::size_t k = bi + 1; k < n; ++k)
            if (alive[k] && best_j[k] == bj) rescan_row(k);
    }

    state.working.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) state.working.push_back(std::move(protos[i]));
}

namespace {

double unit_distance(const MergeState::Unit& u, const MergeState::Unit& v,
                     const IndexConfig& cfg) {
    const double w = cosine_similarity(u.codeword, v.codeword) -
                     cfg.lambda * std::min(u.ema_count, v.ema_count);
    return 1.0 - w;
}

}  // namespace

double silhouette(std::uint32_t unit_id, const MergeState& state, const IndexConfig& cfg) {
    const CoarsePrototype* home = nullptr;
    for (const auto& p : state.working) {
        if (std::binary_search(p.members.begin(), p.members.end(), unit_id)) {
            home = &p;
            break;
        }
    }
    if (!home) throw std::invalid_argument("silhouette: unit not in any prototype");
    if (home->members.size() < 2) return 0.0;

    const MergeState::Unit& u = state.units[unit_id];

    double a = 0.0;
    for (std::uint32_t other : home->members)
        if (other != unit_id) a += unit_distance(u, state.units[other], cfg);
    a /= static_cast<double>(home->members.size() - 1);

    double b = std::numeric_limits<double>::infinity();
    for (const auto& p : state.working) {
        if (&p == home) continue;
        double mean = 0.0;
        for (std::uint32_t other : p.members) mean += unit_distance(u, state.units[other], cfg);
        mean /= static_cast<double>(p.members.size());
        b = std::min(b, mean);
    }
    if (!std::isfinite(b)) return 0.0;  // no other prototype exists

    const double denom = std::max(a, b);
    if (denom == 0.0) return 0.0;
    return (b - a) / denom;
}

namespace {

// Recomputes a prototype as the count-weighted mean of its member units.
void recompute_from_members(CoarsePrototype& proto, const MergeState& state) {
    const std::size_t dim = state.units[proto.members.front()].codeword.size();
    proto.embedding.assign(dim, 0.0);
    proto.ema_count = 0.0;
    for (std::uint32_t m : proto.members) {
        const auto& unit = state.units[m];
        for (std::size_t j = 0; j < dim; ++j) proto.embedding[j] += unit.ema_count * unit.codeword[j];
        proto.ema_count += unit.ema_count;
    }
    if (proto.ema_count > 0.0)
        for (double& v : proto.embedding) v /= proto.ema_count;
}

}  // namespace

std::vector<std::uint32_t> prune(MergeState& state, const IndexConfig& cfg) {
    std::vector<std::uint32_t> pruned;
    if (state.working.size() < 2) return pruned;

    // Score everything against the frozen state first, then remove, so that
    // earlier removals cannot change later scores.
    for (const auto& p : state.working) {
        if (p.members.size() < 2) continue;
        for (std::uint32_t m : p.members)
            if (silhouette(m, state, cfg) < cfg.prune_threshold) pruned.push_back(m);
    }
    std::sort(pruned.begin(), pruned.end());
    if (pruned.empty()) return pruned;

    std::vector<CoarsePrototype> kept;
    kept.reserve(state.working.size());
    for (auto& p : state.working) {
        std::vector<std::uint32_t> remaining;
        for (std::uint32_t m : p.members)
            if (!std::binary_search(pruned.begin(), pruned.end(), m)) remaining.push_back(m);
        if (remaining.empty()) continue;
        if (remaining.size() != p.members.size()) {
            p.members = std::move(remaining);
            recompute_from_members(p, state);
        }
        kept.push_back(std::move(p));
    }
    state.working = std::move(kept);
    return pruned;
}

void reconnect(MergeState& state, const std::vector<std::uint32_t>& pruned) {
    for (std::uint32_t unit_id : pruned) {
        const auto& unit = state.units[unit_id];
        CoarsePrototype proto;
        proto.embedding = unit.codeword;
        proto.ema_count = unit.ema_count;
        proto.members = {unit_id};
        state.working.push_back(std::move(proto));
    }
}

CoarseCodebook build_hierarchy(const FineCodebook& fine, const IndexConfig& cfg,
                               std::size_t target_size, std::uint32_t max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("build_hierarchy: max_rounds must be >= 1");
    MergeState state = make_merge_state(fine, target_size, max_rounds);

    while (true) {
        merge_round(state, cfg);
        if (state.round >= state.max_rounds) break;  // final round: no pruning
        std::vector<std::uint32_t> pruned = prune(state, cfg);
        if (pruned.empty()) break;
        reconnect(state, pruned);
    }

    CoarseCodebook coarse;
    coarse.prototypes.reserve(state.working.size());
    for (auto& p : state.working) {
        CoarsePrototype out;
        out.embedding = std::move(p.embedding);
        out.ema_count = p.ema_count;
        out.members.reserve(p.members.size());
        for (std::uint32_t unit_id : p.members)
            out.members.push_back(state.units[unit_id].fine_slot);
        std::sort(out.members.begin(), out.members.end());
        coarse.prototypes.push_back(std::move(out));
    }
    return coarse;
}

}  // namespace streamidx

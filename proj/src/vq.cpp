#include "streamidx/vq.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "streamidx/similarity.hpp"

namespace streamidx {

std::size_t VqLayer::initialized_count() const {
    std::size_t n = 0;
    for (const auto& c : codewords)
        if (c.initialized) ++n;
    return n;
}

VqCodebook::VqCodebook(std::size_t k, std::size_t n_layers, std::size_t d, VqMetric m)
    : metric(m), dim(d) {
    if (k == 0) throw std::invalid_argument("VqCodebook: K must be positive");
    if (n_layers == 0) throw std::invalid_argument("VqCodebook: need at least one layer");
    layers.resize(n_layers);
    for (auto& layer : layers) {
        layer.codewords.resize(k);
        for (auto& c : layer.codewords) {
            c.codeword.assign(d, 0.0);
            c.ema_sum.assign(d, 0.0);
        }
    }
}

namespace {

double similarity(std::span<const double> e, const Vec& codeword, VqMetric metric) {
    if (metric == VqMetric::NegSquaredL2) {
        double s = 0.0;
        for (std::size_t j = 0; j < e.size(); ++j) {
            const double d = e[j] - codeword[j];
            s += d * d;
        }
        return -s;
    }
    const double ne = norm(e);
    const double nc = norm(codeword);
    if (ne == 0.0 || nc == 0.0) return 0.0;
    return dot(e, codeword) / (ne * nc);
}

// Argmax over initialized codewords, ties toward the lowest index.
std::pair<std::uint32_t, double> assign_in_layer(std::span<const double> e, const VqLayer& layer,
                                                 VqMetric metric) {
    std::uint32_t best_k = 0;
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::uint32_t k = 0; k < layer.codewords.size(); ++k) {
        const VqCodeword& c = layer.codewords[k];
        if (!c.initialized) continue;
        const double s = similarity(e, c.codeword, metric);
        if (!found || s > best) {
            best = s;
            best_k = k;
            found = true;
        }
    }
    if (!found) throw std::domain_error("vq_assign: codebook layer has no initialized codeword");
    return {best_k, best};
}

}  // namespace

std::pair<std::uint32_t, double> vq_assign(std::span<const double> e, const VqCodebook& cb) {
    if (cb.layers.empty()) throw std::domain_error("vq_assign: empty codebook");
    return assign_in_layer(e, cb.layers[0], cb.metric);
}

std::vector<std::uint32_t> rq_assign(std::span<const double> e, const VqCodebook& cb) {
    if (cb.layers.empty()) throw std::domain_error("rq_assign: empty codebook");
    std::vector<std::uint32_t> codes;
    codes.reserve(cb.layers.size());
    Vec residual(e.begin(), e.end());
    for (const auto& layer : cb.layers) {
        const auto [k, score] = assign_in_layer(residual, layer, cb.metric);
        codes.push_back(k);
        const Vec& cw = layer.codewords[k].codeword;
        for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= cw[j];
    }
    return codes;
}

namespace {

void ema_update_layer(VqLayer& layer, const std::vector<Vec>& won_sum,
                      const std::vector<double>& won_count, double gamma) {
    const double one_minus_g = 1.0 - gamma;
    for (std::size_t k = 0; k < layer.codewords.size(); ++k) {
        VqCodeword& c = layer.codewords[k];
        if (!c.initialized) continue;
        for (std::size_t j = 0; j < c.ema_sum.size(); ++j) {
            const double add = won_sum[k].empty() ? 0.0 : won_sum[k][j];
            c.ema_sum[j] = gamma * c.ema_sum[j] + one_minus_g * add;
        }
        c.ema_count = gamma * c.ema_count + one_minus_g * won_count[k];
        if (c.ema_count > 0.0)
            for (std::size_t j = 0; j < c.codeword.size(); ++j)
                c.codeword[j] = c.ema_sum[j] / c.ema_count;
    }
}

}  // namespace

std::vector<std::uint32_t> vq_train_step(const Batch& batch, VqCodebook& cb,
                                         const IndexConfig& cfg) {
    if (cb.layers.empty()) throw std::domain_error("vq_train_step: empty codebook");

    std::vector<std::uint32_t> first_layer_codes(batch.size(), 0);
    std::vector<Vec> residuals;
    residuals.reserve(batch.size());
    for (const auto& item : batch) residuals.push_back(item.embedding);

    for (std::size_t l = 0; l < cb.layers.size(); ++l) {
        VqLayer& layer = cb.layers[l];

        // First-K seeding from distinct inputs at this layer.
        std::size_t seeded = layer.initialized_count();
        if (seeded < layer.codewords.size()) {
            for (const Vec& r : residuals) {
                if (seeded == layer.codewords.size()) break;
                bool duplicate = false;
                for (std::size_t k = 0; k < layer.codewords.size() && !duplicate; ++k)
                    duplicate = layer.codewords[k].initialized && layer.codewords[k].codeword == r;
                if (duplicate) continue;
                VqCodeword& c = layer.codewords[seeded];
                c.codeword = r;
                c.ema_sum = r;
                c.ema_count = 1.0;
                c.initialized = true;
                ++seeded;
            }
        }

        std::vector<Vec> won_sum(layer.codewords.size());
        std::vector<double> won_count(layer.codewords.size(), 0.0);
        for (std::size_t i = 0; i < residuals.size(); ++i) {
            const auto [k, score] = assign_in_layer(residuals[i], layer, cb.metric);
            if (l == 0) first_layer_codes[i] = k;
            if (won_sum[k].empty()) won_sum[k].assign(residuals[i].size(), 0.0);
            for (std::size_t j = 0; j < residuals[i].size(); ++j) won_sum[k][j] += residuals[i][j];
            won_count[k] += 1.0;
            const Vec& cw = layer.codewords[k].codeword;
            for (std::size_t j = 0; j < residuals[i].size(); ++j) residuals[i][j] -= cw[j];
        }
        ema_update_layer(layer, won_sum, won_count, cfg.gamma);
    }
    return first_layer_codes;
}

FineCodebook to_fine_codebook(const VqCodebook& cb) {
    FineCodebook fine;
    if (cb.layers.empty()) return fine;
    for (const auto& c : cb.layers[0].codewords) {
        ClusterSlot slot;
        if (c.initialized) {
            slot.codeword = c.codeword;
            slot.ema_sum = c.ema_sum;
            slot.ema_count = c.ema_count;
            slot.state = SlotState::Active;
        } else {
            slot.codeword.assign(cb.dim, 0.0);
            slot.ema_sum.assign(cb.dim, 0.0);
        }
        fine.slots.push_back(std::move(slot));
    }
    return fine;
}

}  // namespace streamidx

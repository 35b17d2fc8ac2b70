#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

enum class VqMetric : std::uint8_t { Cosine = 0, NegSquaredL2 = 1 };

struct VqCodeword {
    Vec codeword;
    Vec ema_sum;
    double ema_count = 0.0;
    bool initialized = false;
};

struct VqLayer {
    std::vector<VqCodeword> codewords;
    std::size_t initialized_count() const;
};

// Fixed-size baseline codebook: K is set at construction and never changes,
// there is no reset or occupancy monitoring, and every input is assigned to
// its nearest codeword unconditionally. Layers beyond the first quantize the
// residual left by the previous layer.
struct VqCodebook {
    std::vector<VqLayer> layers;
    VqMetric metric = VqMetric::Cosine;
    std::size_t dim = 0;

    VqCodebook() = default;
    VqCodebook(std::size_t k, std::size_t n_layers, std::size_t dim, VqMetric metric);
    std::size_t k() const { return layers.empty() ? 0 : layers[0].codewords.size(); }
};

// Nearest codeword in the first layer by the codebook metric; ties toward
// the lowest index. A zero-norm query under the cosine metric scores 0
// against every codeword (relevant only for exact-residual corner cases).
std::pair<std::uint32_t, double> vq_assign(std::span<const double> e, const VqCodebook& cb);

// Residual chain: r0 = e, c_l = nearest codeword of layer l to r_{l-1},
// r_l = r_{l-1} - codeword_{c_l}. Returns one index per layer.
std::vector<std::uint32_t> rq_assign(std::span<const double> e, const VqCodebook& cb);

// One EMA training step. Uninitialized codewords are seeded from the first
// distinct inputs seen at each layer (first-K init); afterwards every item is
// assigned and every initialized codeword is EMA-updated, decaying even when
// it wins nothing this step. Returns the first-layer assignment per item.
std::vector<std::uint32_t> vq_train_step(const Batch& batch, VqCodebook& cb,
                                         const IndexConfig& cfg);

// First-layer view as a fine codebook so the evaluator can treat both
// paradigms uniformly. Uninitialized codewords map to Empty slots.
FineCodebook to_fine_codebook(const VqCodebook& cb);

}  // namespace streamidx

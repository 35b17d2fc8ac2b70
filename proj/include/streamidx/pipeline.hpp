#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "streamidx/indexer.hpp"
#include "streamidx/types.hpp"
#include "streamidx/vq.hpp"

namespace streamidx {

// Pull-based record source so trainers run off files, generators or vectors
// with the same loop. Returns nullopt at end of stream.
using RecordSource = std::function<std::optional<ItemRecord>()>;

RecordSource vector_source(const std::vector<ItemRecord>& records);

enum class TrainAlgo : std::uint8_t { Dynamic, Vq, Rq };

struct TrainOptions {
    TrainAlgo algo = TrainAlgo::Dynamic;
    IndexConfig cfg;
    std::size_t vq_k = 500;      // baseline codebook size
    std::size_t rq_layers = 2;   // layers when algo == Rq
    VqMetric metric = VqMetric::Cosine;
};

struct TrainResult {
    FineCodebook fine;                  // dynamic codebook, or first-layer view for vq/rq
    std::optional<VqCodebook> quantizer;
    AssignmentIndex index;
    std::vector<StepReport> steps;
    std::uint64_t items_consumed = 0;
};

// Feeds the stream through the tag batcher and runs the per-batch update to
// exhaustion, including the end-of-stream flush. Items re-rejected while
// draining flush batches stay unindexed (the run is over; there is no later
// batch to recycle into).
TrainResult run_training(const RecordSource& source, const TrainOptions& opts,
                         const StepHooks* hooks = nullptr);

}  // namespace streamidx

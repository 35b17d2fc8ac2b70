#include "streamidx/pipeline.hpp"

#include <stdexcept>

#include "streamidx/batcher.hpp"

namespace streamidx {

RecordSource vector_source(const std::vector<ItemRecord>& records) {
    std::size_t pos = 0;
    return [&records, pos]() mutable -> std::optional<ItemRecord> {
        if (pos >= records.size()) return std::nullopt;
        return records[pos++];
    };
}

namespace {

TrainResult run_dynamic(const RecordSource& source, const TrainOptions& opts,
                        const StepHooks* hooks) {
    TrainResult result;
    TagBatcher batcher(opts.cfg.batch_size, opts.cfg.recycle_capacity());

    auto process = [&](const Batch& batch) {
        result.steps.push_back(
            run_step(batch, result.fine, result.index, batcher, opts.cfg, hooks));
    };

    while (auto rec = source()) {
        ++result.items_consumed;
        if (auto batch = batcher.push(std::move(*rec))) process(*batch);
    }
    for (const Batch& batch : batcher.flush()) process(batch);
    return result;
}

TrainResult run_quantizer(const RecordSource& source, const TrainOptions& opts,
                          const StepHooks* hooks) {
    const std::size_t layers = opts.algo == TrainAlgo::Rq ? opts.rq_layers : 1;
    TrainResult result;
    result.quantizer = VqCodebook(opts.vq_k, layers, opts.cfg.dim, opts.metric);
    TagBatcher batcher(opts.cfg.batch_size, opts.cfg.recycle_capacity());

    auto process = [&](const Batch& batch) {
        const auto codes = vq_train_step(batch, *result.quantizer, opts.cfg);
        for (std::size_t i = 0; i < batch.size(); ++i)
            result.index.assign(batch[i].item_id, AssignmentIndex::kNoCoarse, codes[i]);
        StepReport report;
        report.step = ++result.fine.step;
        report.matched = batch.size();
        report.active_slots = result.quantizer->layers[0].initialized_count();
        result.steps.push_back(report);
        if (hooks && hooks->on_step_end) hooks->on_step_end(report, result.fine);
    };

    while (auto rec = source()) {
        ++result.items_consumed;
        if (auto batch = batcher.push(std::move(*rec))) process(*batch);
    }
    for (const Batch& batch : batcher.flush()) process(batch);

    const std::uint64_t step = result.fine.step;
    result.fine = to_fine_codebook(*result.quantizer);
    result.fine.step = step;
    return result;
}

}  // namespace

TrainResult run_training(const RecordSource& source, const TrainOptions& opts,
                         const StepHooks* hooks) {
    opts.cfg.validate();
    if (opts.algo == TrainAlgo::Dynamic) return run_dynamic(source, opts, hooks);
    return run_quantizer(source, opts, hooks);
}

}  // namespace streamidx

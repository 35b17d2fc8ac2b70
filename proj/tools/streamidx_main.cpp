// streamidx: build, merge, query and evaluate streaming item-index codebooks.
//
// Subcommands:
//   gen     synthesize a skewed, optionally drifting item stream
//   train   build a codebook from a stream (dynamic indexer or vq/rq baseline)
//   merge   add the coarse layer to a trained codebook
//   assign  map embeddings to (coarse, fine) codes with a trained codebook
//   eval    accuracy / uniformity / separation diagnostics, stability check

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "streamidx/evaluator.hpp"
#include "streamidx/manifest.hpp"
#include "streamidx/merger.hpp"
#include "streamidx/pipeline.hpp"
#include "streamidx/rng.hpp"
#include "streamidx/similarity.hpp"
#include "streamidx/stream_io.hpp"

namespace sx = streamidx;

namespace {

void add_config_flags(CLI::App* cmd, sx::IndexConfig& cfg) {
    cmd->add_option("--tau", cfg.tau, "match threshold");
    cmd->add_option("--gamma", cfg.gamma, "EMA decay factor");
    cmd->add_option("--tau-prime", cfg.tau_prime, "union-find edge threshold");
    cmd->add_option("-m,--min-cluster-size", cfg.min_cluster_size, "minimum valid new-cluster size");
    cmd->add_option("--eps1", cfg.eps1, "occupancy underfilled threshold");
    cmd->add_option("--eps2", cfg.eps2, "occupancy stable threshold");
    cmd->add_option("-M,--window", cfg.growth_window, "growing-window length in steps");
    cmd->add_option("--lambda", cfg.lambda, "merge size-penalty weight");
    cmd->add_option("-r,--prune-threshold", cfg.prune_threshold, "silhouette pruning threshold");
    cmd->add_option("--batch-size", cfg.batch_size, "batch size");
    cmd->add_option("-d,--dim", cfg.dim, "embedding dimension");
}

std::string json_step_line(const sx::StepReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\"step\":%llu,\"matched\":%zu,\"new_clusters\":%zu,\"resets\":%zu,"
                  "\"recycled\":%zu,\"active_slots\":%zu}\n",
                  static_cast<unsigned long long>(r.step), r.matched, r.new_clusters, r.resets,
                  r.recycled, r.active_slots);
    return buf;
}

// ---------------------------------------------------------------- gen ------

struct GenArgs {
    sx::SyntheticStreamSpec spec;
    std::string out;
    std::string truth_out;
};

int cmd_gen(const GenArgs& args) {
    sx::SyntheticStream stream = sx::generate_stream(args.spec);
    sx::write_stream(args.out, stream.records);
    const std::string truth_path = args.truth_out.empty() ? args.out + ".truth" : args.truth_out;
    sx::write_truth_sidecar(truth_path, stream.truth);

    sx::RunManifest manifest;
    manifest.command = "gen";
    manifest.seed = args.spec.seed;
    manifest.config.dim = args.spec.d;
    manifest.outputs = {args.out, truth_path};
    manifest.extra["n_items"] = std::to_string(args.spec.n_items);
    manifest.extra["n_true_clusters"] = std::to_string(args.spec.n_true_clusters);
    manifest.extra["stream_digest"] = std::to_string(sx::file_digest(args.out));
    manifest.write(args.out + ".manifest.json");

    std::cout << "wrote " << stream.records.size() << " records to " << args.out << "\n";
    return 0;
}

// -------------------------------------------------------------- train ------

struct TrainArgs {
    std::string stream;
    std::string algo = "merge";
    std::string out;
    sx::TrainOptions opts;
    std::string metric = "cosine";
    std::uint64_t seed = 0;
};

int cmd_train(TrainArgs& args) {
    if (args.algo == "merge") args.opts.algo = sx::TrainAlgo::Dynamic;
    else if (args.algo == "vq") args.opts.algo = sx::TrainAlgo::Vq;
    else if (args.algo == "rq") args.opts.algo = sx::TrainAlgo::Rq;
    else throw CLI::ValidationError("--algo must be one of merge|vq|rq");
    args.opts.metric = args.metric == "l2" ? sx::VqMetric::NegSquaredL2 : sx::VqMetric::Cosine;

    const std::string steps_path = args.out + ".steps.jsonl";
    std::ofstream steps(steps_path, std::ios::binary);
    if (!steps) throw std::runtime_error("cannot open for writing: " + steps_path);

    sx::StepHooks hooks;
    hooks.on_step_end = [&steps](const sx::StepReport& r, const sx::FineCodebook&) {
        const std::string line = json_step_line(r);
        steps.write(line.data(), static_cast<std::streamsize>(line.size()));
    };

    sx::StreamReader reader(args.stream, args.opts.cfg.dim);
    sx::RecordSource source = [&reader]() { return reader.next(); };
    sx::TrainResult result = sx::run_training(source, args.opts, &hooks);
    steps.close();

    const auto audit = sx::audit_codeword_identity(result.fine);
    if (audit.violations != 0) {
        std::cerr << "codeword identity audit failed: " << audit.violations << " violations\n";
        return 1;
    }

    if (args.opts.algo == sx::TrainAlgo::Dynamic)
        sx::save_codebook(args.out, result.fine, nullptr, args.opts.cfg);
    else
        sx::save_vq_codebook(args.out, *result.quantizer, args.opts.cfg);
    const std::string assign_path = args.out + ".assign";
    sx::save_assignments(assign_path, result.index);

    sx::RunManifest manifest;
    manifest.command = "train";
    manifest.seed = args.seed;
    manifest.config = args.opts.cfg;
    manifest.input_digests[args.stream] = sx::file_digest(args.stream);
    manifest.outputs = {args.out, assign_path};
    manifest.step_log_path = steps_path;
    manifest.extra["algo"] = args.algo;
    manifest.extra["items_consumed"] = std::to_string(result.items_consumed);
    manifest.write(args.out + ".manifest.json");

    std::cout << "active slots: " << sx::active_count(result.fine) << "\n";
    std::cout << "indexed items: " << result.index.size() << " of " << result.items_consumed
              << "\n";
    return 0;
}

// -------------------------------------------------------------- merge ------

struct MergeArgs {
    std::string codebook;
    std::string out;
    std::size_t target = 0;
    std::uint32_t max_rounds = 10;
};

int cmd_merge(const MergeArgs& args) {
    sx::CodebookFile file = sx::load_codebook(args.codebook);
    if (file.kind != sx::CodebookKind::Dynamic)
        throw std::runtime_error("merge requires a dynamic codebook");
    const sx::CoarseCodebook coarse =
        sx::build_hierarchy(file.fine, file.config, args.target, args.max_rounds);
    const std::string out = args.out.empty() ? args.codebook : args.out;
    sx::save_codebook(out, file.fine, &coarse, file.config);

    sx::RunManifest manifest;
    manifest.command = "merge";
    manifest.config = file.config;
    manifest.input_digests[args.codebook] = sx::file_digest(args.codebook);
    manifest.outputs = {out};
    manifest.extra["target"] = std::to_string(args.target);
    manifest.extra["coarse_prototypes"] = std::to_string(coarse.prototypes.size());
    manifest.write(out + ".manifest.json");

    std::cout << "coarse prototypes: " << coarse.prototypes.size() << "\n";
    return 0;
}

// ------------------------------------------------------------- assign ------

struct AssignArgs {
    std::string codebook;
    std::string embeddings;
    std::string out;
};

int cmd_assign(const AssignArgs& args) {
    sx::CodebookFile file = sx::load_codebook(args.codebook);
    const sx::FineCodebook fine =
        file.kind == sx::CodebookKind::Dynamic ? file.fine : sx::to_fine_codebook(*file.quantizer);
    std::vector<std::uint32_t> fine_to_coarse;
    if (file.coarse) fine_to_coarse = file.coarse->fine_to_coarse(fine.slots.size());

    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + args.out);
    out << "item_id,coarse_code,fine_code,score\n";

    sx::StreamReader reader(args.embeddings, file.config.dim);
    std::size_t assigned = 0, unassigned = 0;
    while (auto rec = reader.next()) {
        double best = -2.0;
        std::int64_t best_k = -1;
        for (std::size_t k = 0; k < fine.slots.size(); ++k) {
            const auto& slot = fine.slots[k];
            if (slot.state != sx::SlotState::Active) continue;
            const double score = sx::cosine_similarity(rec->embedding, slot.codeword);
            if (score > best) {
                best = score;
                best_k = static_cast<std::int64_t>(k);
            }
        }
        char line[128];
        if (best_k >= 0 && best >= file.config.tau) {
            std::int64_t coarse = -1;
            if (!fine_to_coarse.empty() &&
                fine_to_coarse[static_cast<std::size_t>(best_k)] != sx::CoarseCodebook::kUnmapped)
                coarse = fine_to_coarse[static_cast<std::size_t>(best_k)];
            std::snprintf(line, sizeof(line), "%llu,%lld,%lld,%.17g\n",
                          static_cast<unsigned long long>(rec->item_id),
                          static_cast<long long>(coarse), static_cast<long long>(best_k), best);
            ++assigned;
        } else {
            std::snprintf(line, sizeof(line), "%llu,-1,-1,%.17g\n",
                          static_cast<unsigned long long>(rec->item_id), best);
            ++unassigned;
        }
        out << line;
    }
    std::cout << "assigned " << assigned << ", unassigned " << unassigned << "\n";
    return 0;
}

// --------------------------------------------------------------- eval ------

struct EvalArgs {
    std::string codebook;
    std::string assignments;
    std::string stream;
    std::string truth;
    std::string out_dir = ".";
    std::string compare;
    std::string compare_assignments;
    std::size_t sample_size = 100000;
    std::uint64_t seed = 7;
    double stability_eps = 0.05;
    std::uint64_t stability_trials = 10000;
};

sx::FineCodebook fine_view(const sx::CodebookFile& file) {
    return file.kind == sx::CodebookKind::Dynamic ? file.fine
                                                  : sx::to_fine_codebook(*file.quantizer);
}

sx::EvalSample build_sample(const sx::AssignmentIndex& index,
                            const std::map<std::uint64_t, const sx::ItemRecord*>& by_id,
                            const std::map<std::uint64_t, std::uint32_t>& truth,
                            std::size_t sample_size, std::uint64_t seed) {
    auto entries = index.sorted_entries();
    std::vector<std::size_t> pick(entries.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    if (entries.size() > sample_size) {
        sx::Rng rng(seed);
        rng.shuffle(pick);
        pick.resize(sample_size);
        std::sort(pick.begin(), pick.end());
    }
    sx::EvalSample sample;
    sample.reserve(pick.size());
    for (std::size_t i : pick) {
        const auto& [id, codes] = entries[i];
        auto it = by_id.find(id);
        if (it == by_id.end()) continue;  // assignment for an item outside this stream file
        sx::EvalItem item;
        item.item_id = id;
        item.embedding = it->second->embedding;
        item.popularity = it->second->popularity;
        item.fine_code = codes.fine;
        if (auto t = truth.find(id); t != truth.end()) item.truth = t->second;
        sample.push_back(std::move(item));
    }
    return sample;
}

void write_histogram_csv(const std::string& path, const sx::CosineHistogram& hist) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "bin_left,bin_right,count\n";
    char line[96];
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        std::snprintf(line, sizeof(line), "%.2f,%.2f,%llu\n", -1.0 + 0.02 * b, -1.0 + 0.02 * (b + 1),
                      static_cast<unsigned long long>(hist.counts[b]));
        out << line;
    }
}

struct EvalOutputs {
    sx::CosineHistogram i2c, c2c;
    bool has_c2c = false;     // pairwise metrics need >= 2 active slots
    bool has_stability = false;
    sx::UniformityReport uniformity;
    sx::StabilityReport stability;
    std::optional<sx::PairScores> truth_scores;
    std::size_t sample_size = 0;
};

EvalOutputs evaluate_one(const std::string& prefix, const sx::FineCodebook& fine,
                         const sx::EvalSample& sample, const EvalArgs& args, bool have_truth) {
    EvalOutputs out;
    out.sample_size = sample.size();
    out.i2c = sx::i2c_histogram(sample, fine);
    out.has_c2c = sx::active_count(fine) >= 2;
    if (out.has_c2c) {
        out.c2c = sx::c2c_histogram(fine);
        out.stability =
            sx::stability_check(fine, args.stability_eps, args.stability_trials, args.seed);
        out.has_stability = true;
    }
    out.uniformity = sx::uniformity_report(sample, fine, sx::default_popularity_edges());
    if (have_truth) out.truth_scores = sx::ground_truth_scores(sample);

    write_histogram_csv(prefix + "i2c_hist.csv", out.i2c);
    if (out.has_c2c) write_histogram_csv(prefix + "c2c_hist.csv", out.c2c);

    {
        std::ofstream f(prefix + "cluster_sizes.csv", std::ios::binary);
        f << "fine_code,count\n";
        for (const auto& [slot, count] : out.uniformity.slot_counts)
            f << slot << ',' << count << '\n';
    }
    {
        std::ofstream f(prefix + "popularity_curves.csv", std::ios::binary);
        f << "bucket,x,y\n";
        char line[128];
        for (const auto& curve : out.uniformity.buckets) {
            for (std::size_t i = 0; i < curve.cum_share.size(); ++i) {
                std::snprintf(line, sizeof(line), "%s,%zu,%.17g\n", curve.label.c_str(), i + 1,
                              curve.cum_share[i]);
                f << line;
            }
        }
    }
    if (out.has_stability) {
        std::ofstream f(prefix + "stability.csv", std::ios::binary);
        f << "trials,violations,skipped_nonpositive_alpha\n";
        f << out.stability.trials << ',' << out.stability.violations << ','
          << out.stability.skipped_nonpositive_alpha << '\n';
    }
    if (out.truth_scores) {
        std::ofstream f(prefix + "truth_scores.csv", std::ios::binary);
        f << "precision,recall,f1,predicted_pairs,truth_pairs,agreeing_pairs\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%llu,%llu,%llu\n",
                      out.truth_scores->precision_defined
                          ? std::to_string(out.truth_scores->precision).c_str()
                          : "undefined",
                      out.truth_scores->recall, out.truth_scores->f1,
                      static_cast<unsigned long long>(out.truth_scores->predicted_pairs),
                      static_cast<unsigned long long>(out.truth_scores->truth_pairs),
                      static_cast<unsigned long long>(out.truth_scores->agreeing_pairs));
        f << line;
    }
    return out;
}

void append_summary(std::string& text, const std::string& name, const EvalOutputs& out) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "[%s]\n", name.c_str());
    text += buf;
    std::snprintf(buf, sizeof(buf), "sample_size: %zu (stale excluded: %zu)\n", out.sample_size,
                  out.i2c.stale_excluded);
    text += buf;
    std::snprintf(buf, sizeof(buf), "i2c: mean=%.6f median=%.6f\n", out.i2c.mean, out.i2c.median);
    text += buf;
    if (out.has_c2c) {
        std::snprintf(buf, sizeof(buf), "c2c: mean=%.6f median=%.6f pairs=%llu\n", out.c2c.mean,
                      out.c2c.median, static_cast<unsigned long long>(out.c2c.total));
    } else {
        std::snprintf(buf, sizeof(buf), "c2c: skipped (fewer than 2 active slots)\n");
    }
    text += buf;
    std::snprintf(buf, sizeof(buf),
                  "sizes: occupied=%zu max=%llu median=%.1f max/median=%.3f gini=%.4f\n",
                  out.uniformity.slot_counts.size(),
                  static_cast<unsigned long long>(out.uniformity.max_size),
                  out.uniformity.median_size, out.uniformity.max_median_ratio, out.uniformity.gini);
    text += buf;
    for (const auto& curve : out.uniformity.buckets) {
        if (curve.items == 0) {
            std::snprintf(buf, sizeof(buf), "bucket %s: empty (omitted)\n", curve.label.c_str());
        } else {
            std::snprintf(buf, sizeof(buf), "bucket %s: items=%llu clusters=%zu\n",
                          curve.label.c_str(), static_cast<unsigned long long>(curve.items),
                          curve.distinct_clusters);
        }
        text += buf;
    }
    if (out.has_stability) {
        std::snprintf(buf, sizeof(buf), "stability: trials=%llu violations=%llu skipped=%llu\n",
                      static_cast<unsigned long long>(out.stability.trials),
                      static_cast<unsigned long long>(out.stability.violations),
                      static_cast<unsigned long long>(out.stability.skipped_nonpositive_alpha));
        text += buf;
    }
    if (out.truth_scores) {
        if (out.truth_scores->precision_defined)
            std::snprintf(buf, sizeof(buf), "truth: precision=%.6f recall=%.6f f1=%.6f\n",
                          out.truth_scores->precision, out.truth_scores->recall,
                          out.truth_scores->f1);
        else
            std::snprintf(buf, sizeof(buf), "truth: precision=undefined recall=%.6f\n",
                          out.truth_scores->recall);
        text += buf;
    }
    text += "\n";
}

int cmd_eval(const EvalArgs& args) {
    sx::CodebookFile file = sx::load_codebook(args.codebook);
    const sx::FineCodebook fine = fine_view(file);

    const std::vector<sx::ItemRecord> records = sx::load_stream(args.stream, file.config.dim);
    std::map<std::uint64_t, const sx::ItemRecord*> by_id;
    for (const auto& rec : records) by_id[rec.item_id] = &rec;

    std::map<std::uint64_t, std::uint32_t> truth;
    if (!args.truth.empty())
        for (const auto& [id, cluster] : sx::load_truth_sidecar(args.truth)) truth[id] = cluster;

    const sx::AssignmentIndex index = sx::load_assignments(args.assignments);
    const sx::EvalSample sample =
        build_sample(index, by_id, truth, args.sample_size, args.seed);
    if (sample.empty()) throw std::runtime_error("eval: no sampled items joined the stream file");

    const std::string base = args.out_dir + "/";
    EvalOutputs a = evaluate_one(base, fine, sample, args, !truth.empty());

    std::string summary;
    append_summary(summary, args.codebook, a);

    if (!args.compare.empty()) {
        sx::CodebookFile other = sx::load_codebook(args.compare);
        if (other.config.dim != file.config.dim)
            throw std::runtime_error("eval: codebook dimensions differ");
        const sx::FineCodebook other_fine = fine_view(other);
        const sx::AssignmentIndex other_index = sx::load_assignments(args.compare_assignments);
        const sx::EvalSample other_sample =
            build_sample(other_index, by_id, truth, args.sample_size, args.seed);
        EvalOutputs b = evaluate_one(base + "compare_", other_fine, other_sample, args,
                                     !truth.empty());
        append_summary(summary, args.compare, b);
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "[delta first-second]\ni2c_mean: %+.6f\nc2c_mean: %+.6f\n"
                      "max_median_ratio: %+.3f\ngini: %+.4f\n",
                      a.i2c.mean - b.i2c.mean, a.c2c.mean - b.c2c.mean,
                      a.uniformity.max_median_ratio - b.uniformity.max_median_ratio,
                      a.uniformity.gini - b.uniformity.gini);
        summary += buf;
    }

    {
        std::ofstream f(base + "summary.txt", std::ios::binary);
        if (!f) throw std::runtime_error("cannot open for writing: " + base + "summary.txt");
        f.write(summary.data(), static_cast<std::streamsize>(summary.size()));
    }

    sx::RunManifest manifest;
    manifest.command = "eval";
    manifest.seed = args.seed;
    manifest.config = file.config;
    manifest.input_digests[args.codebook] = sx::file_digest(args.codebook);
    manifest.input_digests[args.stream] = sx::file_digest(args.stream);
    manifest.input_digests[args.assignments] = sx::file_digest(args.assignments);
    manifest.outputs = {base + "summary.txt"};
    manifest.write(base + "eval.manifest.json");

    std::cout << summary;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming item-index codebook builder and evaluation harness"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cgen = app.add_subcommand("gen", "generate a synthetic item stream");
    cgen->add_option("--items", gen.spec.n_items, "number of items")->required();
    cgen->add_option("--clusters", gen.spec.n_true_clusters, "number of true clusters")
        ->required()
        ->check(CLI::PositiveNumber);
    cgen->add_option("-d,--dim", gen.spec.d, "embedding dimension");
    cgen->add_option("--tags", gen.spec.tag_count, "tag vocabulary size");
    cgen->add_option("--concentration", gen.spec.concentration, "within-cluster concentration");
    cgen->add_option("--zipf", gen.spec.zipf_exponent, "cluster-size / popularity skew exponent");
    cgen->add_option("--drift", gen.spec.drift_rate, "center rotation in radians per item");
    cgen->add_option("--seed", gen.spec.seed, "random seed");
    cgen->add_option("-o,--out", gen.out, "output stream file")->required();
    cgen->add_option("--truth-out", gen.truth_out, "truth sidecar path (default <out>.truth)");

    TrainArgs train;
    auto* ctrain = app.add_subcommand("train", "train a codebook on a stream");
    ctrain->add_option("--stream", train.stream, "input stream file")->required();
    ctrain->add_option("--algo", train.algo, "merge|vq|rq");
    ctrain->add_option("-o,--out", train.out, "output codebook file")->required();
    ctrain->add_option("--vq-k", train.opts.vq_k, "baseline codebook size");
    ctrain->add_option("--rq-layers", train.opts.rq_layers, "residual layers (algo=rq)");
    ctrain->add_option("--metric", train.metric, "cosine|l2 (baselines)");
    ctrain->add_option("--seed", train.seed, "seed recorded in the manifest");
    add_config_flags(ctrain, train.opts.cfg);

    MergeArgs merge;
    auto* cmerge = app.add_subcommand("merge", "build the coarse layer of a codebook");
    cmerge->add_option("--codebook", merge.codebook, "trained codebook file")->required();
    cmerge->add_option("--target", merge.target, "coarse prototype count")
        ->required()
        ->check(CLI::PositiveNumber);
    cmerge->add_option("--max-rounds", merge.max_rounds, "merge/prune round budget");
    cmerge->add_option("-o,--out", merge.out, "output path (default: rewrite input)");

    AssignArgs assign;
    auto* cassign = app.add_subcommand("assign", "assign embeddings to codes");
    cassign->add_option("--codebook", assign.codebook, "trained codebook file")->required();
    cassign->add_option("--embeddings", assign.embeddings, "stream-format embeddings file")
        ->required();
    cassign->add_option("-o,--out", assign.out, "output code file")->required();

    EvalArgs eval;
    auto* ceval = app.add_subcommand("eval", "run offline diagnostics");
    ceval->add_option("--codebook", eval.codebook, "trained codebook file")->required();
    ceval->add_option("--assignments", eval.assignments, "assignment index file")->required();
    ceval->add_option("--stream", eval.stream, "stream file with embeddings/popularity")
        ->required();
    ceval->add_option("--truth", eval.truth, "ground-truth sidecar (synthetic streams)");
    ceval->add_option("--out-dir", eval.out_dir, "report directory");
    ceval->add_option("--sample-size", eval.sample_size, "items sampled for metrics");
    ceval->add_option("--seed", eval.seed, "sampling seed");
    ceval->add_option("--stability-eps", eval.stability_eps, "perturbation radius");
    ceval->add_option("--stability-trials", eval.stability_trials, "stability trials");
    auto* compare_opt =
        ceval->add_option("--compare", eval.compare, "second codebook for side-by-side deltas");
    auto* compare_assign_opt =
        ceval->add_option("--compare-assignments", eval.compare_assignments,
                          "assignment file for the second codebook");
    compare_opt->needs(compare_assign_opt);
    compare_assign_opt->needs(compare_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) return cmd_gen(gen);
        if (ctrain->parsed()) return cmd_train(train);
        if (cmerge->parsed()) return cmd_merge(merge);
        if (cassign->parsed()) return cmd_assign(assign);
        if (ceval->parsed()) return cmd_eval(eval);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

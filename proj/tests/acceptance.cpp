// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
//
// The directional criteria (9-11) run the dynamic indexer and the fixed-K
// baseline on the same synthetic Zipf stream and compare the accuracy,
// separation and uniformity diagnostics head to head.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "streamidx/batcher.hpp"
#include "streamidx/evaluator.hpp"
#include "streamidx/indexer.hpp"
#include "streamidx/merger.hpp"
#include "streamidx/occupancy.hpp"
#include "streamidx/pipeline.hpp"
#include "streamidx/similarity.hpp"
#include "streamidx/stream_io.hpp"
#include "streamidx/vq.hpp"
#include "../tests/test_util.hpp"

using namespace streamidx;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] C%02d %s — %s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared acceptance stream: 1e5 items, 500 true clusters, drift on.
SyntheticStreamSpec acceptance_spec() {
    SyntheticStreamSpec spec;
    spec.n_items = 100000;
    spec.n_true_clusters = 500;
    spec.d = 64;
    spec.tag_count = 100;
    spec.concentration = 6.25;
    spec.zipf_exponent = 0.8;
    spec.drift_rate = 5e-6;
    spec.seed = 20260811;
    return spec;
}

IndexConfig acceptance_config() {
    IndexConfig cfg;  // deployed defaults
    cfg.batch_size = 256;  // 100 tags over 1e5 items need small tag batches
    return cfg;
}

struct TrainedPair {
    TrainResult dynamic_run;
    TrainResult vq_run;
    std::vector<ItemRecord> records;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> truth;
    std::uint64_t gate_checked = 0;
    std::uint64_t gate_violations = 0;
    std::uint64_t audit_steps = 0;
    std::uint64_t audit_violations = 0;
    double train_seconds = 0.0;
};

EvalSample make_sample(const TrainResult& run, const std::vector<ItemRecord>& records) {
    std::vector<const ItemRecord*> by_id(records.size() + 1, nullptr);
    for (const auto& rec : records) by_id[rec.item_id] = &rec;
    EvalSample sample;
    for (const auto& [id, codes] : run.index.sorted_entries()) {
        const ItemRecord* rec = by_id[id];
        if (!rec) continue;
        EvalItem item;
        item.item_id = id;
        item.embedding = rec->embedding;
        item.popularity = rec->popularity;
        item.fine_code = codes.fine;
        sample.push_back(std::move(item));
    }
    return sample;
}

// ---------------------------------------------------------------------------

TrainedPair run_acceptance_training() {
    TrainedPair pair;
    auto stream = generate_stream(acceptance_spec());
    pair.records = std::move(stream.records);
    pair.truth = std::move(stream.truth);

    TrainOptions opts;
    opts.algo = TrainAlgo::Dynamic;
    opts.cfg = acceptance_config();

    StepHooks hooks;
    hooks.on_match = [&pair, &opts](const Batch& batch, const MatchResult& match,
                                    const FineCodebook& pre) {
        // Recompute every recorded match-time cosine independently of the
        // matching kernel, against the codebook the decision was made on.
        for (std::size_t i : match.matched) {
            const auto k = static_cast<std::size_t>(match.best_slot[i]);
            const double cos = cosine_similarity(batch[i].embedding, pre.slots[k].codeword);
            ++pair.gate_checked;
            if (!(cos >= opts.cfg.tau)) ++pair.gate_violations;
        }
    };
    hooks.on_step_end = [&pair](const StepReport&, const FineCodebook& fine) {
        ++pair.audit_steps;
        pair.audit_violations += audit_codeword_identity(fine, 1e-9).violations;
    };

    const auto t0 = Clock::now();
    pair.dynamic_run = run_training(vector_source(pair.records), opts, &hooks);
    pair.train_seconds = seconds_since(t0);

    TrainOptions vq_opts;
    vq_opts.algo = TrainAlgo::Vq;
    vq_opts.vq_k = 500;
    vq_opts.cfg = acceptance_config();
    pair.vq_run = run_training(vector_source(pair.records), vq_opts);
    return pair;
}

// C1: zero gate violations over a full >= 1e5-item run (exact).
// C4: Eq-8 style identity audit after every step, zero failures at 1e-9.
void criterion_1_and_4(const TrainedPair& pair) {
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%llu assignments checked, %llu below tau",
                  static_cast<unsigned long long>(pair.gate_checked),
                  static_cast<unsigned long long>(pair.gate_violations));
    report(1, "assignment-gate invariant", pair.gate_checked > 0 && pair.gate_violations == 0,
           detail);

    std::snprintf(detail, sizeof(detail), "%llu steps audited, %llu violations (rel tol 1e-9)",
                  static_cast<unsigned long long>(pair.audit_steps),
                  static_cast<unsigned long long>(pair.audit_violations));
    report(4, "codeword = ema_sum/ema_count audit", pair.audit_steps > 0 && pair.audit_violations == 0,
           detail);
}

// C2: union-find components equal brute-force BFS, 1000 random instances.
void criterion_2() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> tau_dist(0.5, 0.95);
    std::size_t instances = 0, mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        IndexConfig cfg;
        cfg.tau_prime = tau_dist(rng);
        const std::size_t n = 2 + rng() % 199;
        std::vector<ItemRecord> items;
        Vec anchor_a = testutil::unit(rng, 16);
        Vec anchor_b = testutil::unit(rng, 16);
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto pick = rng() % 3;
            Vec e = pick == 0   ? testutil::near(rng, anchor_a, 0.5)
                    : pick == 1 ? testutil::near(rng, anchor_b, 0.5)
                                : testutil::unit(rng, 16);
            items.push_back(testutil::item(i, std::move(e)));
        }
        auto got = union_find_extend(items, cfg);
        auto expect = testutil::bfs_components(items, cfg.tau_prime);
        ++instances;
        if (got.groups.size() != expect.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t g = 0; g < expect.size(); ++g)
            if (got.groups[g].members != expect[g]) {
                ++mismatches;
                break;
            }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%zu instances, %zu mismatches, %.1fs", instances,
                  mismatches, seconds_since(t0));
    report(2, "union-find equals BFS oracle", mismatches == 0, detail);
}

// C3: EMA closed form over T=1000 constant-assignment steps, 1e-9 relative.
void criterion_3() {
    IndexConfig cfg;
    cfg.dim = 4;
    cfg.gamma = 0.9993;
    cfg.tau = -1.0;

    FineCodebook fine;
    ClusterSlot slot;
    slot.state = SlotState::Active;
    slot.codeword = {1.0, 0.0, 0.0, 0.0};
    slot.ema_sum = {0.0, 0.0, 0.0, 0.0};
    slot.ema_count = 0.0;
    fine.slots.push_back(slot);

    const std::size_t c = 5;
    Batch batch;
    for (std::size_t i = 0; i < c; ++i)
        batch.push_back(testutil::item(i, {1.0, 0.25, -0.5, 2.0}));

    const int T = 1000;
    for (int t = 0; t < T; ++t) {
        auto match = match_batch(batch, fine, cfg);
        update_clusters(batch, match, fine, cfg);
    }
    const double geo = 1.0 - std::pow(cfg.gamma, T);
    const double expect_n = static_cast<double>(c) * geo;
    const double n_err = std::abs(fine.slots[0].ema_count - expect_n) / expect_n;

    double s_err = 0.0;
    const Vec batch_sum = {5.0, 1.25, -2.5, 10.0};
    for (std::size_t j = 0; j < 4; ++j) {
        const double expect = batch_sum[j] * geo;
        s_err = std::max(s_err, std::abs(fine.slots[0].ema_sum[j] - expect) / std::abs(expect));
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "N rel err %.2e, S rel err %.2e (tol 1e-9)", n_err,
                  s_err);
    report(3, "EMA geometric closed form", n_err <= 1e-9 && s_err <= 1e-9, detail);
}

// C5: occupancy boundary semantics at eps1/eps2 with delta = 1e-12.
void criterion_5() {
    IndexConfig cfg;
    const double delta = 1e-12;
    auto status_at = [&](double n) {
        auto slot = testutil::active_slot({1.0, 0.0}, 1.0);
        slot.ema_count = n;
        return classify(slot, cfg);
    };
    const bool pass = status_at(cfg.eps1 - delta) == SlotStatus::Underfilled &&
                      status_at(cfg.eps1) == SlotStatus::Growing &&
                      status_at(cfg.eps2 - delta) == SlotStatus::Growing &&
                      status_at(cfg.eps2) == SlotStatus::Stable;
    report(5, "occupancy boundary semantics", pass,
           pass ? "Underfilled/Growing/Growing/Stable at eps1-d, eps1, eps2-d, eps2"
                : "boundary classification mismatch");
}

// C6: silhouettes equal an all-pairs oracle on 500 random merge states.
void criterion_6() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> count(0.5, 10.0);
    std::size_t checked = 0, failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        IndexConfig cfg;
        const std::size_t n = 4 + rng() % 47;           // <= 50 slots
        const std::size_t target = 2 + rng() % 7;       // <= 8 prototypes
        FineCodebook fine;
        for (std::size_t i = 0; i < n; ++i)
            fine.slots.push_back(testutil::active_slot(testutil::unit(rng, 8), count(rng)));
        auto state = make_merge_state(fine, std::min(target, n));
        merge_round(state, cfg);

        auto dist = [&](std::uint32_t a, std::uint32_t b) {
            const auto& u = state.units[a];
            const auto& v = state.units[b];
            return 1.0 - (cosine_similarity(u.codeword, v.codeword) -
                          cfg.lambda * std::min(u.ema_count, v.ema_count));
        };
        for (std::uint32_t unit = 0; unit < state.units.size(); ++unit) {
            const CoarsePrototype* home = nullptr;
            for (const auto& p : state.working)
                for (auto m : p.members)
                    if (m == unit) home = &p;
            double expect = 0.0;
            if (home->members.size() >= 2) {
                double a = 0.0;
                for (auto m : home->members)
                    if (m != unit) a += dist(unit, m);
                a /= static_cast<double>(home->members.size() - 1);
                double b = std::numeric_limits<double>::infinity();
                for (const auto& p : state.working) {
                    if (&p == home) continue;
                    double mean = 0.0;
                    for (auto m : p.members) mean += dist(unit, m);
                    b = std::min(b, mean / static_cast<double>(p.members.size()));
                }
                const double denom = std::max(a, b);
                expect = denom == 0.0 ? 0.0 : (b - a) / denom;
            }
            const double got = silhouette(unit, state, cfg);
            ++checked;
            const double err = std::abs(got - expect);
            worst = std::max(worst, err);
            if (err > 1e-9 || got < -1.0 - 1e-12 || got > 1.0 + 1e-12) ++failures;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%zu silhouettes, worst |err| %.2e, %.1fs", checked,
                  worst, seconds_since(t0));
    report(6, "silhouette equals brute-force oracle", failures == 0, detail);
}

// C7: hierarchy contracts over 200 random codebooks (50-2000 slots).
void criterion_7() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> count(0.5, 20.0);
    std::size_t failures = 0;
    double worst_count_err = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 50 + rng() % 1951;       // 50..2000
        const std::size_t target = 2 + rng() % 99;     // 2..100
        IndexConfig cfg;
        FineCodebook fine;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = count(rng);
            total += c;
            fine.slots.push_back(testutil::active_slot(testutil::unit(rng, 16), c));
        }
        auto coarse = build_hierarchy(fine, cfg, target);
        bool ok = coarse.prototypes.size() == target;
        std::set<std::uint32_t> seen;
        double coarse_total = 0.0;
        for (const auto& p : coarse.prototypes) {
            coarse_total += p.ema_count;
            for (auto m : p.members) ok = ok && seen.insert(m).second;
        }
        ok = ok && seen.size() == n;
        const double rel = std::abs(coarse_total - total) / total;
        worst_count_err = std::max(worst_count_err, rel);
        ok = ok && rel <= 1e-6;
        if (!ok) ++failures;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "200 codebooks, %zu failures, worst count err %.2e, %.0fs", failures,
                  worst_count_err, seconds_since(t0));
    report(7, "hierarchy termination/totality/conservation", failures == 0, detail);
}

// C8: stability theorem, 10k trials on the trained snapshot: zero flips
// into bound-satisfying competitor sets.
void criterion_8(const TrainedPair& pair) {
    const auto t0 = Clock::now();
    auto rep = stability_check(pair.dynamic_run.fine.snapshot(), 0.05, 10000, 808);
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%llu trials, %llu violations, %llu skipped, %.0fs",
                  static_cast<unsigned long long>(rep.trials),
                  static_cast<unsigned long long>(rep.violations),
                  static_cast<unsigned long long>(rep.skipped_nonpositive_alpha),
                  seconds_since(t0));
    report(8, "stability bound: zero argmax flips", rep.violations == 0, detail);
}

// C9-C11: directional reproduction of the accuracy / separation / uniformity
// comparisons on the shared stream.
void criteria_9_10_11(const TrainedPair& pair) {
    const auto dyn_sample = make_sample(pair.dynamic_run, pair.records);
    const auto vq_sample = make_sample(pair.vq_run, pair.records);

    const auto dyn_i2c = i2c_histogram(dyn_sample, pair.dynamic_run.fine);
    const auto vq_i2c = i2c_histogram(vq_sample, pair.vq_run.fine);
    char detail[200];
    std::snprintf(detail, sizeof(detail), "dynamic mean %.4f (>= 0.85), baseline mean %.4f, gap %.4f (>= 0.1)",
                  dyn_i2c.mean, vq_i2c.mean, dyn_i2c.mean - vq_i2c.mean);
    report(9, "I2C accuracy comparison", dyn_i2c.mean >= 0.85 && dyn_i2c.mean - vq_i2c.mean >= 0.1,
           detail);

    const auto dyn_c2c = c2c_histogram(pair.dynamic_run.fine);
    const auto vq_c2c = c2c_histogram(pair.vq_run.fine);
    std::snprintf(detail, sizeof(detail), "dynamic mean %.4f (<= 0.2), baseline mean %.4f, gap %.4f (>= 0.2)",
                  dyn_c2c.mean, vq_c2c.mean, vq_c2c.mean - dyn_c2c.mean);
    report(10, "C2C separation comparison",
           dyn_c2c.mean <= 0.2 && vq_c2c.mean - dyn_c2c.mean >= 0.2, detail);

    const auto edges = default_popularity_edges();
    const auto dyn_uni = uniformity_report(dyn_sample, pair.dynamic_run.fine, edges);
    const auto vq_uni = uniformity_report(vq_sample, pair.vq_run.fine, edges);
    const auto& dyn_low = dyn_uni.buckets.front();
    const auto& vq_low = vq_uni.buckets.front();
    std::snprintf(detail, sizeof(detail),
                  "max/median %.2f vs %.2f; low-pop bucket clusters %zu vs %zu",
                  dyn_uni.max_median_ratio, vq_uni.max_median_ratio, dyn_low.distinct_clusters,
                  vq_low.distinct_clusters);
    report(11, "uniformity comparison",
           dyn_uni.max_median_ratio < vq_uni.max_median_ratio &&
               dyn_low.distinct_clusters > vq_low.distinct_clusters,
           detail);
}

// C12: rq/vq reduction and the degenerate-config differential test.
void criterion_12() {
    std::mt19937_64 rng(1212);
    bool pass = true;
    std::string note = "rq(L=1) == vq on 10000 inputs";

    VqCodebook cb(32, 1, 16, VqMetric::Cosine);
    for (auto& c : cb.layers[0].codewords) {
        c.codeword = testutil::unit(rng, 16);
        c.ema_sum = c.codeword;
        c.ema_count = 1.0;
        c.initialized = true;
    }
    for (int t = 0; t < 10000; ++t) {
        const Vec e = testutil::unit(rng, 16);
        if (rq_assign(e, cb) != std::vector<std::uint32_t>{vq_assign(e, cb).first}) {
            pass = false;
            note = "rq(L=1) diverged from vq";
            break;
        }
    }

    // Degenerate dynamic config vs vq training, 100 random batches.
    if (pass) {
        IndexConfig cfg;
        cfg.dim = 16;
        cfg.tau = -1.0;
        cfg.tau_prime = 2.0;
        cfg.eps1 = 0.0;
        cfg.eps2 = 0.0;

        const std::size_t k = 12;
        VqCodebook vq(k, 1, 16, VqMetric::Cosine);
        FineCodebook fine;
        for (std::size_t i = 0; i < k; ++i) {
            Vec v = testutil::unit(rng, 16);
            auto& c = vq.layers[0].codewords[i];
            c.codeword = v;
            c.ema_sum = v;
            c.ema_count = 1.0;
            c.initialized = true;
            fine.slots.push_back(testutil::active_slot(std::move(v), 1.0));
        }
        AssignmentIndex index;
        TagBatcher batcher(64, 640);
        std::uint64_t id = 0;
        for (int step = 0; step < 100 && pass; ++step) {
            Batch batch;
            for (int i = 0; i < 24; ++i)
                batch.push_back(testutil::item(id++, testutil::unit(rng, 16)));
            const auto match = match_batch(batch, fine, cfg);
            const auto codes = vq_train_step(batch, vq, cfg);
            if (match.matched.size() != batch.size()) pass = false;
            for (std::size_t i = 0; i < batch.size() && pass; ++i)
                if (static_cast<std::uint32_t>(match.best_slot[i]) != codes[i]) pass = false;
            run_step(batch, fine, index, batcher, cfg);
        }
        if (!pass) note = "degenerate dynamic config diverged from vq training";
        else note += "; degenerate differential agreed on 100 batches";
    }
    report(12, "vq/rq reduction and differential", pass, note);
}

// C13: byte-identical reruns of the full pipeline + bit-exact round trips.
void criterion_13() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "streamidx_acceptance_c13";
    fs::create_directories(dir);
    auto path = [&](const std::string& name) { return (dir / name).string(); };

    SyntheticStreamSpec spec;
    spec.n_items = 20000;
    spec.n_true_clusters = 100;
    spec.d = 32;
    spec.tag_count = 20;
    spec.concentration = 12.0;
    spec.zipf_exponent = 1.0;
    spec.drift_rate = 1e-5;
    spec.seed = 1313;

    bool pass = true;
    std::string note;
    for (int run = 0; run < 2; ++run) {
        auto stream = generate_stream(spec);
        write_stream(path("s" + std::to_string(run) + ".csv"), stream.records);

        TrainOptions opts;
        opts.cfg.dim = 32;
        opts.cfg.batch_size = 200;
        auto result = run_training(vector_source(stream.records), opts);
        auto coarse = build_hierarchy(result.fine, opts.cfg, 20);
        save_codebook(path("cb" + std::to_string(run) + ".bin"), result.fine, &coarse, opts.cfg);
        save_assignments(path("a" + std::to_string(run) + ".bin"), result.index);

        auto sample = make_sample(result, stream.records);
        auto hist = i2c_histogram(sample, result.fine);
        FILE* f = std::fopen(path("report" + std::to_string(run) + ".csv").c_str(), "wb");
        for (std::size_t b = 0; b < hist.counts.size(); ++b)
            std::fprintf(f, "%zu,%llu\n", b, static_cast<unsigned long long>(hist.counts[b]));
        std::fprintf(f, "mean,%.17g\nmedian,%.17g\n", hist.mean, hist.median);
        std::fclose(f);
    }
    if (file_digest(path("s0.csv")) != file_digest(path("s1.csv"))) {
        pass = false;
        note = "stream files differ";
    } else if (file_digest(path("cb0.bin")) != file_digest(path("cb1.bin"))) {
        pass = false;
        note = "codebook files differ";
    } else if (file_digest(path("a0.bin")) != file_digest(path("a1.bin"))) {
        pass = false;
        note = "assignment files differ";
    } else if (file_digest(path("report0.csv")) != file_digest(path("report1.csv"))) {
        pass = false;
        note = "reports differ";
    }

    // Round-trip bit-exactness over 100 random codebooks.
    std::mt19937_64 rng(1414);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::size_t rt_failures = 0;
    for (int trial = 0; trial < 100 && pass; ++trial) {
        IndexConfig cfg;
        cfg.dim = 8;
        FineCodebook fine;
        fine.step = rng() % 100000;
        const std::size_t n = 1 + rng() % 20;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 5 == 0) {
                fine.slots.push_back(testutil::empty_slot(8));
                continue;
            }
            ClusterSlot slot;
            slot.state = SlotState::Active;
            slot.ema_count = std::abs(val(rng)) + 1e-6;
            slot.ema_sum.resize(8);
            slot.codeword.resize(8);
            for (int j = 0; j < 8; ++j) {
                slot.ema_sum[j] = val(rng);
                slot.codeword[j] = slot.ema_sum[j] / slot.ema_count;
            }
            if (rng() % 2) slot.growing_since = rng() % 999;
            fine.slots.push_back(std::move(slot));
        }
        save_codebook(path("rt.bin"), fine, nullptr, cfg);
        auto loaded = load_codebook(path("rt.bin"));
        save_codebook(path("rt2.bin"), loaded.fine, nullptr, loaded.config);
        if (file_digest(path("rt.bin")) != file_digest(path("rt2.bin"))) ++rt_failures;
        if (loaded.fine.slots.size() != fine.slots.size()) ++rt_failures;
        for (std::size_t i = 0; i < fine.slots.size() && pass; ++i) {
            const auto& a = fine.slots[i];
            const auto& b = loaded.fine.slots[i];
            if (a.state != b.state || a.codeword != b.codeword || a.ema_sum != b.ema_sum ||
                a.ema_count != b.ema_count || a.growing_since != b.growing_since)
                ++rt_failures;
        }
    }
    if (pass && rt_failures > 0) {
        pass = false;
        note = std::to_string(rt_failures) + " round-trip mismatches";
    }
    if (pass) note = "pipeline reruns byte-identical; 100/100 round trips bit-exact";
    fs::remove_all(dir);
    report(13, "determinism and persistence", pass, note);
}

// C14: throughput, 1e5 items at batch 2048 within 5 minutes.
void criterion_14() {
    SyntheticStreamSpec spec;
    spec.n_items = 100000;
    spec.n_true_clusters = 500;
    spec.d = 64;
    spec.tag_count = 8;  // 2048-item tag batches need a small tag vocabulary
    spec.concentration = 6.25;
    spec.zipf_exponent = 1.0;
    spec.drift_rate = 5e-6;
    spec.seed = 99;
    auto stream = generate_stream(spec);

    TrainOptions opts;
    opts.cfg.batch_size = 2048;

    const auto t0 = Clock::now();
    auto result = run_training(vector_source(stream.records), opts);
    const double secs = seconds_since(t0);
    const std::size_t active = active_count(result.fine);

    char detail[160];
    std::snprintf(detail, sizeof(detail), "%.1fs for 1e5 items (limit 300s), %zu active slots",
                  secs, active);
    report(14, "throughput", secs <= 300.0 && active <= 5000, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite (streamidx)\n");
    const auto t0 = Clock::now();

    auto pair = run_acceptance_training();
    std::printf("  [setup] trained dynamic (%zu steps, %.1fs) and baseline codebooks\n",
                pair.dynamic_run.steps.size(), pair.train_seconds);

    criterion_1_and_4(pair);
    criterion_2();
    criterion_3();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(pair);
    criteria_9_10_11(pair);
    criterion_12();
    criterion_13();
    criterion_14();

    std::printf("%s in %.0fs (%d failing)\n", g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES",
                seconds_since(t0), g_failures);
    return g_failures == 0 ? 0 : 1;
}

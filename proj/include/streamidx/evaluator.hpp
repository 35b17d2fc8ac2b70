#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

// One sampled item joined with its assigned fine code (and, for synthetic
// streams, the ground-truth cluster id).
struct EvalItem {
    std::uint64_t item_id = 0;
    Vec embedding;
    std::uint64_t popularity = 0;
    std::uint32_t fine_code = 0;
    std::optional<std::uint32_t> truth;
};

using EvalSample = std::vector<EvalItem>;

// Fixed-width cosine histogram over [-1, 1].
struct CosineHistogram {
    static constexpr double kBinWidth = 0.02;
    std::vector<std::uint64_t> counts;  // 100 bins
    std::uint64_t total = 0;
    double mean = 0.0;
    double median = 0.0;
    std::size_t stale_excluded = 0;  // items whose code points at an Empty slot

    static std::size_t bin_of(double cosine);
};

// cosine(e_i, codeword of assigned slot) per sampled item. Items pointing at
// a slot that has since been reset are excluded and tallied.
CosineHistogram i2c_histogram(const EvalSample& sample, const FineCodebook& snapshot);

// cosine over all unordered Active-slot pairs. Requires >= 2 Active slots.
CosineHistogram c2c_histogram(const FineCodebook& snapshot);

// VV-style popularity strata; edges in item-view counts, last bucket open.
std::vector<double> default_popularity_edges();

struct BucketCurve {
    std::string label;
    double lo = 0.0, hi = 0.0;          // (lo, hi]
    std::uint64_t items = 0;            // bucket population (0 => curve omitted)
    std::size_t distinct_clusters = 0;
    std::vector<double> cum_share;      // descending-count cluster order, ends at 1
};

struct UniformityReport {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> slot_counts;  // occupied slots
    std::uint64_t max_size = 0;
    double median_size = 0.0;
    double max_median_ratio = 0.0;
    double gini = 0.0;
    std::vector<BucketCurve> buckets;
    std::size_t stale_excluded = 0;
};

UniformityReport uniformity_report(const EvalSample& sample, const FineCodebook& snapshot,
                                   const std::vector<double>& bucket_edges);

// Empirical check of the assignment-stability bound: codewords are unit
// normalized, probe embeddings are drawn near random codewords, and for each
// probe the competitor set J holds every codeword j with
//   q_k . q_j <= 1 - (eps + sqrt(eps^2 + 2 a |Delta|))^2 / (2 a^2),
// where a = q_k . e and Delta = e - a q_k. A violation is a perturbed argmax
// (|delta| <= eps, delta uniform on the eps-sphere) landing in J; the bound
// says that cannot happen, so any nonzero count is a defect.
struct StabilityReport {
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    std::uint64_t skipped_nonpositive_alpha = 0;
};

StabilityReport stability_check(const FineCodebook& snapshot, double epsilon,
                                std::uint64_t trials, std::uint64_t seed);

// Pairwise precision/recall of "same fine cluster" against "same true
// cluster", computed from contingency counts (exact over all pairs).
struct PairScores {
    bool precision_defined = false;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t predicted_pairs = 0;
    std::uint64_t truth_pairs = 0;
    std::uint64_t agreeing_pairs = 0;
};

PairScores ground_truth_scores(const EvalSample& sample);

}  // namespace streamidx

#include "streamidx/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "streamidx/rng.hpp"
#include "streamidx/similarity.hpp"

namespace streamidx {

std::size_t CosineHistogram::bin_of(double cosine) {
    const double clamped = std::clamp(cosine, -1.0, 1.0);
    auto bin = static_cast<std::size_t>((clamped + 1.0) / kBinWidth);
    return std::min<std::size_t>(bin, 99);  // +1.0 folds into the last bin
}

namespace {

CosineHistogram build_histogram(std::vector<double>& values, std::size_t stale) {
    CosineHistogram hist;
    hist.counts.assign(100, 0);
    hist.stale_excluded = stale;
    hist.total = values.size();
    if (values.empty()) return hist;
    double sum = 0.0;
    for (double v : values) {
        ++hist.counts[CosineHistogram::bin_of(v)];
        sum += v;
    }
    hist.mean = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    hist.median = (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    return hist;
}

}  // namespace

CosineHistogram i2c_histogram(const EvalSample& sample, const FineCodebook& snapshot) {
    if (sample.empty()) throw std::invalid_argument("i2c_histogram: empty sample");
    std::vector<double> values;
    values.reserve(sample.size());
    std::size_t stale = 0;
    for (const auto& item : sample) {
        if (item.fine_code >= snapshot.slots.size() ||
            snapshot.slots[item.fine_code].state != SlotState::Active) {
            ++stale;
            continue;
        }
        values.push_back(cosine_similarity(item.embedding, snapshot.slots[item.fine_code].codeword));
    }
    return build_histogram(values, stale);
}

CosineHistogram c2c_histogram(const FineCodebook& snapshot) {
    std::vector<const Vec*> active;
    for (const auto& slot : snapshot.slots)
        if (slot.state == SlotState::Active) active.push_back(&slot.codeword);
    if (active.size() < 2)
        throw std::invalid_argument("c2c_histogram: need >= 2 Active slots");

    std::vector<double> inv_norm(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) inv_norm[i] = 1.0 / norm(*active[i]);

    std::vector<double> values;
    values.reserve(active.size() * (active.size() - 1) / 2);
    for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j)
            values.push_back(dot(*active[i], *active[j]) * inv_norm[i] * inv_norm[j]);
    return build_histogram(values, 0);
}

std::vector<double> default_popularity_edges() {
    return {0.0, 1e3, 5e3, 1e4, 1e5};
}

UniformityReport uniformity_report(const EvalSample& sample, const FineCodebook& snapshot,
                                   const std::vector<double>& bucket_edges) {
    UniformityReport report;

    std::map<std::uint32_t, std::uint64_t> counts;
    std::vector<const EvalItem*> live;
    live.reserve(sample.size());
    for (const auto& item : sample) {
        if (item.fine_code >= snapshot.slots.size() ||
            snapshot.slots[item.fine_code].state != SlotState::Active) {
            ++report.stale_excluded;
            continue;
        }
        ++counts[item.fine_code];
        live.push_back(&item);
    }
    report.slot_counts.assign(counts.begin(), counts.end());

    if (!report.slot_counts.empty()) {
        std::vector<std::uint64_t> sizes;
        sizes.reserve(report.slot_counts.size());
        for (const auto& [slot, c] : report.slot_counts) sizes.push_back(c);
        std::sort(sizes.begin(), sizes.end());
        const std::size_t n = sizes.size();
        report.max_size = sizes.back();
        report.median_size =
            (n % 2 == 1) ? static_cast<double>(sizes[n / 2])
                         : 0.5 * static_cast<double>(sizes[n / 2 - 1] + sizes[n / 2]);
        report.max_median_ratio =
            report.median_size > 0.0 ? static_cast<double>(report.max_size) / report.median_size : 0.0;

        // Gini over occupied-slot sizes via the sorted-rank identity.
        double weighted = 0.0, total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            weighted += static_cast<double>(i + 1) * static_cast<double>(sizes[i]);
            total += static_cast<double>(sizes[i]);
        }
        report.gini =
            (2.0 * weighted) / (static_cast<double>(n) * total) - (static_cast<double>(n) + 1.0) / static_cast<double>(n);
    }

    // Popularity buckets: (edge[b], edge[b+1]] with the last bucket open.
    for (std::size_t b = 0; b < bucket_edges.size(); ++b) {
        BucketCurve curve;
        curve.lo = bucket_edges[b];
        curve.hi = (b + 1 < bucket_edges.size()) ? bucket_edges[b + 1]
                                                 : std::numeric_limits<double>::infinity();
        char label[64];
        if (std::isinf(curve.hi))
            std::snprintf(label, sizeof(label), "(%.0f,inf)", curve.lo);
        else
            std::snprintf(label, sizeof(label), "(%.0f,%.0f]", curve.lo, curve.hi);
        curve.label = label;

        std::map<std::uint32_t, std::uint64_t> bucket_counts;
        std::uint64_t bucket_total = 0;
        for (const EvalItem* item : live) {
            const auto pop = static_cast<double>(item->popularity);
            if (pop > curve.lo && pop <= curve.hi) {
                ++bucket_counts[item->fine_code];
                ++bucket_total;
            }
        }
        curve.items = bucket_total;
        curve.distinct_clusters = bucket_counts.size();
        if (bucket_total > 0) {
            std::vector<std::uint64_t> sizes;
            sizes.reserve(bucket_counts.size());
            for (const auto& [slot, c] : bucket_counts) sizes.push_back(c);
            std::sort(sizes.begin(), sizes.end(), std::greater<>());
            double cum = 0.0;
            curve.cum_share.reserve(sizes.size());
            for (std::uint64_t c : sizes) {
                cum += static_cast<double>(c) / static_cast<double>(bucket_total);
                curve.cum_share.push_back(cum);
            }
            curve.cum_share.back() = 1.0;  // absorb rounding at the terminal point
        }
        report.buckets.push_back(std::move(curve));
    }
    return report;
}

StabilityReport stability_check(const FineCodebook& snapshot, double epsilon,
                                std::uint64_t trials, std::uint64_t seed) {
    std::vector<Vec> q;  // unit-normalized Active codewords
    for (const auto& slot : snapshot.slots) {
        if (slot.state != SlotState::Active) continue;
        Vec v = slot.codeword;
        const double n = norm(v);
        if (n == 0.0) continue;
        for (double& x : v) x /= n;
        q.push_back(std::move(v));
    }
    if (q.size() < 2)
        throw std::invalid_argument("stability_check: need >= 2 Active codewords");
    const std::size_t dim = q[0].size();

    StabilityReport report;
    report.trials = trials;
    Rng rng(seed);

    for (std::uint64_t t = 0; t < trials; ++t) {
        // Probe near a random codeword so alpha stays in the regime the bound
        // is about; a uniform sphere probe would make every competitor set
        // empty and the check vacuous.
        const std::size_t anchor = rng.below(q.size());
        const double spread = 0.6 * rng.uniform01();
        Vec e(dim);
        Vec g = rng.gaussian_vec(dim);
        const double gscale = spread / std::sqrt(static_cast<double>(dim));
        for (std::size_t j = 0; j < dim; ++j) e[j] = q[anchor][j] + gscale * g[j];
        const double en = norm(e);
        for (double& x : e) x /= en;

        // Assigned codeword: argmax dot == argmax cosine on unit codewords.
        std::size_t k = 0;
        double best = -2.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double d = dot(q[j], e);
            if (d > best) {
                best = d;
                k = j;
            }
        }
        const double alpha = best;
        if (alpha <= 0.0) {
            ++report.skipped_nonpositive_alpha;
            continue;
        }
        double delta_norm2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double r = e[j] - alpha * q[k][j];
            delta_norm2 += r * r;
        }
        const double delta_norm = std::sqrt(std::max(0.0, delta_norm2));

        const double root = std::sqrt(epsilon * epsilon + 2.0 * alpha * delta_norm);
        const double bound = 1.0 - (epsilon + root) * (epsilon + root) / (2.0 * alpha * alpha);

        std::vector<char> in_competitor_set(q.size(), 0);
        bool any = false;
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (j == k) continue;
            if (dot(q[k], q[j]) <= bound) {
                in_competitor_set[j] = 1;
                any = true;
            }
        }
        if (!any) continue;

        Vec delta = rng.unit_vector(dim);
        for (double& x : delta) x *= epsilon;
        Vec perturbed(dim);
        for (std::size_t j = 0; j < dim; ++j) perturbed[j] = e[j] + delta[j];

        std::size_t argmax = 0;
        double pbest = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < q.size(); ++j) {
            const double d = dot(q[j], perturbed);
            if (d > pbest) {
                pbest = d;
                argmax = j;
            }
        }
        if (argmax != k && in_competitor_set[argmax]) ++report.violations;
    }
    return report;
}

PairScores ground_truth_scores(const EvalSample& sample) {
    PairScores scores;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> cells;
    std::map<std::uint32_t, std::uint64_t> by_fine;
    std::map<std::uint32_t, std::uint64_t> by_truth;
    for (const auto& item : sample) {
        if (!item.truth) throw std::invalid_argument("ground_truth_scores: missing truth id");
        ++cells[{item.fine_code, *item.truth}];
        ++by_fine[item.fine_code];
        ++by_truth[*item.truth];
    }
    auto pairs = [](std::uint64_t n) { return n * (n - 1) / 2; };
    for (const auto& [key, n] : cells) scores.agreeing_pairs += pairs(n);
    for (const auto& [key, n] : by_fine) scores.predicted_pairs += pairs(n);
    for (const auto& [key, n] : by_truth) scores.truth_pairs += pairs(n);

    scores.precision_defined = scores.predicted_pairs > 0;
    if (scores.precision_defined)
        scores.precision =
            static_cast<double>(scores.agreeing_pairs) / static_cast<double>(scores.predicted_pairs);
    scores.recall = scores.truth_pairs > 0 ? static_cast<double>(scores.agreeing_pairs) /
                                                 static_cast<double>(scores.truth_pairs)
                                           : 0.0;
    scores.f1 = (scores.precision + scores.recall > 0.0 && scores.precision_defined)
                    ? 2.0 * scores.precision * scores.recall / (scores.precision + scores.recall)
                    : 0.0;
    return scores;
}

}  // namespace streamidx

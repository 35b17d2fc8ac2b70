#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "streamidx/types.hpp"
#include "streamidx/vq.hpp"

namespace streamidx {

// ---------------------------------------------------------------------------
// Stream files: one record per line,
//   item_id,tag,popularity,e0,e1,...,e{d-1}
// with embeddings printed at full double precision. Text was chosen for
// diff-ability; the parsing contract is bit-exact round-trip.
// ---------------------------------------------------------------------------

// Streaming reader with bounded memory. Errors name the line and cause.
class StreamReader {
public:
    StreamReader(const std::string& path, std::size_t expected_dim);
    ~StreamReader();
    StreamReader(const StreamReader&) = delete;
    StreamReader& operator=(const StreamReader&) = delete;

    std::optional<ItemRecord> next();

private:
    struct Impl;
    Impl* impl_;
};

std::vector<ItemRecord> load_stream(const std::string& path, std::size_t expected_dim);

void write_stream(const std::string& path, const std::vector<ItemRecord>& records);
void append_record_line(std::string& out, const ItemRecord& record);

// Ground-truth sidecar: item_id,true_cluster lines keyed by item id.
void write_truth_sidecar(const std::string& path,
                         const std::vector<std::pair<std::uint64_t, std::uint32_t>>& truth);
std::vector<std::pair<std::uint64_t, std::uint32_t>> load_truth_sidecar(const std::string& path);

// ---------------------------------------------------------------------------
// Synthetic streams: Zipf-skewed unit-sphere clusters grouped under shared
// tag directions, optional per-item center rotation (drift), popularity with
// an exact power-law rank profile correlated with cluster rank. Identical
// spec + seed reproduces the stream byte for byte.
// ---------------------------------------------------------------------------

struct SyntheticStreamSpec {
    std::size_t n_items = 0;
    std::size_t n_true_clusters = 0;
    std::size_t d = 64;
    std::size_t tag_count = 100;
    double concentration = 6.25;   // within-cluster spread sigma = 1/sqrt(concentration)
    double zipf_exponent = 1.0;    // cluster-size and popularity skew
    double drift_rate = 0.0;       // radians of center rotation per emitted item
    std::uint64_t seed = 0;
};

struct SyntheticStream {
    std::vector<ItemRecord> records;                              // emission order
    std::vector<std::pair<std::uint64_t, std::uint32_t>> truth;   // item_id -> true cluster
};

SyntheticStream generate_stream(const SyntheticStreamSpec& spec);

// ---------------------------------------------------------------------------
// Codebook container: self-describing binary file with a header (version,
// kind, dim, config echo, counts), per-slot records at full double
// precision, and a trailing whole-file checksum. Round-trip is bit-exact,
// including Empty slots, EMA variables and step counters.
// ---------------------------------------------------------------------------

enum class CodebookKind : std::uint32_t { Dynamic = 0, Quantizer = 1 };

struct CodebookFile {
    CodebookKind kind = CodebookKind::Dynamic;
    IndexConfig config;
    FineCodebook fine;                    // Dynamic only
    std::optional<CoarseCodebook> coarse; // Dynamic only
    std::optional<VqCodebook> quantizer;  // Quantizer only
};

void save_codebook(const std::string& path, const FineCodebook& fine,
                   const CoarseCodebook* coarse, const IndexConfig& config);
void save_vq_codebook(const std::string& path, const VqCodebook& cb, const IndexConfig& config);
CodebookFile load_codebook(const std::string& path);

// Assignment index persistence (rows sorted by item id, same container
// discipline: header + checksum).
void save_assignments(const std::string& path, const AssignmentIndex& index);
AssignmentIndex load_assignments(const std::string& path);

// FNV-1a 64-bit digest, used for file fingerprints in manifests and for the
// container checksum.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t file_digest(const std::string& path);

}  // namespace streamidx

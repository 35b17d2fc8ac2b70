#include "streamidx/stream_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "streamidx/rng.hpp"
#include "streamidx/similarity.hpp"

namespace streamidx {

// ---------------------------------------------------------------------------
// Stream text format
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void line_error(const std::string& path, std::size_t line_no, const std::string& why) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + why);
}

ItemRecord parse_record_line(const std::string& path, std::size_t line_no, const std::string& line,
                             std::size_t expected_dim) {
    ItemRecord rec;
    const char* p = line.c_str();
    char* end = nullptr;

    auto digit = [](char c) { return c >= '0' && c <= '9'; };

    errno = 0;
    if (!digit(*p)) line_error(path, line_no, "malformed item_id");
    rec.item_id = std::strtoull(p, &end, 10);
    if (end == p || *end != ',' || errno != 0) line_error(path, line_no, "malformed item_id");
    p = end + 1;

    if (!digit(*p)) line_error(path, line_no, "malformed tag");
    const unsigned long long tag = std::strtoull(p, &end, 10);
    if (end == p || *end != ',' || errno != 0 || tag > 0xFFFFFFFFull)
        line_error(path, line_no, "malformed tag");
    rec.tag = static_cast<std::uint32_t>(tag);
    p = end + 1;

    if (!digit(*p)) line_error(path, line_no, "malformed popularity");
    rec.popularity = std::strtoull(p, &end, 10);
    if (end == p || *end != ',' || errno != 0) line_error(path, line_no, "malformed popularity");
    p = end;

    rec.embedding.reserve(expected_dim);
    while (*p == ',') {
        ++p;
        const double v = std::strtod(p, &end);
        if (end == p) line_error(path, line_no, "malformed embedding value");
        if (!std::isfinite(v)) line_error(path, line_no, "non-finite embedding value");
        rec.embedding.push_back(v);
        p = end;
    }
    if (*p != '\0') line_error(path, line_no, "trailing garbage after embedding");
    if (rec.embedding.size() != expected_dim)
        line_error(path, line_no,
                   "dimension mismatch: expected d=" + std::to_string(expected_dim) + ", got " +
                       std::to_string(rec.embedding.size()));
    if (norm(rec.embedding) == 0.0) line_error(path, line_no, "zero-norm embedding");
    return rec;
}

void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

struct StreamReader::Impl {
    std::ifstream in;
    std::string path;
    std::size_t expected_dim;
    std::size_t line_no = 0;
};

StreamReader::StreamReader(const std::string& path, std::size_t expected_dim)
    : impl_(new Impl{std::ifstream(path), path, expected_dim}) {
    if (!impl_->in) {
        delete impl_;
        throw std::runtime_error("cannot open stream file: " + path);
    }
}

StreamReader::~StreamReader() { delete impl_; }

std::optional<ItemRecord> StreamReader::next() {
    std::string line;
    while (std::getline(impl_->in, line)) {
        ++impl_->line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        return parse_record_line(impl_->path, impl_->line_no, line, impl_->expected_dim);
    }
    return std::nullopt;
}

std::vector<ItemRecord> load_stream(const std::string& path, std::size_t expected_dim) {
    StreamReader reader(path, expected_dim);
    std::vector<ItemRecord> records;
    while (auto rec = reader.next()) records.push_back(std::move(*rec));
    return records;
}

void append_record_line(std::string& out, const ItemRecord& record) {
    out += std::to_string(record.item_id);
    out += ',';
    out += std::to_string(record.tag);
    out += ',';
    out += std::to_string(record.popularity);
    for (double v : record.embedding) {
        out += ',';
        append_double(out, v);
    }
    out += '\n';
}

void write_stream(const std::string& path, const std::vector<ItemRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    std::string buf;
    for (const auto& rec : records) {
        buf.clear();
        append_record_line(buf, rec);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_truth_sidecar(const std::string& path,
                         const std::vector<std::pair<std::uint64_t, std::uint32_t>>& truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& [id, cluster] : truth) out << id << ',' << cluster << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> load_truth_sidecar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truth sidecar: " + path);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> truth;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        char* end = nullptr;
        const std::uint64_t id = std::strtoull(line.c_str(), &end, 10);
        if (end == line.c_str() || *end != ',') line_error(path, line_no, "malformed truth row");
        const char* p = end + 1;
        const unsigned long cluster = std::strtoul(p, &end, 10);
        if (end == p) line_error(path, line_no, "malformed truth cluster");
        truth.emplace_back(id, static_cast<std::uint32_t>(cluster));
    }
    return truth;
}

// ---------------------------------------------------------------------------
// Synthetic generator
// ---------------------------------------------------------------------------

namespace {

// Zipf shares over ranks 1..n, apportioned to integer counts that sum to
// total with every rank getting at least one (largest-remainder rounding).
std::vector<std::size_t> zipf_counts(std::size_t n, double exponent, std::size_t total) {
    std::vector<double> share(n);
    double z = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        share[k] = std::pow(static_cast<double>(k + 1), -exponent);
        z += share[k];
    }
    std::vector<std::size_t> counts(n, 1);
    std::size_t remaining = total - n;
    std::vector<std::pair<double, std::size_t>> remainders(n);
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double quota = share[k] / z * static_cast<double>(remaining);
        const auto whole = static_cast<std::size_t>(quota);
        counts[k] += whole;
        assigned += whole;
        remainders[k] = {quota - static_cast<double>(whole), k};
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < remaining - assigned; ++i) ++counts[remainders[i].second];
    return counts;
}

}  // namespace

SyntheticStream generate_stream(const SyntheticStreamSpec& spec) {
    if (spec.n_true_clusters == 0) throw std::invalid_argument("generate_stream: need >= 1 cluster");
    if (spec.n_true_clusters > spec.n_items)
        throw std::invalid_argument("generate_stream: n_true_clusters exceeds n_items");
    if (spec.tag_count == 0) throw std::invalid_argument("generate_stream: need >= 1 tag");
    if (spec.d == 0) throw std::invalid_argument("generate_stream: need d >= 1");
    if (!(spec.concentration > 0.0))
        throw std::invalid_argument("generate_stream: concentration must be positive");

    Rng rng(spec.seed);
    const std::size_t n_clusters = spec.n_true_clusters;

    // Anchor directions per tag; clusters of the same tag scatter around the
    // anchor so tags form semantically related groups of clusters.
    std::vector<Vec> tag_dir(spec.tag_count);
    for (auto& dir : tag_dir) dir = rng.unit_vector(spec.d);
    constexpr double kWithinTagSpread = 0.9;

    std::vector<Vec> center(n_clusters);
    std::vector<Vec> drift_axis(n_clusters);
    std::vector<std::uint32_t> cluster_tag(n_clusters);
    for (std::size_t k = 0; k < n_clusters; ++k) {
        cluster_tag[k] = static_cast<std::uint32_t>(k % spec.tag_count);
        Vec dir = rng.unit_vector(spec.d);
        Vec c(spec.d);
        for (std::size_t j = 0; j < spec.d; ++j)
            c[j] = tag_dir[cluster_tag[k]][j] + kWithinTagSpread * dir[j];
        const double inv = 1.0 / norm(c);
        for (double& v : c) v *= inv;
        center[k] = std::move(c);

        // Fixed rotation plane per cluster: axis orthogonal to the center.
        Vec axis = rng.unit_vector(spec.d);
        const double along = dot(axis, center[k]);
        for (std::size_t j = 0; j < spec.d; ++j) axis[j] -= along * center[k][j];
        const double an = norm(axis);
        for (double& v : axis) v /= an;
        drift_axis[k] = std::move(axis);
    }

    const std::vector<std::size_t> counts = zipf_counts(n_clusters, spec.zipf_exponent, spec.n_items);

    // Cluster-major item list: position doubles as the global popularity
    // rank, so items of big (low-rank) clusters are also the popular ones.
    std::vector<std::uint32_t> item_cluster;
    item_cluster.reserve(spec.n_items);
    for (std::size_t k = 0; k < n_clusters; ++k)
        item_cluster.insert(item_cluster.end(), counts[k], static_cast<std::uint32_t>(k));

    constexpr double kPopularityScale = 1e6;
    std::vector<std::uint64_t> item_pop(spec.n_items);
    for (std::size_t i = 0; i < spec.n_items; ++i) {
        const double pop = kPopularityScale * std::pow(static_cast<double>(i + 1), -spec.zipf_exponent);
        item_pop[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(pop));
    }

    std::vector<std::size_t> emit_order(spec.n_items);
    std::iota(emit_order.begin(), emit_order.end(), std::size_t{0});
    rng.shuffle(emit_order);

    const double sigma = 1.0 / std::sqrt(spec.concentration);

    SyntheticStream out;
    out.records.reserve(spec.n_items);
    out.truth.reserve(spec.n_items);
    for (std::size_t t = 0; t < spec.n_items; ++t) {
        const std::size_t i = emit_order[t];
        const std::uint32_t k = item_cluster[i];

        const double theta = spec.drift_rate * static_cast<double>(t);
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        Vec e(spec.d);
        Vec g = rng.gaussian_vec(spec.d);
        const double gscale = sigma / std::sqrt(static_cast<double>(spec.d));
        for (std::size_t j = 0; j < spec.d; ++j)
            e[j] = c * center[k][j] + s * drift_axis[k][j] + gscale * g[j];
        const double inv = 1.0 / norm(e);
        for (double& v : e) v *= inv;

        ItemRecord rec;
        rec.item_id = static_cast<std::uint64_t>(i);
        rec.embedding = std::move(e);
        rec.tag = cluster_tag[k];
        rec.popularity = item_pop[i];
        out.records.push_back(std::move(rec));
        out.truth.emplace_back(static_cast<std::uint64_t>(i), k);
    }
    std::sort(out.truth.begin(), out.truth.end());
    return out;
}

// ---------------------------------------------------------------------------
// Binary container
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for digest: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (in.eof()) break;
    }
    return h;
}

namespace {

constexpr char kMagic[8] = {'S', 'I', 'D', 'X', 'C', 'B', '0', '1'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr char kAssignMagic[8] = {'S', 'I', 'D', 'X', 'A', 'I', '0', '1'};

class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void f64(double v) { raw(&v, 8); }
    void bytes(const void* p, std::size_t n) { raw(p, n); }
    void vec(const Vec& v) {
        for (double x : v) f64(x);
    }
    const std::string& data() const { return buf_; }

private:
    void raw(const void* p, std::size_t n) {
        buf_.append(static_cast<const char*>(p), n);
    }
    std::string buf_;
};

class ByteReader {
public:
    ByteReader(const std::string& data, const std::string& path) : data_(data), path_(path) {}
    std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
    std::uint32_t u32() {
        std::uint32_t v;
        std::memcpy(&v, take(4), 4);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v;
        std::memcpy(&v, take(8), 8);
        return v;
    }
    double f64() {
        double v;
        std::memcpy(&v, take(8), 8);
        return v;
    }
    Vec vec(std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = f64();
        return v;
    }
    const char* take(std::size_t n) {
        if (pos_ + n > data_.size())
            throw std::runtime_error("truncated codebook file: " + path_);
        const char* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }
    std::size_t pos() const { return pos_; }

private:
    const std::string& data_;
    std::string path_;
    std::size_t pos_ = 0;
};

void write_config(ByteWriter& w, const IndexConfig& cfg) {
    w.f64(cfg.tau);
    w.f64(cfg.gamma);
    w.f64(cfg.tau_prime);
    w.u32(cfg.min_cluster_size);
    w.f64(cfg.eps1);
    w.f64(cfg.eps2);
    w.u64(cfg.growth_window);
    w.f64(cfg.lambda);
    w.f64(cfg.prune_threshold);
    w.u64(cfg.batch_size);
    w.u64(cfg.dim);
}

IndexConfig read_config(ByteReader& r) {
    IndexConfig cfg;
    cfg.tau = r.f64();
    cfg.gamma = r.f64();
    cfg.tau_prime = r.f64();
    cfg.min_cluster_size = r.u32();
    cfg.eps1 = r.f64();
    cfg.eps2 = r.f64();
    cfg.growth_window = r.u64();
    cfg.lambda = r.f64();
    cfg.prune_threshold = r.f64();
    cfg.batch_size = r.u64();
    cfg.dim = r.u64();
    return cfg;
}

void write_file_with_checksum(const std::string& path, const ByteWriter& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const std::uint64_t checksum = fnv1a64(w.data().data(), w.data().size());
    out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
    out.write(reinterpret_cast<const char*>(&checksum), 8);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file_checked(const std::string& path, const char magic[8]) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string data = ss.str();
    if (data.size() < 16) throw std::runtime_error("truncated codebook file: " + path);
    const std::string payload = data.substr(0, data.size() - 8);
    std::uint64_t stored;
    std::memcpy(&stored, data.data() + data.size() - 8, 8);
    if (fnv1a64(payload.data(), payload.size()) != stored)
        throw std::runtime_error("checksum mismatch (corrupted file): " + path);
    if (std::memcmp(payload.data(), magic, 6) != 0)
        throw std::runtime_error("not a recognized container: " + path);
    if (std::memcmp(payload.data(), magic, 8) != 0)
        throw std::runtime_error("container version mismatch in " + path + ": file has '" +
                                 payload.substr(6, 2) + "', expected '" +
                                 std::string(magic + 6, 2) + "'");
    return payload;
}

void write_fine_section(ByteWriter& w, const FineCodebook& fine) {
    w.u64(fine.step);
    w.u64(fine.slots.size());
    for (const auto& slot : fine.slots) {
        w.u8(static_cast<std::uint8_t>(slot.state));
        w.vec(slot.codeword);
        w.vec(slot.ema_sum);
        w.f64(slot.ema_count);
        w.u64(slot.created_step);
        w.u8(slot.growing_since ? 1 : 0);
        w.u64(slot.growing_since.value_or(0));
    }
}

FineCodebook read_fine_section(ByteReader& r, std::size_t dim) {
    FineCodebook fine;
    fine.step = r.u64();
    const std::uint64_t n = r.u64();
    fine.slots.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        ClusterSlot slot;
        slot.state = static_cast<SlotState>(r.u8());
        slot.codeword = r.vec(dim);
        slot.ema_sum = r.vec(dim);
        slot.ema_count = r.f64();
        slot.created_step = r.u64();
        const bool has_growing = r.u8() != 0;
        const std::uint64_t growing = r.u64();
        if (has_growing) slot.growing_since = growing;
        fine.slots.push_back(std::move(slot));
    }
    return fine;
}

}  // namespace

void save_codebook(const std::string& path, const FineCodebook& fine,
                   const CoarseCodebook* coarse, const IndexConfig& config) {
    ByteWriter w;
    w.bytes(kMagic, 8);
    w.u32(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(CodebookKind::Dynamic));
    w.u64(config.dim);
    write_config(w, config);
    write_fine_section(w, fine);
    w.u8(coarse ? 1 : 0);
    if (coarse) {
        w.u64(coarse->prototypes.size());
        for (const auto& p : coarse->prototypes) {
            w.vec(p.embedding);
            w.f64(p.ema_count);
            w.u64(p.members.size());
            for (std::uint32_t m : p.members) w.u32(m);
        }
    }
    write_file_with_checksum(path, w);
}

void save_vq_codebook(const std::string& path, const VqCodebook& cb, const IndexConfig& config) {
    ByteWriter w;
    w.bytes(kMagic, 8);
    w.u32(kFormatVersion);
    w.u32(static_cast<std::uint32_t>(CodebookKind::Quantizer));
    w.u64(cb.dim);
    write_config(w, config);
    w.u8(static_cast<std::uint8_t>(cb.metric));
    w.u64(cb.layers.size());
    w.u64(cb.k());
    for (const auto& layer : cb.layers) {
        for (const auto& c : layer.codewords) {
            w.u8(c.initialized ? 1 : 0);
            w.vec(c.codeword);
            w.vec(c.ema_sum);
            w.f64(c.ema_count);
        }
    }
    write_file_with_checksum(path, w);
}

CodebookFile load_codebook(const std::string& path) {
    const std::string payload = read_file_checked(path, kMagic);
    ByteReader r(payload, path);
    r.take(8);  // magic
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion)
        throw std::runtime_error("container version mismatch in " + path + ": file version " +
                                 std::to_string(version) + ", expected " +
                                 std::to_string(kFormatVersion));
    CodebookFile file;
    file.kind = static_cast<CodebookKind>(r.u32());
    const std::uint64_t dim = r.u64();
    file.config = read_config(r);

    if (file.kind == CodebookKind::Dynamic) {
        file.fine = read_fine_section(r, dim);
        if (r.u8() != 0) {
            CoarseCodebook coarse;
            const std::uint64_t np = r.u64();
            coarse.prototypes.reserve(np);
            for (std::uint64_t i = 0; i < np; ++i) {
                CoarsePrototype p;
                p.embedding = r.vec(dim);
                p.ema_count = r.f64();
                const std::uint64_t nm = r.u64();
                p.members.reserve(nm);
                for (std::uint64_t m = 0; m < nm; ++m) p.members.push_back(r.u32());
                coarse.prototypes.push_back(std::move(p));
            }
            file.coarse = std::move(coarse);
        }
    } else if (file.kind == CodebookKind::Quantizer) {
        VqCodebook cb;
        cb.dim = dim;
        cb.metric = static_cast<VqMetric>(r.u8());
        const std::uint64_t n_layers = r.u64();
        const std::uint64_t k = r.u64();
        cb.layers.resize(n_layers);
        for (auto& layer : cb.layers) {
            layer.codewords.resize(k);
            for (auto& c : layer.codewords) {
                c.initialized = r.u8() != 0;
                c.codeword = r.vec(dim);
                c.ema_sum = r.vec(dim);
                c.ema_count = r.f64();
            }
        }
        file.quantizer = std::move(cb);
    } else {
        throw std::runtime_error("unknown codebook kind in " + path);
    }
    return file;
}

void save_assignments(const std::string& path, const AssignmentIndex& index) {
    ByteWriter w;
    w.bytes(kAssignMagic, 8);
    w.u32(kFormatVersion);
    const auto entries = index.sorted_entries();
    w.u64(entries.size());
    for (const auto& [id, codes] : entries) {
        w.u64(id);
        w.u32(codes.coarse);
        w.u32(codes.fine);
    }
    write_file_with_checksum(path, w);
}

AssignmentIndex load_assignments(const std::string& path) {
    const std::string payload = read_file_checked(path, kAssignMagic);
    ByteReader r(payload, path);
    r.take(8);
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion)
        throw std::runtime_error("container version mismatch in " + path + ": file version " +
                                 std::to_string(version) + ", expected " +
                                 std::to_string(kFormatVersion));
    AssignmentIndex index;
    const std::uint64_t n = r.u64();
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t id = r.u64();
        const std::uint32_t coarse = r.u32();
        const std::uint32_t fine = r.u32();
        index.assign(id, coarse, fine);
    }
    return index;
}

}  // namespace streamidx

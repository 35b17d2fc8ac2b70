#include "streamidx/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace streamidx {

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["artifact_version"] = artifact_version;
    j["seed"] = seed;
    j["config"] = {
        {"tau", config.tau},
        {"gamma", config.gamma},
        {"tau_prime", config.tau_prime},
        {"min_cluster_size", config.min_cluster_size},
        {"eps1", config.eps1},
        {"eps2", config.eps2},
        {"growth_window", config.growth_window},
        {"lambda", config.lambda},
        {"prune_threshold", config.prune_threshold},
        {"batch_size", config.batch_size},
        {"dim", config.dim},
    };
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& [path, digest] : input_digests) digests[path] = digest;
    j["input_digests"] = digests;
    j["outputs"] = outputs;
    if (!step_log_path.empty()) j["step_log"] = step_log_path;
    for (const auto& [k, v] : extra) j[k] = v;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const std::string body = to_json();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace streamidx

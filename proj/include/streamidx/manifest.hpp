#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

inline constexpr const char* kArtifactVersion = "streamidx 0.1.0";

// Reproducibility record written next to every produced artifact: which
// inputs (by digest), which config, which seed, which outputs. Contains no
// timestamps so reruns are byte-identical.
struct RunManifest {
    std::string command;
    std::string artifact_version = kArtifactVersion;
    std::uint64_t seed = 0;
    IndexConfig config;
    std::map<std::string, std::uint64_t> input_digests;  // path -> fnv1a64
    std::vector<std::string> outputs;
    std::string step_log_path;
    std::map<std::string, std::string> extra;

    std::string to_json() const;
    void write(const std::string& path) const;
};

}  // namespace streamidx

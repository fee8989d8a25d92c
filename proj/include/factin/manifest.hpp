#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace factin {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility sidecar written next to every data file the CLI produces.
// `factin replay <manifest>` re-runs the recorded argv and must regenerate
// the data byte for byte.
struct RunManifest {
    std::string tool = "factin";
    std::string version = kVersion;
    std::string command;
    std::vector<std::string> argv;       // full invocation, program name excluded
    std::string graph_path;
    std::string graph_checksum;          // fnv1a-64 of the file bytes, hex
    std::string created;                 // ISO-8601 UTC
    std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& m);
RunManifest parse_manifest(const std::string& json_text);
RunManifest load_manifest(const std::string& path);

uint64_t fnv1a64(const void* data, size_t len);
std::string file_checksum(const std::string& path);

// Write-to-temp + rename; no partial files on failure.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace factin

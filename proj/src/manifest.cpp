#include "factin/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace factin {

uint64_t fnv1a64(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("error while reading '" + path + "'");
    return buf.str();
}

std::string file_checksum(const std::string& path) {
    std::string bytes = read_file(path);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("error while writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path +
                                 "': " + ec.message());
    }
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["tool"] = m.tool;
    j["version"] = m.version;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["graph"] = {{"path", m.graph_path}, {"checksum", m.graph_checksum}};
    j["created"] = m.created;
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    RunManifest m;
    m.tool = j.value("tool", "");
    m.version = j.value("version", "");
    m.command = j.value("command", "");
    m.argv = j.value("argv", std::vector<std::string>{});
    if (j.contains("graph")) {
        m.graph_path = j["graph"].value("path", "");
        m.graph_checksum = j["graph"].value("checksum", "");
    }
    m.created = j.value("created", "");
    m.outputs = j.value("outputs", std::vector<std::string>{});
    return m;
}

RunManifest load_manifest(const std::string& path) {
    return parse_manifest(read_file(path));
}

} // namespace factin

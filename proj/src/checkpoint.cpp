#include "srp/checkpoint.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>

#include "arch_json.hpp"
#include "srp/errors.hpp"

namespace srp {

namespace {

using json = nlohmann::ordered_json;

constexpr char kMagic[4] = {'S', 'R', 'P', 'C'};
constexpr int kFormatVersion = 1;

}  // namespace

void save_checkpoint(const ModelParams& params, const std::string& path) {
    json header{{"format_version", kFormatVersion},
                {"arch", arch_to_json(params.arch)},
                {"version", params.version},
                {"param_count", params.values.size()}};
    const std::string head = header.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("cannot open " + path + " for writing");
    out.write(kMagic, 4);
    const std::uint32_t len = static_cast<std::uint32_t>(head.size());
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.write(reinterpret_cast<const char*>(params.values.data()),
              static_cast<std::streamsize>(params.values.size() * sizeof(double)));
    if (!out) throw CheckpointError("failed writing " + path);
}

ModelParams load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw CheckpointError(path + ": not a checkpoint file");
    }
    std::uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    if (!in || len == 0 || len > (1u << 20)) throw CheckpointError(path + ": corrupt header");
    std::string head(len, '\0');
    in.read(head.data(), len);
    if (!in) throw CheckpointError(path + ": truncated header");

    json header;
    try {
        header = json::parse(head);
    } catch (const json::parse_error& e) {
        throw CheckpointError(path + ": bad header: " + e.what());
    }
    if (header.at("format_version").get<int>() != kFormatVersion) {
        throw CheckpointError(path + ": unsupported checkpoint format");
    }

    ModelParams params;
    try {
        params.arch = arch_from_json(header.at("arch"));
    } catch (const json::exception& e) {
        throw CheckpointError(path + ": bad architecture header: " + e.what());
    }
    params.version = header.at("version").get<std::int64_t>();
    const Eigen::Index count = header.at("param_count").get<Eigen::Index>();
    const ParamLayout layout = make_layout(params.arch);
    if (count != layout.total) {
        throw CheckpointError(path + ": parameter count does not match architecture");
    }
    params.values.resize(count);
    in.read(reinterpret_cast<char*>(params.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
        throw CheckpointError(path + ": truncated parameter data");
    }
    return params;
}

ModelParams load_checkpoint(const std::string& path, const ArchConfig& expected) {
    ModelParams params = load_checkpoint(path);
    if (!arch_equal(params.arch, expected)) {
        throw CheckpointError(path + ": architecture does not match the requested configuration");
    }
    return params;
}

}  // namespace srp

#include "srp/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "srp/errors.hpp"
#include "srp/rng.hpp"

namespace srp {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

json pose_to_json(const Pose& p) {
    return json{{"row", p.row}, {"col", p.col}, {"bin", p.bin}};
}

Pose pose_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (const char* key : {"row", "col", "bin"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw ParseError(where + ": missing integer field '" + key + "'");
        }
    }
    return Pose{j["row"].get<int>(), j["col"].get<int>(), j["bin"].get<int>()};
}

}  // namespace

std::string instance_to_json(const SceneInstance& inst) {
    json doc;
    doc["version"] = kSchemaVersion;
    doc["grid_size"] = inst.grid_size;
    doc["orientation_bins"] = kOrientationBins;
    json walls = json::array();
    for (const Cell& c : inst.impassable_cells) walls.push_back({c.row, c.col});
    doc["impassable"] = std::move(walls);
    json objects = json::array();
    for (int k = 0; k < inst.object_count(); ++k) {
        const ObjectFootprint& fp = inst.objects[k];
        json poly = json::array();
        for (const Vec2& v : fp.polygon) poly.push_back({v.x(), v.y()});
        objects.push_back(json{{"id", fp.id},
                               {"polygon", std::move(poly)},
                               {"initial", pose_to_json(inst.initial[k])},
                               {"target", pose_to_json(inst.target[k])}});
    }
    doc["objects"] = std::move(objects);
    return doc.dump(2) + "\n";
}

SceneInstance instance_from_json(const std::string& text, const std::string& id) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level: expected an object");
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
        throw ParseError("missing integer field 'version'");
    }
    if (doc["version"].get<int>() != kSchemaVersion) {
        throw UnsupportedVersionError("unsupported schema version " +
                                      std::to_string(doc["version"].get<int>()));
    }
    if (!doc.contains("grid_size") || !doc["grid_size"].is_number_integer()) {
        throw ParseError("missing integer field 'grid_size'");
    }
    if (!doc.contains("orientation_bins") ||
        doc["orientation_bins"].get<int>() != kOrientationBins) {
        throw ParseError("field 'orientation_bins' must be " + std::to_string(kOrientationBins));
    }
    const int n = doc["grid_size"].get<int>();

    std::vector<Cell> walls;
    if (!doc.contains("impassable") || !doc["impassable"].is_array()) {
        throw ParseError("missing array field 'impassable'");
    }
    for (const json& j : doc["impassable"]) {
        if (!j.is_array() || j.size() != 2) throw ParseError("impassable: expected [row, col]");
        walls.push_back({j[0].get<int>(), j[1].get<int>()});
    }

    if (!doc.contains("objects") || !doc["objects"].is_array()) {
        throw ParseError("missing array field 'objects'");
    }
    std::vector<ObjectFootprint> footprints;
    std::vector<Pose> initial;
    std::vector<Pose> target;
    int index = 0;
    for (const json& j : doc["objects"]) {
        const std::string where = "objects[" + std::to_string(index) + "]";
        if (!j.is_object()) throw ParseError(where + ": expected an object");
        if (!j.contains("id") || !j["id"].is_number_integer()) {
            throw ParseError(where + ": missing integer field 'id'");
        }
        if (!j.contains("polygon") || !j["polygon"].is_array()) {
            throw ParseError(where + ": missing array field 'polygon'");
        }
        Polygon poly;
        for (const json& v : j["polygon"]) {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
                throw ParseError(where + ".polygon: expected [x, y] pairs");
            }
            poly.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        ObjectFootprint fp;
        try {
            fp = make_footprint(j["id"].get<int>(), poly, n);
        } catch (const InvalidFootprintError& e) {
            throw ParseError(where + ".polygon: " + e.what());
        }
        footprints.push_back(std::move(fp));
        initial.push_back(pose_from_json(j.value("initial", json()), where + ".initial"));
        target.push_back(pose_from_json(j.value("target", json()), where + ".target"));
        ++index;
    }

    return make_instance(id, n, std::move(walls), std::move(footprints), std::move(initial),
                         std::move(target));
}

void save_instance(const SceneInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << instance_to_json(inst);
    if (!out) throw ParseError("failed writing " + path);
}

SceneInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return instance_from_json(buf.str(), fs::path(path).stem().string());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<std::string> list_instances(const std::string& dir) {
    std::vector<std::string> paths;
    if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

DatasetStats dataset_stats(const std::vector<std::string>& paths) {
    DatasetStats stats;
    long long total = 0;
    for (const std::string& path : paths) {
        SceneInstance inst = load_instance(path);
        stats.count += 1;
        stats.k_histogram[inst.object_count()] += 1;
        total += inst.object_count();
    }
    if (stats.count > 0) stats.k_mean = static_cast<double>(total) / stats.count;
    return stats;
}

std::vector<bool> split_is_test(const std::vector<std::string>& ids) {
    const std::size_t n = ids.size();
    const std::size_t test_count = n / 20;
    std::vector<std::uint64_t> hashes(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : ids[i]) h = (h ^ c) * 1099511628211ull;
        hashes[i] = mix_seed(h);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return hashes[a] != hashes[b] ? hashes[a] < hashes[b] : ids[a] < ids[b];
    });
    std::vector<bool> is_test(n, false);
    for (std::size_t i = 0; i < test_count; ++i) is_test[order[i]] = true;
    return is_test;
}

}  // namespace srp

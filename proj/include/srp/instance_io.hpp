#pragma once

#include <map>
#include <string>
#include <vector>

#include "srp/scene.hpp"

namespace srp {

// Schema v1: {version, grid_size, orientation_bins, impassable:[[r,c]...],
// objects:[{id, polygon:[[x,y]...], initial:{row,col,bin}, target:{row,col,bin}}]}.
// Polygons are continuous grid units; masks are recomputed on load. The
// instance id is the file stem, not a document field.
std::string instance_to_json(const SceneInstance& inst);
SceneInstance instance_from_json(const std::string& text, const std::string& id);

void save_instance(const SceneInstance& inst, const std::string& path);
SceneInstance load_instance(const std::string& path);

// Sorted .json paths directly inside `dir`.
std::vector<std::string> list_instances(const std::string& dir);

struct DatasetStats {
    int count = 0;
    std::map<int, int> k_histogram;
    double k_mean = 0.0;
};

DatasetStats dataset_stats(const std::vector<std::string>& paths);

// Deterministic 95/5 split: ranks ids by hash and marks exactly
// floor(n/20) of them as test.
std::vector<bool> split_is_test(const std::vector<std::string>& ids);

}  // namespace srp

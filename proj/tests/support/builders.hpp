#pragma once

#include <string>
#include <utility>
#include <vector>

#include "srp/scene.hpp"

namespace srp::testing {

inline Polygon unit_square() {
    return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

// 2 wide along x, 1 tall along y, centred a quarter cell inside the anchor
// cell so rotated cell centres never land on the outline.
inline Polygon rect2x1() {
    return {{-0.75, -0.25}, {1.25, -0.25}, {1.25, 0.75}, {-0.75, 0.75}};
}

struct ObjectSpec {
    Polygon polygon;
    Pose initial;
    Pose target;
};

inline SceneInstance build_instance(int grid_size, std::vector<ObjectSpec> objects,
                                    std::vector<Cell> impassable = {},
                                    std::string id = "test") {
    std::vector<ObjectFootprint> fps;
    std::vector<Pose> init;
    std::vector<Pose> target;
    int next_id = 0;
    for (auto& spec : objects) {
        fps.push_back(make_footprint(next_id++, spec.polygon, grid_size));
        init.push_back(spec.initial);
        target.push_back(spec.target);
    }
    return make_instance(std::move(id), grid_size, std::move(impassable), std::move(fps),
                         std::move(init), std::move(target));
}

}  // namespace srp::testing

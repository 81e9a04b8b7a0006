#include <doctest.h>

#include "builders.hpp"
#include "srp/errors.hpp"
#include "srp/scene.hpp"

using namespace srp;
using namespace srp::testing;

TEST_CASE("make_instance sorts and dedups impassable cells") {
    SceneInstance inst = build_instance(
        8, {{unit_square(), {1, 1, 0}, {6, 6, 0}}},
        {{3, 4}, {0, 0}, {3, 4}, {2, 7}});
    REQUIRE(inst.impassable_cells.size() == 3);
    CHECK(inst.impassable_cells[0] == Cell{0, 0});
    CHECK(inst.impassable_cells[1] == Cell{2, 7});
    CHECK(inst.impassable_cells[2] == Cell{3, 4});
    CHECK(inst.impassable(3, 4) == 1);
    CHECK(inst.impassable(4, 3) == 0);
}

TEST_CASE("pose_placeable respects bounds, walls and other objects") {
    SceneInstance inst = build_instance(
        8,
        {{unit_square(), {1, 1, 0}, {6, 6, 0}},
         {unit_square(), {4, 4, 0}, {0, 6, 0}}},
        {{2, 2}});
    std::vector<Pose> poses = {{1, 1, 0}, {4, 4, 0}};

    CHECK(pose_placeable(inst, poses, 0, {1, 2, 0}));
    CHECK_FALSE(pose_placeable(inst, poses, 0, {-1, 1, 0}));
    CHECK_FALSE(pose_placeable(inst, poses, 0, {2, 2, 0}));
    CHECK_FALSE(pose_placeable(inst, poses, 0, {4, 4, 0}));
    CHECK(pose_placeable(inst, poses, 1, {4, 4, 5}));
}

TEST_CASE("occupied_cells maps mask offsets to absolute cells") {
    SceneInstance inst = build_instance(8, {{rect2x1(), {3, 3, 0}, {6, 5, 0}}});
    auto cells = occupied_cells(inst, 0, {3, 3, 0});
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == Cell{3, 2});
    CHECK(cells[1] == Cell{3, 3});
}

TEST_CASE("validate rejects colliding targets") {
    CHECK_THROWS_AS(build_instance(8,
                                   {{unit_square(), {1, 1, 0}, {5, 5, 0}},
                                    {unit_square(), {2, 2, 0}, {5, 5, 0}}}),
                    ParseError);
}

TEST_CASE("validate rejects initial pose on a wall") {
    CHECK_THROWS_AS(
        build_instance(8, {{unit_square(), {2, 2, 0}, {5, 5, 0}}}, {{2, 2}}),
        ParseError);
}

TEST_CASE("validate rejects out-of-bounds poses") {
    CHECK_THROWS_AS(build_instance(8, {{unit_square(), {1, 1, 0}, {8, 5, 0}}}), ParseError);
    CHECK_THROWS_AS(build_instance(8, {{unit_square(), {1, 1, 24}, {5, 5, 0}}}), ParseError);
}

TEST_CASE("validate_layout checks pose count and collisions") {
    SceneInstance inst = build_instance(
        8,
        {{unit_square(), {1, 1, 0}, {6, 6, 0}},
         {unit_square(), {4, 4, 0}, {0, 6, 0}}});
    CHECK_NOTHROW(validate_layout(inst, {{{2, 2, 3}, {4, 4, 0}}, 0}));
    CHECK_THROWS_AS(validate_layout(inst, {{{2, 2, 3}}, 0}), ParseError);
    CHECK_THROWS_AS(validate_layout(inst, {{{4, 4, 0}, {4, 4, 0}}, 0}), ParseError);
}

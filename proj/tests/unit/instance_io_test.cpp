#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "builders.hpp"
#include "srp/errors.hpp"
#include "srp/generator.hpp"
#include "srp/instance_io.hpp"

using namespace srp;
using namespace srp::testing;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("srp_io_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void check_equal(const SceneInstance& a, const SceneInstance& b) {
    CHECK(a.grid_size == b.grid_size);
    REQUIRE(a.impassable_cells.size() == b.impassable_cells.size());
    for (std::size_t i = 0; i < a.impassable_cells.size(); ++i) {
        CHECK(a.impassable_cells[i] == b.impassable_cells[i]);
    }
    REQUIRE(a.object_count() == b.object_count());
    for (int k = 0; k < a.object_count(); ++k) {
        CHECK(a.objects[k].id == b.objects[k].id);
        REQUIRE(a.objects[k].polygon.size() == b.objects[k].polygon.size());
        for (std::size_t v = 0; v < a.objects[k].polygon.size(); ++v) {
            CHECK(a.objects[k].polygon[v].x() == b.objects[k].polygon[v].x());
            CHECK(a.objects[k].polygon[v].y() == b.objects[k].polygon[v].y());
        }
        for (int bin = 0; bin < kOrientationBins; ++bin) {
            CHECK(a.objects[k].masks[bin] == b.objects[k].masks[bin]);
        }
        CHECK(a.initial[k] == b.initial[k]);
        CHECK(a.target[k] == b.target[k]);
    }
}

}  // namespace

TEST_CASE("save and load round-trip bit-exact") {
    TempDir tmp;
    GeneratorConfig cfg;
    cfg.grid_size = 16;
    cfg.k_min = 2;
    cfg.k_max = 3;
    cfg.walk_rounds = 60;
    SceneInstance inst = generate_instance(cfg, 4242);
    const std::string path = tmp.file(inst.id + ".json");
    save_instance(inst, path);
    SceneInstance loaded = load_instance(path);
    CHECK(loaded.id == inst.id);
    check_equal(inst, loaded);

    // Saving the loaded copy reproduces the file byte for byte.
    const std::string path2 = tmp.file("copy.json");
    save_instance(loaded, path2);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
}

TEST_CASE("loader reports field-level diagnostics") {
    const std::string id = "x";
    CHECK_THROWS_AS(instance_from_json("{not json", id), ParseError);
    CHECK_THROWS_AS(instance_from_json("[]", id), ParseError);
    CHECK_THROWS_AS(instance_from_json(R"({"version": 1})", id), ParseError);
    CHECK_THROWS_AS(instance_from_json(R"({"version": 7, "grid_size": 8})", id),
                    UnsupportedVersionError);

    const std::string bad_bins = R"({"version": 1, "grid_size": 8, "orientation_bins": 12,
        "impassable": [], "objects": []})";
    CHECK_THROWS_AS(instance_from_json(bad_bins, id), ParseError);

    const std::string no_objects = R"({"version": 1, "grid_size": 8, "orientation_bins": 24,
        "impassable": [], "objects": []})";
    CHECK_THROWS_AS(instance_from_json(no_objects, id), ParseError);

    try {
        instance_from_json(R"({"version": 1, "grid_size": 8, "orientation_bins": 24,
            "impassable": [], "objects": [{"id": 0, "polygon": [[0,0]],
            "initial": {"row":1,"col":1,"bin":0}, "target": {"row":1,"col":1,"bin":0}}]})",
                           id);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("objects[0]") != std::string::npos);
    }
}

TEST_CASE("loader rejects invariant violations") {
    // Two unit squares with identical targets.
    const std::string overlap = R"({"version": 1, "grid_size": 8, "orientation_bins": 24,
      "impassable": [],
      "objects": [
        {"id": 0, "polygon": [[0,0],[1,0],[1,1],[0,1]],
         "initial": {"row":1,"col":1,"bin":0}, "target": {"row":5,"col":5,"bin":0}},
        {"id": 1, "polygon": [[0,0],[1,0],[1,1],[0,1]],
         "initial": {"row":2,"col":2,"bin":0}, "target": {"row":5,"col":5,"bin":0}}
      ]})";
    CHECK_THROWS_AS(instance_from_json(overlap, "x"), ParseError);

    const std::string bad_bin = R"({"version": 1, "grid_size": 8, "orientation_bins": 24,
      "impassable": [],
      "objects": [
        {"id": 0, "polygon": [[0,0],[1,0],[1,1],[0,1]],
         "initial": {"row":1,"col":1,"bin":24}, "target": {"row":5,"col":5,"bin":0}}
      ]})";
    CHECK_THROWS_AS(instance_from_json(bad_bin, "x"), ParseError);
}

TEST_CASE("dataset stats histogram and mean") {
    TempDir tmp;
    GeneratorConfig cfg;
    cfg.grid_size = 12;
    cfg.walk_rounds = 0;
    std::vector<std::string> paths;
    for (int i = 0; i < 6; ++i) {
        cfg.k_min = cfg.k_max = (i < 4) ? 2 : 5;
        SceneInstance inst = generate_instance(cfg, 100 + i);
        inst.id = "inst" + std::to_string(i);
        paths.push_back(tmp.file(inst.id + ".json"));
        save_instance(inst, paths.back());
    }
    DatasetStats stats = dataset_stats(paths);
    CHECK(stats.count == 6);
    CHECK(stats.k_histogram.at(2) == 4);
    CHECK(stats.k_histogram.at(5) == 2);
    CHECK(stats.k_mean == doctest::Approx(3.0));

    DatasetStats empty = dataset_stats({});
    CHECK(empty.count == 0);
    CHECK(empty.k_histogram.empty());

    auto listed = list_instances(tmp.path.string());
    CHECK(listed.size() == 6);
    CHECK(std::is_sorted(listed.begin(), listed.end()));
}

TEST_CASE("split marks exactly floor(n/20) ids as test, stable across runs") {
    std::vector<std::string> ids;
    for (int i = 0; i < 100; ++i) ids.push_back("inst" + std::to_string(i));
    auto is_test = split_is_test(ids);
    CHECK(std::count(is_test.begin(), is_test.end(), true) == 5);
    auto again = split_is_test(ids);
    CHECK(is_test == again);

    std::vector<std::string> few = {"a", "b", "c"};
    auto none = split_is_test(few);
    CHECK(std::count(none.begin(), none.end(), true) == 0);
}

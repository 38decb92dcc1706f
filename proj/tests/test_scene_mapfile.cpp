#include "forcemap/error.hpp"
#include "forcemap/mapfile.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace forcemap;
using nlohmann::json;

namespace {

std::string readFile(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json exampleJson() { return json::parse(readFile(FORCEMAP_SCENES_DIR "/paper_scene.json")); }

Scene coarse()
{
    Scene s = parseScene(exampleJson().dump());
    s.resolutionDeg = 5.0;
    return s;
}

} // namespace

TEST(Scene, ExampleLoads)
{
    const Scene s = loadScene(FORCEMAP_SCENES_DIR "/paper_scene.json");
    EXPECT_EQ(s.segmentLengths, (std::vector<double>{0.122, 0.122}));
    EXPECT_DOUBLE_EQ(s.thickness, 0.02);
    EXPECT_EQ(s.backboneSamples, 150u);
    ASSERT_EQ(s.obstacles.size(), 2u);
    EXPECT_DOUBLE_EQ(s.obstacles[0].stiffness, 11.16);
    EXPECT_DOUBLE_EQ(s.obstacles[0].forceLimit, 0.105);
    EXPECT_DOUBLE_EQ(s.obstacles[0].safetyFactor, 0.95);
    EXPECT_DOUBLE_EQ(s.resolutionDeg, 1.0);
    EXPECT_DOUBLE_EQ(s.cAlpha, 1.5);
    // Both contact facets face the robot, which sits on their outward side.
    for (const auto& o : s.obstacles)
        EXPECT_GT(o.shape.facet(o.contactFacet).signedDistance({0, 0}), 0.0);
}

TEST(Scene, CanonicalJsonRoundTrips)
{
    const Scene s = loadScene(FORCEMAP_SCENES_DIR "/paper_scene.json");
    const std::string canon = canonicalSceneJson(s);
    const Scene again = parseScene(canon);
    EXPECT_EQ(canonicalSceneJson(again), canon);
    EXPECT_EQ(sceneHash(again), sceneHash(s));
    // Key order and whitespace in the source do not matter.
    EXPECT_EQ(sceneHash(parseScene(exampleJson().dump(4))), sceneHash(s));
}

TEST(Scene, HashCoversEveryField)
{
    const std::uint64_t base = sceneHash(parseScene(exampleJson().dump()));
    const std::vector<std::function<void(json&)>> edits{
        [](json& j) { j["robot"]["segment_lengths_m"][1] = 0.1221; },
        [](json& j) { j["robot"]["thickness_m"] = 0.021; },
        [](json& j) { j["robot"]["backbone_samples"] = 151; },
        [](json& j) { j["robot"]["joint_limits_deg"][0][0] = -170; },
        [](json& j) { j["obstacles"][0]["vertices_m"][1][0] = 0.16; },
        [](json& j) { j["obstacles"][0]["k_env_N_per_m"] = 11.17; },
        [](json& j) { j["obstacles"][0]["F_max_N"] = 0.104; },
        [](json& j) { j["obstacles"][1]["delta"] = 0.9; },
        [](json& j) { j["obstacles"][1]["contact_facet"] = 3; },
        [](json& j) { j["obstacles"][1]["id"] = 9; },
        [](json& j) { j["grid"]["resolution_deg"] = 2.0; },
        [](json& j) { j["alpha"]["c_alpha"] = 2.0; },
        [](json& j) { j["description"] = "changed"; },
    };
    for (std::size_t i = 0; i < edits.size(); ++i)
    {
        json j = exampleJson();
        edits[i](j);
        EXPECT_NE(sceneHash(parseScene(j.dump())), base) << "edit " << i;
    }
}

TEST(Scene, SchemaErrors)
{
    const std::vector<std::function<void(json&)>> edits{
        [](json& j) { j.erase("robot"); },
        [](json& j) { j["robot"]["thickness_m"] = "thick"; },
        [](json& j) { j["robot"]["thickness_m"] = 0.0; },
        [](json& j) { j["robot"]["backbone_samples"] = 1; },
        [](json& j) { j["robot"]["joint_limits_deg"] = json::array({json::array({-180, 180})}); },
        [](json& j) { j["robot"]["extra"] = 1; },
        [](json& j) { j["obstacles"][0]["vertices_m"] = json::array({{0.1, 0.45}, {0.15, 0.45}, {0.15, -0.35}, {0.1, -0.35}}); },
        [](json& j) { j["obstacles"][0]["vertices_m"] = json::array({{0, 0}, {1, 0}}); },
        [](json& j) { j["obstacles"][0]["contact_facet"] = 4; },
        [](json& j) { j["obstacles"][0]["delta"] = 1.5; },
        [](json& j) { j["obstacles"][0]["k_env_N_per_m"] = -1; },
        [](json& j) { j["obstacles"][1]["id"] = 1; },
        [](json& j) { j["grid"]["resolution_deg"] = 7.0; },
        [](json& j) { j["alpha"]["c_alpha"] = 0; },
    };
    for (std::size_t i = 0; i < edits.size(); ++i)
    {
        json j = exampleJson();
        edits[i](j);
        EXPECT_THROW(parseScene(j.dump()), SchemaError) << "edit " << i;
    }
    EXPECT_THROW(parseScene("{not json"), SchemaError);
    EXPECT_THROW(loadScene("/nonexistent/scene.json"), SchemaError);
}

TEST(Scene, ConsumedObstacleReportsId)
{
    json j = exampleJson();
    j["obstacles"][1]["vertices_m"] = json::array({{-0.115, -0.35}, {-0.10, -0.35}, {-0.10, 0.45}, {-0.115, 0.45}});
    try
    {
        (void)prepareScene(parseScene(j.dump()));
        FAIL() << "expected ObstacleConsumed";
    }
    catch (const ObstacleConsumed& e)
    {
        EXPECT_EQ(e.obstacleId(), 2);
    }
}

TEST(MapFile, RoundTripIsBitIdentical)
{
    const ForceMap map = buildForceMap(coarse());
    const std::string bytes = io::encodeMap(map);
    const ForceMap back = io::decodeMap(bytes);
    EXPECT_EQ(back.cobs, map.cobs);
    EXPECT_EQ(back.sceneHash, map.sceneHash);
    ASSERT_EQ(back.regions.size(), map.regions.size());
    for (std::size_t k = 0; k < map.regions.size(); ++k)
    {
        EXPECT_EQ(back.regions.regions()[k].polygon.vertices(), map.regions.regions()[k].polygon.vertices());
        EXPECT_EQ(back.regions.regions()[k].alpha, map.regions.regions()[k].alpha);
        EXPECT_EQ(back.regions.regions()[k].outcome, map.regions.regions()[k].outcome);
    }
    EXPECT_EQ(io::encodeMap(back), bytes);
}

TEST(MapFile, BuildIsDeterministic)
{
    EXPECT_EQ(io::encodeMap(buildForceMap(coarse())), io::encodeMap(buildForceMap(coarse(), {.threads = 3})));
}

TEST(MapFile, EmptySceneHasNoComponents)
{
    Scene s = coarse();
    s.obstacles.clear();
    const ForceMap map = buildForceMap(s);
    EXPECT_EQ(map.cobs.unsafeCount(), 0u);
    EXPECT_TRUE(map.regions.empty());
    EXPECT_EQ(io::decodeMap(io::encodeMap(map)).cobs, map.cobs);
}

TEST(MapFile, BitPackingLayout)
{
    const ForceMap map = buildForceMap(coarse());
    const std::string bytes = io::encodeMap(map);
    EXPECT_EQ(bytes.substr(0, 4), "FMAP");
    // 73 x 73 cells pack into ceil(5329 / 8) bytes.
    const std::size_t cells = 73 * 73;
    const std::size_t jsonSize = canonicalSceneJson(map.scene).size();
    const std::size_t bitsAt = 4 + 4 + 8 + 4 + 2 * 24 + 8 + jsonSize + 8;
    for (std::size_t i = 0; i < cells; ++i)
    {
        const bool bit = (static_cast<unsigned char>(bytes[bitsAt + i / 8]) >> (i % 8)) & 1u;
        ASSERT_EQ(bit, map.cobs.at(i)) << i;
    }
}

TEST(MapFile, CorruptionDetected)
{
    const std::string bytes = io::encodeMap(buildForceMap(coarse()));
    std::string flipped = bytes;
    flipped[bytes.size() / 2] = static_cast<char>(flipped[bytes.size() / 2] ^ 0x10);
    EXPECT_THROW(io::decodeMap(flipped), SchemaError);
    EXPECT_THROW(io::decodeMap(bytes.substr(0, bytes.size() - 3)), SchemaError);
    EXPECT_THROW(io::decodeMap("FMAP"), SchemaError);
    EXPECT_THROW(io::loadMap("/nonexistent/map.fmap"), MapMissing);
}

TEST(MapFile, SaveAndLoad)
{
    const auto path = std::filesystem::temp_directory_path() / "forcemap_test_roundtrip.fmap";
    const ForceMap map = buildForceMap(coarse());
    io::saveMap(path, map);
    EXPECT_EQ(io::encodeMap(io::loadMap(path)), io::encodeMap(map));
    std::filesystem::remove(path);
    EXPECT_THROW(io::saveMap("/nonexistent/dir/map.fmap", map), Error);
}

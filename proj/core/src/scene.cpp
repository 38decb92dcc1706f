#include "forcemap/scene.hpp"

#include "forcemap/cspace.hpp"
#include "forcemap/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <set>
#include <sstream>

namespace forcemap {

namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

const json& require(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw SchemaError(fmt::format("{}: missing field '{}'", where, key));
    return obj.at(key);
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number())
        throw SchemaError(fmt::format("{}: expected a number", where));
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw SchemaError(fmt::format("{}: expected a finite number", where));
    return d;
}

std::int64_t integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        throw SchemaError(fmt::format("{}: expected an integer", where));
    return v.get<std::int64_t>();
}

void rejectUnknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
    const std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!names.contains(key))
            throw SchemaError(fmt::format("{}: unknown field '{}'", where, key));
}

json toJson(const Scene& s)
{
    json robot{{"segment_lengths_m", s.segmentLengths},
               {"thickness_m", s.thickness},
               {"backbone_samples", s.backboneSamples},
               {"joint_limits_deg", s.jointLimitsDeg}};
    json obstacles = json::array();
    for (const auto& o : s.obstacles)
    {
        json verts = json::array();
        for (const auto& v : o.shape.vertices())
            verts.push_back({v.x, v.y});
        obstacles.push_back({{"id", o.id},
                             {"vertices_m", verts},
                             {"k_env_N_per_m", o.stiffness},
                             {"F_max_N", o.forceLimit},
                             {"delta", o.safetyFactor},
                             {"contact_facet", o.contactFacet}});
    }
    json doc{{"robot", robot},
             {"obstacles", obstacles},
             {"grid", {{"resolution_deg", s.resolutionDeg}}},
             {"alpha", {{"c_alpha", s.cAlpha}}}};
    if (!s.description.empty())
        doc["description"] = s.description;
    return doc;
}

} // namespace

kinematics::RobotModel Scene::robot() const
{
    kinematics::RobotModel model;
    model.thickness = thickness;
    model.backboneSamples = backboneSamples;
    for (std::size_t i = 0; i < segmentLengths.size(); ++i)
    {
        const auto limits = i < jointLimitsDeg.size() ? jointLimitsDeg[i] : std::array<double, 2>{-180.0, 180.0};
        model.segments.push_back({segmentLengths[i], limits[0] * kDegToRad, limits[1] * kDegToRad});
    }
    return model;
}

double Scene::resolutionRad() const noexcept { return resolutionDeg * kDegToRad; }

void Scene::validate() const
{
    if (segmentLengths.empty())
        throw SchemaError("robot.segment_lengths_m: at least one segment is required");
    if (jointLimitsDeg.size() != segmentLengths.size())
        throw SchemaError("robot.joint_limits_deg: one [min, max] pair per segment is required");
    if (!(resolutionDeg > 0.0))
        throw SchemaError("grid.resolution_deg: must be positive");
    if (!(cAlpha > 0.0))
        throw SchemaError("alpha.c_alpha: must be positive");
    try
    {
        robot().validate();
        (void)cspace::JointGrid::uniform(robot(), resolutionRad());
    }
    catch (const InvalidGeometry& e)
    {
        throw SchemaError(fmt::format("robot: {}", e.what()));
    }
    std::set<int> ids;
    for (const auto& o : obstacles)
    {
        if (!ids.insert(o.id).second)
            throw SchemaError(fmt::format("obstacles: duplicate id {}", o.id));
        try
        {
            o.validate();
        }
        catch (const InvalidGeometry& e)
        {
            throw SchemaError(e.what());
        }
    }
}

Scene parseScene(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw SchemaError(fmt::format("scene is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object())
        throw SchemaError("scene: top level must be an object");
    rejectUnknown(doc, {"description", "robot", "obstacles", "grid", "alpha"}, "scene");

    Scene s;
    if (doc.contains("description"))
    {
        if (!doc["description"].is_string())
            throw SchemaError("description: expected a string");
        s.description = doc["description"].get<std::string>();
    }

    const json& robot = require(doc, "robot", "scene");
    rejectUnknown(robot, {"segment_lengths_m", "thickness_m", "backbone_samples", "joint_limits_deg"}, "robot");
    const json& lengths = require(robot, "segment_lengths_m", "robot");
    if (!lengths.is_array())
        throw SchemaError("robot.segment_lengths_m: expected an array");
    for (const auto& v : lengths)
        s.segmentLengths.push_back(number(v, "robot.segment_lengths_m"));
    s.thickness = number(require(robot, "thickness_m", "robot"), "robot.thickness_m");
    const std::int64_t samples = integer(require(robot, "backbone_samples", "robot"), "robot.backbone_samples");
    if (samples < 2)
        throw SchemaError("robot.backbone_samples: must be at least 2");
    s.backboneSamples = static_cast<std::size_t>(samples);
    const json& limits = require(robot, "joint_limits_deg", "robot");
    if (!limits.is_array())
        throw SchemaError("robot.joint_limits_deg: expected an array of [min, max] pairs");
    for (const auto& pair : limits)
    {
        if (!pair.is_array() || pair.size() != 2)
            throw SchemaError("robot.joint_limits_deg: expected [min, max] pairs");
        s.jointLimitsDeg.push_back(
            {number(pair[0], "robot.joint_limits_deg"), number(pair[1], "robot.joint_limits_deg")});
    }

    const json& obstacles = require(doc, "obstacles", "scene");
    if (!obstacles.is_array())
        throw SchemaError("obstacles: expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i)
    {
        const json& o = obstacles[i];
        const std::string where = fmt::format("obstacles[{}]", i);
        rejectUnknown(o, {"id", "vertices_m", "k_env_N_per_m", "F_max_N", "delta", "contact_facet"}, where);
        const json& verts = require(o, "vertices_m", where);
        if (!verts.is_array())
            throw SchemaError(where + ".vertices_m: expected an array of [x, y] pairs");
        std::vector<geometry::Vec2> ring;
        for (const auto& v : verts)
        {
            if (!v.is_array() || v.size() != 2)
                throw SchemaError(where + ".vertices_m: expected [x, y] pairs");
            ring.push_back({number(v[0], where + ".vertices_m"), number(v[1], where + ".vertices_m")});
        }
        if (ring.size() < 3 || geometry::signedArea2(ring) <= 0.0)
            throw SchemaError(where + ".vertices_m: polygon must have at least three counter-clockwise vertices");
        std::optional<geometry::ConvexPolygon> shape;
        try
        {
            shape.emplace(ring);
        }
        catch (const InvalidGeometry& e)
        {
            throw SchemaError(fmt::format("{}.vertices_m: {}", where, e.what()));
        }
        const std::int64_t facet = integer(require(o, "contact_facet", where), where + ".contact_facet");
        if (facet < 0)
            throw SchemaError(where + ".contact_facet: must be non-negative");
        s.obstacles.push_back(force::ElasticObstacle{
            static_cast<int>(integer(require(o, "id", where), where + ".id")), std::move(*shape),
            number(require(o, "k_env_N_per_m", where), where + ".k_env_N_per_m"),
            number(require(o, "F_max_N", where), where + ".F_max_N"), number(require(o, "delta", where), where + ".delta"),
            static_cast<std::size_t>(facet)});
    }

    const json& grid = require(doc, "grid", "scene");
    rejectUnknown(grid, {"resolution_deg"}, "grid");
    s.resolutionDeg = number(require(grid, "resolution_deg", "grid"), "grid.resolution_deg");
    const json& alpha = require(doc, "alpha", "scene");
    rejectUnknown(alpha, {"c_alpha"}, "alpha");
    s.cAlpha = number(require(alpha, "c_alpha", "alpha"), "alpha.c_alpha");

    s.validate();
    return s;
}

Scene loadScene(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError(fmt::format("cannot read scene file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseScene(buf.str());
}

std::string canonicalSceneJson(const Scene& scene) { return toJson(scene).dump(); }

std::uint64_t sceneHash(const Scene& scene)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : canonicalSceneJson(scene))
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

PreparedScene prepareScene(const Scene& scene)
{
    PreparedScene p;
    p.robot = scene.robot();
    std::vector<geometry::SimplePolygon> bases;
    for (const auto& o : scene.obstacles)
    {
        p.fodrs.push_back(force::buildFodr(o));
        p.perObstacle.emplace_back(std::vector<geometry::SimplePolygon>{p.fodrs.back().shape}, scene.thickness);
        bases.emplace_back(p.fodrs.back().shape);
    }
    p.grown = geometry::DilatedRegion(std::move(bases), scene.thickness);
    return p;
}

} // namespace forcemap

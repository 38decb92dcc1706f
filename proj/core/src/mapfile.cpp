#include "forcemap/mapfile.hpp"

#include "forcemap/error.hpp"

#include <bit>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace forcemap::io {

namespace {

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

class Writer
{
  public:
    template <typename T> void uint(T v)
    {
        for (std::size_t i = 0; i < sizeof(T); ++i)
            out_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xffu));
    }
    void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }
    void bytes(std::string_view s) { out_.append(s); }
    std::string& str() noexcept { return out_; }

  private:
    std::string out_;
};

class Reader
{
  public:
    explicit Reader(std::string_view in) : in_(in) {}

    template <typename T> T uint()
    {
        need(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
        pos_ += sizeof(T);
        return static_cast<T>(v);
    }
    double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
    std::string_view bytes(std::uint64_t n)
    {
        need(n);
        const auto s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t position() const noexcept { return pos_; }

  private:
    void need(std::uint64_t n) const
    {
        if (n > in_.size() - pos_)
            throw SchemaError("map file is truncated");
    }

    std::string_view in_;
    std::size_t pos_{0};
};

} // namespace

std::string encodeMap(const ForceMap& map)
{
    Writer w;
    w.bytes("FMAP");
    w.uint<std::uint32_t>(kMapVersion);
    w.uint<std::uint64_t>(map.sceneHash);

    const auto& axes = map.cobs.grid().axes();
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(axes.size()));
    for (const auto& a : axes)
    {
        w.f64(a.qMin);
        w.f64(a.step);
        w.uint<std::uint64_t>(a.count);
    }

    const std::string json = canonicalSceneJson(map.scene);
    w.uint<std::uint64_t>(json.size());
    w.bytes(json);

    const auto& bits = map.cobs.bits();
    w.uint<std::uint64_t>(bits.size());
    std::string packed((bits.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] != 0)
            packed[i / 8] = static_cast<char>(static_cast<unsigned char>(packed[i / 8]) | (1u << (i % 8)));
    w.bytes(packed);

    w.uint<std::uint32_t>(static_cast<std::uint32_t>(map.regions.size()));
    for (const auto& r : map.regions.regions())
    {
        w.f64(r.alpha);
        w.uint<std::uint8_t>(static_cast<std::uint8_t>(r.outcome));
        w.uint<std::uint64_t>(r.sourcePoints);
        w.f64(r.containment);
        w.uint<std::uint32_t>(static_cast<std::uint32_t>(r.polygon.size()));
        for (const auto& v : r.polygon.vertices())
        {
            w.f64(v.x);
            w.f64(v.y);
        }
    }

    w.uint<std::uint32_t>(static_cast<std::uint32_t>(map.regions.warnings().size()));
    for (const auto& s : map.regions.warnings())
    {
        w.uint<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        w.bytes(s);
    }

    w.uint<std::uint64_t>(fnv1a(w.str()));
    return std::move(w.str());
}

ForceMap decodeMap(std::string_view bytes)
{
    if (bytes.size() < 8 + 4 + 4)
        throw SchemaError("map file is truncated");
    const auto body = bytes.substr(0, bytes.size() - 8);
    Reader tail(bytes.substr(bytes.size() - 8));
    if (tail.uint<std::uint64_t>() != fnv1a(body))
        throw SchemaError("map file checksum mismatch");

    Reader r(body);
    if (r.bytes(4) != "FMAP")
        throw SchemaError("not a force map file");
    if (const auto version = r.uint<std::uint32_t>(); version != kMapVersion)
        throw SchemaError(fmt::format("unsupported map version {}", version));

    ForceMap map;
    map.sceneHash = r.uint<std::uint64_t>();

    const auto dims = r.uint<std::uint32_t>();
    std::vector<cspace::JointAxis> axes;
    for (std::uint32_t d = 0; d < dims; ++d)
    {
        cspace::JointAxis a;
        a.qMin = r.f64();
        a.step = r.f64();
        a.count = r.uint<std::uint64_t>();
        axes.push_back(a);
    }

    const auto jsonSize = r.uint<std::uint64_t>();
    map.scene = parseScene(r.bytes(jsonSize));
    if (sceneHash(map.scene) != map.sceneHash)
        throw SchemaError("embedded scene does not match the header hash");

    cspace::JointGrid grid;
    try
    {
        grid = cspace::JointGrid(std::move(axes));
    }
    catch (const InvalidGeometry& e)
    {
        throw SchemaError(fmt::format("map grid: {}", e.what()));
    }
    const auto cells = r.uint<std::uint64_t>();
    if (cells != grid.size())
        throw SchemaError("map cell count does not match its grid");
    const auto packed = r.bytes((cells + 7) / 8);
    std::vector<std::uint8_t> bits(cells);
    for (std::size_t i = 0; i < cells; ++i)
        bits[i] = (static_cast<unsigned char>(packed[i / 8]) >> (i % 8)) & 1u;
    map.cobs = cspace::CObsGrid(std::move(grid), std::move(bits));

    std::vector<cspace::UnsafeRegion> regions;
    const auto count = r.uint<std::uint32_t>();
    for (std::uint32_t k = 0; k < count; ++k)
    {
        const double alpha = r.f64();
        const auto outcome = r.uint<std::uint8_t>();
        if (outcome > static_cast<std::uint8_t>(cspace::AlphaOutcome::ConvexHullFallback))
            throw SchemaError("unknown alpha outcome in map file");
        const auto source = r.uint<std::uint64_t>();
        const double containment = r.f64();
        const auto n = r.uint<std::uint32_t>();
        std::vector<geometry::Vec2> ring(n);
        for (auto& v : ring)
        {
            v.x = r.f64();
            v.y = r.f64();
        }
        try
        {
            regions.push_back({geometry::SimplePolygon(std::move(ring)), alpha, source,
                               static_cast<cspace::AlphaOutcome>(outcome), containment});
        }
        catch (const InvalidGeometry& e)
        {
            throw SchemaError(fmt::format("map polygon {}: {}", k, e.what()));
        }
    }
    std::vector<std::string> warnings(r.uint<std::uint32_t>());
    for (auto& s : warnings)
        s = std::string(r.bytes(r.uint<std::uint32_t>()));
    if (r.position() != body.size())
        throw SchemaError("trailing bytes in map file");

    map.regions = cspace::UnsafeRegionSet(std::move(regions), std::move(warnings));
    return map;
}

void saveMap(const std::filesystem::path& path, const ForceMap& map)
{
    const std::string bytes = encodeMap(map);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out)
        throw Error(fmt::format("failed writing '{}'", path.string()));
}

ForceMap loadMap(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MapMissing(fmt::format("cannot read map file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return decodeMap(buf.str());
}

} // namespace forcemap::io

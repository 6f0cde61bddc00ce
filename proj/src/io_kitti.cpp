#include "elc/io_kitti.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace elc::io
{

namespace
{

constexpr std::size_t kScanRecordBytes = 16;
constexpr std::size_t kLabelBytes = 4;
constexpr InstanceId kMaxInstance = 0xFFFF;

std::vector<unsigned char> read_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto length = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    std::vector<unsigned char> bytes(length);
    if (length > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(length)))
        throw std::runtime_error("failed reading " + path.string());
    return bytes;
}

void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

std::uint32_t load_u32_le(const unsigned char* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void store_u32_le(unsigned char* p, std::uint32_t v)
{
    p[0] = static_cast<unsigned char>(v & 0xFF);
    p[1] = static_cast<unsigned char>((v >> 8) & 0xFF);
    p[2] = static_cast<unsigned char>((v >> 16) & 0xFF);
    p[3] = static_cast<unsigned char>((v >> 24) & 0xFF);
}

float load_f32_le(const unsigned char* p) { return std::bit_cast<float>(load_u32_le(p)); }

std::vector<LabelRecord> decode_labels(const std::vector<unsigned char>& bytes)
{
    std::vector<LabelRecord> records(bytes.size() / kLabelBytes);
    for (std::size_t i = 0; i < records.size(); ++i)
        records[i] = LabelRecord::from_raw(load_u32_le(bytes.data() + i * kLabelBytes));
    return records;
}

}  // namespace

LabelRecord LabelRecord::from_raw(std::uint32_t raw)
{
    return LabelRecord{static_cast<SemanticId>(raw & 0xFFFFu), raw >> 16};
}

std::uint32_t LabelRecord::raw() const
{
    if (instance > kMaxInstance)
        throw OverflowError("instance ID " + std::to_string(instance) + " exceeds 16 bits");
    return (instance << 16) | semantic;
}

void ScanBundle::validate() const
{
    if (semantic.size() != cloud.size() || instance.size() != cloud.size())
        throw std::invalid_argument("scan bundle arrays differ in length: " + std::to_string(cloud.size()) +
                                    " points, " + std::to_string(semantic.size()) + " semantic, " +
                                    std::to_string(instance.size()) + " instance");
}

PointCloud read_scan(const std::filesystem::path& path)
{
    const auto bytes = read_bytes(path);
    if (bytes.size() % kScanRecordBytes != 0)
        throw FormatError(path.string() + ": length " + std::to_string(bytes.size()) +
                          " is not a multiple of 16 (" + std::to_string(bytes.size() % kScanRecordBytes) +
                          " trailing bytes)");

    const std::size_t n = bytes.size() / kScanRecordBytes;
    PointCloud cloud;
    cloud.points.resize(n);
    cloud.remission.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const unsigned char* rec = bytes.data() + i * kScanRecordBytes;
        cloud.points[i] = Point3{load_f32_le(rec), load_f32_le(rec + 4), load_f32_le(rec + 8)};
        cloud.remission[i] = load_f32_le(rec + 12);
    }
    return cloud;
}

void write_scan(const PointCloud& cloud, const std::filesystem::path& path)
{
    std::vector<unsigned char> bytes(cloud.size() * kScanRecordBytes);
    const bool with_remission = cloud.remission.size() == cloud.size();
    for (std::size_t i = 0; i < cloud.size(); ++i)
    {
        unsigned char* rec = bytes.data() + i * kScanRecordBytes;
        const auto& p = cloud.points[i];
        store_u32_le(rec, std::bit_cast<std::uint32_t>(static_cast<float>(p.x)));
        store_u32_le(rec + 4, std::bit_cast<std::uint32_t>(static_cast<float>(p.y)));
        store_u32_le(rec + 8, std::bit_cast<std::uint32_t>(static_cast<float>(p.z)));
        store_u32_le(rec + 12, std::bit_cast<std::uint32_t>(with_remission ? cloud.remission[i] : 0.0f));
    }
    write_bytes(path, bytes);
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path, std::size_t n_points)
{
    const auto bytes = read_bytes(path);
    if (bytes.size() != n_points * kLabelBytes)
        throw FormatError(path.string() + ": expected " + std::to_string(n_points) + " labels (" +
                          std::to_string(n_points * kLabelBytes) + " bytes), file has " +
                          std::to_string(bytes.size()) + " bytes");
    return decode_labels(bytes);
}

std::vector<LabelRecord> read_labels(const std::filesystem::path& path)
{
    const auto bytes = read_bytes(path);
    if (bytes.size() % kLabelBytes != 0)
        throw FormatError(path.string() + ": length " + std::to_string(bytes.size()) +
                          " is not a multiple of 4 (" + std::to_string(bytes.size() % kLabelBytes) +
                          " trailing bytes)");
    return decode_labels(bytes);
}

void write_labels(std::span<const LabelRecord> records, const std::filesystem::path& path)
{
    std::size_t overflowing = 0;
    InstanceId worst = 0;
    for (const auto& r : records)
    {
        if (r.instance > kMaxInstance)
        {
            ++overflowing;
            worst = std::max(worst, r.instance);
        }
    }
    if (overflowing > 0)
        throw OverflowError(path.string() + ": " + std::to_string(overflowing) +
                            " labels carry instance IDs above 65535 (largest " + std::to_string(worst) + ")");

    std::vector<unsigned char> bytes(records.size() * kLabelBytes);
    for (std::size_t i = 0; i < records.size(); ++i)
        store_u32_le(bytes.data() + i * kLabelBytes, records[i].raw());
    write_bytes(path, bytes);
}

ScanBundle make_bundle(PointCloud cloud, std::span<const LabelRecord> labels)
{
    if (labels.size() != cloud.size())
        throw std::invalid_argument("label count " + std::to_string(labels.size()) + " does not match " +
                                    std::to_string(cloud.size()) + " points");
    ScanBundle bundle;
    bundle.cloud = std::move(cloud);
    bundle.semantic.reserve(labels.size());
    bundle.instance.reserve(labels.size());
    for (const auto& l : labels)
    {
        bundle.semantic.push_back(l.semantic);
        bundle.instance.push_back(l.instance);
    }
    return bundle;
}

ScanBundle read_bundle(const std::filesystem::path& scan_path, const std::filesystem::path& label_path)
{
    PointCloud cloud = read_scan(scan_path);
    const auto labels = read_labels(label_path, cloud.size());
    return make_bundle(std::move(cloud), labels);
}

Rgb instance_color(InstanceId id)
{
    if (id == 0)
        return Rgb{128, 128, 128};
    // splitmix64 finalizer; channels are lifted away from black so instances stay visible.
    std::uint64_t z = static_cast<std::uint64_t>(id) + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    auto channel = [](std::uint64_t bits) { return static_cast<std::uint8_t>(48 + (bits & 0xFF) * 207 / 255); };
    return Rgb{channel(z), channel(z >> 8), channel(z >> 16)};
}

void export_ply(const PointCloud& cloud, const InstanceLabeling& labeling, const std::filesystem::path& path)
{
    if (labeling.size() != cloud.size())
        throw std::invalid_argument("labeling has " + std::to_string(labeling.size()) + " entries for " +
                                    std::to_string(cloud.size()) + " points");

    std::ostringstream body;
    body.imbue(std::locale::classic());
    body << "ply\n"
         << "format ascii 1.0\n"
         << "element vertex " << cloud.size() << "\n"
         << "property float x\n"
         << "property float y\n"
         << "property float z\n"
         << "property uchar red\n"
         << "property uchar green\n"
         << "property uchar blue\n"
         << "end_header\n";
    body << std::setprecision(9);
    for (std::size_t i = 0; i < cloud.size(); ++i)
    {
        const auto& p = cloud.points[i];
        const Rgb c = instance_color(labeling.ids[i]);
        body << static_cast<float>(p.x) << ' ' << static_cast<float>(p.y) << ' ' << static_cast<float>(p.z) << ' '
             << int{c.r} << ' ' << int{c.g} << ' ' << int{c.b} << '\n';
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body.str();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

}  // namespace elc::io

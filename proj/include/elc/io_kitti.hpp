#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "elc/core_types.hpp"

namespace elc::io
{

/// Malformed scan or label file.
class FormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Instance ID that does not fit the 16 bits of the label layout.
class OverflowError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// One SemanticKITTI label word: bits 0-15 semantic class, bits 16-31 instance.
/// `instance` is kept wider than 16 bits so that pipeline output can be checked
/// for overflow at write time.
struct LabelRecord
{
    SemanticId semantic = 0;
    InstanceId instance = 0;

    static LabelRecord from_raw(std::uint32_t raw);
    /// Throws OverflowError if the instance does not fit in 16 bits.
    std::uint32_t raw() const;

    friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

struct ScanBundle
{
    PointCloud cloud;
    std::vector<SemanticId> semantic;
    std::vector<InstanceId> instance;

    std::size_t size() const { return cloud.size(); }
    /// Throws std::invalid_argument if the parallel arrays disagree in length.
    void validate() const;
};

PointCloud read_scan(const std::filesystem::path& path);
void write_scan(const PointCloud& cloud, const std::filesystem::path& path);

std::vector<LabelRecord> read_labels(const std::filesystem::path& path, std::size_t n_points);
/// Reads a label file whose point count is implied by its length.
std::vector<LabelRecord> read_labels(const std::filesystem::path& path);
void write_labels(std::span<const LabelRecord> records, const std::filesystem::path& path);

ScanBundle make_bundle(PointCloud cloud, std::span<const LabelRecord> labels);
ScanBundle read_bundle(const std::filesystem::path& scan_path, const std::filesystem::path& label_path);

/// Deterministic color for an instance; ID 0 maps to gray.
struct Rgb
{
    std::uint8_t r, g, b;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};
Rgb instance_color(InstanceId id);

void export_ply(const PointCloud& cloud, const InstanceLabeling& labeling, const std::filesystem::path& path);

}  // namespace elc::io

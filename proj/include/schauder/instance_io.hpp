#pragma once

// Instance files: one pair family per file, complex numbers as [re, im].
//
//   {"format_version": 1, "dim": d,
//    "pairs": [{"x": [[re, im], ...], "y": [[re, im], ...]}, ...],
//    "metadata": {"seed": 7, "generator": "gaussian", "description": "..."}}

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "schauder/frames.hpp"

namespace schauder::io {

inline constexpr int kFormatVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceMetadata {
  std::optional<std::uint64_t> seed;
  std::string generator;
  std::string description;
  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

struct InstanceFile {
  FramePair pair;
  InstanceMetadata metadata;
  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

std::string serialize_instance(const InstanceFile& inst);
/// Throws ParseError naming the line (for syntax errors) or the offending field.
InstanceFile parse_instance(std::string_view text);

InstanceFile read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const InstanceFile& inst);

/// A single file, or every *.json file of a directory in name order.
std::vector<std::filesystem::path> instance_paths(const std::filesystem::path& path);

}  // namespace schauder::io

#include "schauder/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace schauder::io {

using nlohmann::json;

namespace {

json complex_array(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(json::array({v(i).real(), v(i).imag()}));
  return arr;
}

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) field_error(where, "expected a number");
  return j.get<double>();
}

CVector parse_vector(const json& j, Eigen::Index dim, const std::string& where) {
  if (!j.is_array()) field_error(where, "expected an array of [re, im] pairs");
  if (static_cast<Eigen::Index>(j.size()) != dim)
    field_error(where, "expected " + std::to_string(dim) + " entries, found " + std::to_string(j.size()));
  CVector v(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& c = j[i];
    if (!c.is_array() || c.size() != 2) field_error(at, "expected [re, im]");
    v(static_cast<Eigen::Index>(i)) = Complex(number_at(c[0], at + "[0]"), number_at(c[1], at + "[1]"));
  }
  return v;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string serialize_instance(const InstanceFile& inst) {
  const FramePair& p = inst.pair;
  json root;
  root["format_version"] = kFormatVersion;
  root["dim"] = p.dim();
  json pairs = json::array();
  for (Eigen::Index k = 0; k < p.size(); ++k) pairs.push_back({{"x", complex_array(p.x(k))}, {"y", complex_array(p.y(k))}});
  root["pairs"] = std::move(pairs);
  json meta = json::object();
  if (inst.metadata.seed) meta["seed"] = *inst.metadata.seed;
  if (!inst.metadata.generator.empty()) meta["generator"] = inst.metadata.generator;
  if (!inst.metadata.description.empty()) meta["description"] = inst.metadata.description;
  if (!meta.empty()) root["metadata"] = std::move(meta);
  return root.dump(1) + "\n";
}

InstanceFile parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" + e.what() + ")");
  }
  if (!root.is_object()) field_error("<root>", "expected an object");
  if (!root.contains("format_version")) field_error("format_version", "missing");
  if (!root["format_version"].is_number_integer() || root["format_version"].get<int>() != kFormatVersion)
    field_error("format_version", "unsupported version (expected 1)");
  if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<long long>() < 1)
    field_error("dim", "expected a positive integer");
  const auto dim = static_cast<Eigen::Index>(root["dim"].get<long long>());
  if (!root.contains("pairs") || !root["pairs"].is_array() || root["pairs"].empty())
    field_error("pairs", "expected a nonempty array");

  const json& pairs = root["pairs"];
  const auto n = static_cast<Eigen::Index>(pairs.size());
  CMatrix xs(dim, n), ys(dim, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string at = "pairs[" + std::to_string(k) + "]";
    const json& entry = pairs[k];
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("y")) field_error(at, "expected {\"x\": ..., \"y\": ...}");
    xs.col(static_cast<Eigen::Index>(k)) = parse_vector(entry["x"], dim, at + ".x");
    ys.col(static_cast<Eigen::Index>(k)) = parse_vector(entry["y"], dim, at + ".y");
  }

  InstanceMetadata meta;
  if (root.contains("metadata")) {
    const json& m = root["metadata"];
    if (!m.is_object()) field_error("metadata", "expected an object");
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) field_error("metadata.seed", "expected a nonnegative integer");
      meta.seed = m["seed"].get<std::uint64_t>();
    }
    if (m.contains("generator")) {
      if (!m["generator"].is_string()) field_error("metadata.generator", "expected a string");
      meta.generator = m["generator"].get<std::string>();
    }
    if (m.contains("description")) {
      if (!m["description"].is_string()) field_error("metadata.description", "expected a string");
      meta.description = m["description"].get<std::string>();
    }
  }

  try {
    return InstanceFile{FramePair(std::move(xs), std::move(ys)), std::move(meta)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("pairs: ") + e.what());
  }
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_instance(const std::filesystem::path& path, const InstanceFile& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << serialize_instance(inst);
}

std::vector<std::filesystem::path> instance_paths(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return {path};
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace schauder::io

#pragma once

// Artifact output. Every file embeds the resolved config: JSON artifacts under
// "config", CSV files on a leading "# config: " line. Wall-clock time only
// appears under "metadata" in JSON artifacts, so CSV files are reproducible
// byte for byte.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

#include "charblow/config.hpp"

namespace charblow {

inline constexpr const char* kVersion = "0.1.0";

/// Write through a temporary file in the target directory and rename it over
/// the destination, so readers never observe a partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move output into place at '" + path + "'");
  }
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Shortest round-trip decimal form; non-finite values print as inf / -inf / nan.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// JSON number, or null when not finite.
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

inline json mat_json(const Mat& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

/// Top-level artifact object: config echo first, then metadata, then the payload.
inline json artifact(const RunConfig& cfg, const std::string& kind) {
  json j;
  j["kind"] = kind;
  j["config"] = to_json(cfg);
  j["metadata"] = {{"tool", "charblow"}, {"version", kVersion}, {"created", utc_timestamp()}};
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// CSV builder with the config echo on the first line.
class CsvWriter {
 public:
  CsvWriter(const RunConfig& cfg, const std::vector<std::string>& columns) {
    os_ << "# config: " << to_json(cfg).dump() << "\n";
    for (std::size_t k = 0; k < columns.size(); ++k) os_ << (k ? "," : "") << columns[k];
    os_ << "\n";
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << "\n";
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os_ << (k ? "," : "") << cells[k];
    os_ << "\n";
  }

  [[nodiscard]] std::string str() const { return os_.str(); }

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char ch : v) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  }
  static std::string cell(const char* v) { return cell(std::string(v)); }

  std::ostringstream os_;
};

/// Recover the resolved config from any artifact written by this tool.
inline RunConfig read_config_echo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string first;
  std::getline(in, first);
  const std::string tag = "# config: ";
  if (first.rfind(tag, 0) == 0) {
    try {
      return config_from_json(json::parse(first.substr(tag.size())));
    } catch (const json::parse_error&) {
      throw ConfigError("'" + path + "' has a malformed config line");
    }
  }
  const json j = read_json_file(path);
  if (!j.is_object() || !j.contains("config")) throw ConfigError("'" + path + "' has no config echo");
  return config_from_json(j.at("config"));
}

/// Sibling path with a different extension: "out/traj.json" -> "out/traj.csv".
inline std::string with_extension(const std::string& path, const std::string& ext) {
  std::filesystem::path p(path);
  p.replace_extension(ext);
  return p.string();
}

}  // namespace charblow

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adicscope/numeric.hpp"

namespace adicscope {

inline constexpr const char* kToolName = "adicscope";
inline constexpr const char* kToolVersion = "1.0.0";

/// One deterministic report: config echo + a flat table, emitted either as
/// CSV ('#'-prefixed header lines, then the table) or as JSON with an
/// optional structured payload replacing the table.
class Report {
 public:
  explicit Report(std::string command);

  void header(const std::string& key, const std::string& value);
  void header(const std::string& key, long value);
  void header(const std::string& key, double value);
  void header(const std::string& key, const BigInt& value);

  void columns(std::vector<std::string> names);
  void row(std::vector<std::string> cells);

  /// Structured payload used in JSON mode; the CSV table is still emitted in
  /// CSV mode.
  nlohmann::ordered_json& payload() { return payload_; }

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;  // "csv" | "json"

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> headers_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  nlohmann::ordered_json payload_;
};

/// Writes to `path`, or stdout when path is empty.
void emit_report(const Report& report, const std::string& format,
                 const std::string& path);

}  // namespace adicscope

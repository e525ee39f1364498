#include "adicscope/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "adicscope/errors.hpp"

namespace adicscope {

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::header(const std::string& key, const std::string& value) {
  headers_.emplace_back(key, value);
}
void Report::header(const std::string& key, long value) {
  headers_.emplace_back(key, std::to_string(value));
}
void Report::header(const std::string& key, double value) {
  headers_.emplace_back(key, format_double(value));
}
void Report::header(const std::string& key, const BigInt& value) {
  headers_.emplace_back(key, value.str());
}

void Report::columns(std::vector<std::string> names) {
  columns_ = std::move(names);
}

void Report::row(std::vector<std::string> cells) {
  rows_.push_back(std::move(cells));
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << "\n";
  out << "# command: " << command_ << "\n";
  for (const auto& [k, v] : headers_) out << "# " << k << ": " << v << "\n";
  if (!columns_.empty()) {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      out << (i ? "," : "") << columns_[i];
    out << "\n";
  }
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  }
  return out.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = std::string(kToolName) + " " + kToolVersion;
  doc["command"] = command_;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : headers_) cfg[k] = v;
  doc["config"] = cfg;
  if (!payload_.is_null()) {
    doc["data"] = payload_;
  } else {
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < r.size() && i < columns_.size(); ++i)
        obj[columns_[i]] = r[i];
      table.push_back(obj);
    }
    doc["data"] = table;
  }
  return doc.dump(2) + "\n";
}

std::string Report::render(const std::string& format) const {
  if (format == "csv") return to_csv();
  if (format == "json") return to_json();
  throw InputError("unknown output format '" + format + "'");
}

void emit_report(const Report& report, const std::string& format,
                 const std::string& path) {
  const std::string text = report.render(format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file '" + path + "'");
  out << text;
}

}  // namespace adicscope

#pragma once

#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"

namespace rotor::cli {

// 17 significant digits, scientific, '.' separator: -1.2345678901234567e+00.
std::string format_double(double v);

// A file, or stdout when path is "-". Binary mode so '\n' is never translated.
class OutputStream {
 public:
  explicit OutputStream(const std::string& path);
  std::ostream& stream() { return *out_; }
  // Throws std::runtime_error if any write failed.
  void finish();

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(std::string_view s);
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

// Sidecar next to a primary output: "<path>.meta.json".
std::string sidecar_path(const std::string& path);
// "<stem>_<k><ext>" with k zero-padded to the width of count - 1.
std::string numbered_path(const std::string& path, std::size_t k, std::size_t count);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace rotor::cli

#include "rotor/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <stdexcept>

namespace rotor::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
  if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
  return std::string(buf.data(), ptr);
}

OutputStream::OutputStream(const std::string& path) : path_(path), out_(&std::cout) {
  if (path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
  out_ = file_.get();
}

void OutputStream::finish() {
  out_->flush();
  if (!*out_) throw std::runtime_error("write failed: " + path_);
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header) : out_(out) {
  for (auto h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view s) {
  if (!first_) out_ << ',';
  out_ << s;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(std::string_view(format_double(v))); }
CsvWriter& CsvWriter::field(long long v) { return field(std::string_view(std::to_string(v))); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

std::string sidecar_path(const std::string& path) { return path + ".meta.json"; }

std::string numbered_path(const std::string& path, std::size_t k, std::size_t count) {
  const std::filesystem::path p(path);
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string idx = std::to_string(k);
  idx.insert(0, width - std::min(width, idx.size()), '0');
  const std::filesystem::path name = p.stem().string() + "_" + idx + p.extension().string();
  return (p.parent_path() / name).string();
}

void write_json(const std::string& path, const nlohmann::json& j) {
  OutputStream out(path);
  out.stream() << j.dump(2) << '\n';
  out.finish();
}

}  // namespace rotor::cli

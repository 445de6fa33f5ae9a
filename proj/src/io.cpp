#include "io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need swaps");

namespace treeclust {

namespace {

[[noreturn]] void io_error(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

[[noreturn]] void parse_error(const std::string& path, std::int64_t line,
                              const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw std::runtime_error(os.str());
}

bool parse_fields(const std::string& line, std::vector<float>& out) {
  out.clear();
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    float v;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) return false;
    out.push_back(v);
    p = next;
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p < end) {
      if (*p != ',') return false;
      ++p;
    }
  }
  return !out.empty();
}

}  // namespace

FileFormat detect_format(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".bin")
    return FileFormat::Binary;
  return FileFormat::Csv;
}

PointSet load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  PointSet ps;
  std::string line;
  std::vector<float> fields;
  std::int64_t lineno = 0;
  bool maybe_header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (!parse_fields(line, fields)) {
      if (maybe_header) {  // header line, skip
        maybe_header = false;
        continue;
      }
      parse_error(path, lineno, "malformed point line");
    }
    maybe_header = false;
    if (ps.dim == 0) {
      if (fields.size() != 2 && fields.size() != 3)
        parse_error(path, lineno, "points must have 2 or 3 coordinates");
      ps.dim = static_cast<int>(fields.size());
    } else if (static_cast<int>(fields.size()) != ps.dim) {
      parse_error(path, lineno, "inconsistent coordinate count");
    }
    ps.coords.insert(ps.coords.end(), fields.begin(), fields.end());
  }
  if (ps.coords.empty()) io_error(path, "no points found");
  ps.validate();
  return ps;
}

void save_csv(const std::string& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) io_error(path, "cannot open for writing");
  out.precision(9);
  for (std::int64_t i = 0; i < points.size(); ++i) {
    const float* p = points.point(i);
    for (int k = 0; k < points.dim; ++k) {
      if (k) out << ',';
      out << p[k];
    }
    out << '\n';
  }
  if (!out) io_error(path, "write failed");
}

PointSet load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  std::uint32_t n = 0, dim = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in) io_error(path, "truncated header");
  if (n == 0 || (dim != 2 && dim != 3)) io_error(path, "invalid header (n or dim)");
  PointSet ps;
  ps.dim = static_cast<int>(dim);
  ps.coords.resize(static_cast<std::size_t>(n) * dim);
  in.read(reinterpret_cast<char*>(ps.coords.data()),
          static_cast<std::streamsize>(ps.coords.size() * sizeof(float)));
  if (!in) io_error(path, "truncated coordinate data");
  ps.validate();
  return ps;
}

void save_binary(const std::string& path, const PointSet& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error(path, "cannot open for writing");
  auto n = static_cast<std::uint32_t>(points.size());
  auto dim = static_cast<std::uint32_t>(points.dim);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  out.write(reinterpret_cast<const char*>(points.coords.data()),
            static_cast<std::streamsize>(points.coords.size() * sizeof(float)));
  if (!out) io_error(path, "write failed");
}

PointSet load_points(const std::string& path) {
  return detect_format(path) == FileFormat::Binary ? load_binary(path)
                                                   : load_csv(path);
}

void save_points(const std::string& path, const PointSet& points) {
  if (detect_format(path) == FileFormat::Binary)
    save_binary(path, points);
  else
    save_csv(path, points);
}

}  // namespace treeclust

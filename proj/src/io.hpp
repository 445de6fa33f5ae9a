#ifndef TREECLUST_IO_HPP
#define TREECLUST_IO_HPP

#include <string>

#include "geometry.hpp"

namespace treeclust {

enum class FileFormat { Csv, Binary };

// .bin extension selects the binary format, anything else is CSV.
FileFormat detect_format(const std::string& path);

// CSV: one point per line, dim comma-separated decimal floats; a leading
// header line is skipped automatically. Parse errors report the line number.
PointSet load_csv(const std::string& path);
void save_csv(const std::string& path, const PointSet& points);

// Binary: little-endian uint32 n, uint32 dim, then n*dim little-endian
// 32-bit floats.
PointSet load_binary(const std::string& path);
void save_binary(const std::string& path, const PointSet& points);

PointSet load_points(const std::string& path);
void save_points(const std::string& path, const PointSet& points);

}  // namespace treeclust

#endif

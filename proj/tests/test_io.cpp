#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "datagen.hpp"
#include "io.hpp"

using namespace treeclust;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv round trip preserves float values") {
  TempFile f("treeclust_io_test.csv");
  PointSet ps = gaussian_blobs(2, 50, 3, 5.f, 0.3f, 1);
  save_csv(f.path, ps);
  PointSet back = load_csv(f.path);
  REQUIRE(back.dim == 3);
  REQUIRE(back.size() == ps.size());
  CHECK(back.coords == ps.coords);
}

TEST_CASE("csv header line is skipped automatically") {
  TempFile f("treeclust_io_header.csv");
  {
    std::ofstream out(f.path);
    out << "x,y\n1.0,2.0\n3.0,4.0\n";
  }
  PointSet ps = load_csv(f.path);
  REQUIRE(ps.size() == 2);
  CHECK(ps.point(1)[0] == 3.f);
}

TEST_CASE("csv parse errors carry the line number") {
  TempFile f("treeclust_io_bad.csv");
  {
    std::ofstream out(f.path);
    out << "1.0,2.0\n3.0,oops\n";
  }
  try {
    load_csv(f.path);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("csv rejects inconsistent dimensions") {
  TempFile f("treeclust_io_dims.csv");
  {
    std::ofstream out(f.path);
    out << "1.0,2.0\n3.0,4.0,5.0\n";
  }
  CHECK_THROWS_AS(load_csv(f.path), std::runtime_error);
}

TEST_CASE("binary round trip is byte-exact") {
  TempFile f("treeclust_io_test.bin");
  PointSet ps = gaussian_blobs(2, 64, 2, 5.f, 0.3f, 2);
  save_binary(f.path, ps);
  PointSet back = load_binary(f.path);
  REQUIRE(back.dim == 2);
  CHECK(back.coords == ps.coords);

  // Header layout: u32 n, u32 dim, then floats.
  std::ifstream in(f.path, std::ios::binary);
  std::uint32_t n = 0, dim = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&dim), 4);
  CHECK(n == 128);
  CHECK(dim == 2);
}

TEST_CASE("binary loader rejects truncated files") {
  TempFile f("treeclust_io_trunc.bin");
  {
    std::ofstream out(f.path, std::ios::binary);
    std::uint32_t n = 100, dim = 2;
    out.write(reinterpret_cast<char*>(&n), 4);
    out.write(reinterpret_cast<char*>(&dim), 4);
    float v = 1.f;
    out.write(reinterpret_cast<char*>(&v), 4);  // far fewer than 200 floats
  }
  CHECK_THROWS_AS(load_binary(f.path), std::runtime_error);
}

TEST_CASE("format detection by extension") {
  CHECK(detect_format("data.bin") == FileFormat::Binary);
  CHECK(detect_format("data.csv") == FileFormat::Csv);
  CHECK(detect_format("data.txt") == FileFormat::Csv);
}

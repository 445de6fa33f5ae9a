// treeclust command-line tool: clustering, verification, dataset generation,
// and parameter-sweep benchmarking on top of the treeclust C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "treeclust.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct DatasetDeleter {
  void operator()(tc_dataset* d) const { tc_dataset_free(d); }
};
struct ResultDeleter {
  void operator()(tc_result* r) const { tc_result_free(r); }
};
using DatasetPtr = std::unique_ptr<tc_dataset, DatasetDeleter>;
using ResultPtr = std::unique_ptr<tc_result, ResultDeleter>;

int status_to_exit(tc_status s) {
  switch (s) {
    case TC_OK: return kExitOk;
    case TC_ERR_VERIFY_FAIL: return kExitVerifyFail;
    case TC_ERR_IO: return kExitIo;
    default: return kExitUsage;
  }
}

int fail(tc_status s, const std::string& context) {
  std::cerr << "error: " << context << ": " << tc_status_string(s) << "\n";
  return status_to_exit(s);
}

DatasetPtr load_dataset(const std::string& path, tc_status* status) {
  tc_dataset* ds = nullptr;
  *status = tc_dataset_load(path.c_str(), TC_FORMAT_AUTO, &ds);
  return DatasetPtr(ds);
}

tc_algorithm parse_algo(const std::string& name) {
  if (name == "fdbscan") return TC_ALGO_FDBSCAN;
  if (name == "densebox") return TC_ALGO_DENSEBOX;
  return TC_ALGO_BRUTEFORCE;  // "oracle"
}

// Relabels clusters to 0..k-1 in order of first occurrence; noise stays -1.
std::vector<std::int32_t> renumber_labels(const std::int32_t* labels,
                                          std::int64_t n) {
  std::vector<std::int32_t> out(n);
  std::unordered_map<std::int32_t, std::int32_t> remap;
  for (std::int64_t i = 0; i < n; ++i) {
    if (labels[i] < 0) {
      out[i] = -1;
      continue;
    }
    auto [it, inserted] =
        remap.emplace(labels[i], static_cast<std::int32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

int run_cluster(const std::string& input, const std::string& output,
                const std::string& algo, float eps, int minpts, int threads,
                std::int64_t verify_cap, bool renumber) {
  tc_status status;
  DatasetPtr ds = load_dataset(input, &status);
  if (status != TC_OK) return fail(status, input);

  tc_result* raw = nullptr;
  status = tc_cluster(ds.get(), eps, minpts, parse_algo(algo), threads,
                      verify_cap, &raw);
  ResultPtr res(raw);
  if (status != TC_OK) return fail(status, "clustering");

  tc_cluster_stats stats;
  tc_result_stats(res.get(), &stats);
  std::int64_t n = tc_result_size(res.get());

  std::printf("algorithm:       %s\n", algo.c_str());
  std::printf("points:          %" PRId64 " (dim %d)\n", n, tc_dataset_dim(ds.get()));
  std::printf("build:           %.6f s\n", stats.build_seconds);
  if (stats.preprocess_skipped)
    std::printf("preprocess:      skipped (minpts == 2)\n");
  else
    std::printf("preprocess:      %.6f s\n", stats.preprocess_seconds);
  std::printf("main:            %.6f s\n", stats.main_seconds);
  std::printf("finalize:        %.6f s\n", stats.finalize_seconds);
  std::printf("clusters:        %" PRId64 "\n", stats.cluster_count);
  std::printf("core points:     %" PRId64 "\n", stats.core_count);
  std::printf("noise points:    %" PRId64 "\n", stats.noise_count);
  if (algo == "densebox")
    std::printf("dense fraction:  %.4f\n", stats.dense_point_fraction);

  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) return fail(TC_ERR_IO, output);
    const std::int32_t* labels = tc_result_labels(res.get());
    if (renumber) {
      auto mapped = renumber_labels(labels, n);
      for (std::int32_t l : mapped) out << l << '\n';
    } else {
      for (std::int64_t i = 0; i < n; ++i) out << labels[i] << '\n';
    }
    if (!out) return fail(TC_ERR_IO, output);
  }
  return kExitOk;
}

int run_verify(const std::string& input, float eps, int minpts, int threads,
               std::int64_t verify_cap) {
  tc_status status;
  DatasetPtr ds = load_dataset(input, &status);
  if (status != TC_OK) return fail(status, input);

  char report[4096];
  status = tc_verify(ds.get(), eps, minpts, threads, verify_cap, report,
                     sizeof report);
  std::fputs(report, stdout);
  if (status == TC_OK) {
    std::printf("verification: PASS\n");
    return kExitOk;
  }
  if (status == TC_ERR_VERIFY_FAIL) {
    std::printf("verification: FAIL\n");
    return kExitVerifyFail;
  }
  return fail(status, "verify");
}

int run_bench(const std::string& input, const std::string& output,
              std::vector<std::string> algos, std::vector<float> eps_list,
              std::vector<int> minpts_list, std::vector<std::int64_t> n_list,
              int threads) {
  tc_status status;
  DatasetPtr full = load_dataset(input, &status);
  if (status != TC_OK) return fail(status, input);

  std::ostringstream csv;
  csv << "algorithm,n,eps,minpts,build_s,preprocess_s,main_s,finalize_s,"
         "total_s,clusters,cores,noise,dense_fraction\n";

  if (n_list.empty()) n_list.push_back(tc_dataset_size(full.get()));
  for (std::int64_t n : n_list) {
    DatasetPtr subset;
    const tc_dataset* ds = full.get();
    if (n < tc_dataset_size(full.get())) {
      tc_dataset* raw = nullptr;
      status = tc_dataset_create(tc_dataset_coords(full.get()), n,
                                 tc_dataset_dim(full.get()), &raw);
      if (status != TC_OK) return fail(status, "subsetting");
      subset.reset(raw);
      ds = raw;
    }
    for (float eps : eps_list)
      for (int minpts : minpts_list)
        for (const std::string& algo : algos) {
          tc_result* raw = nullptr;
          status = tc_cluster(ds, eps, minpts, parse_algo(algo), threads, 0, &raw);
          ResultPtr res(raw);
          if (status != TC_OK) return fail(status, "bench run");
          tc_cluster_stats s;
          tc_result_stats(res.get(), &s);
          double total = s.build_seconds + s.preprocess_seconds +
                         s.main_seconds + s.finalize_seconds;
          csv << algo << ',' << tc_dataset_size(ds) << ',' << eps << ','
              << minpts << ',' << s.build_seconds << ',' << s.preprocess_seconds
              << ',' << s.main_seconds << ',' << s.finalize_seconds << ','
              << total << ',' << s.cluster_count << ',' << s.core_count << ','
              << s.noise_count << ',' << s.dense_point_fraction << '\n';
        }
  }

  if (output.empty()) {
    std::fputs(csv.str().c_str(), stdout);
  } else {
    std::ofstream out(output);
    if (!out) return fail(TC_ERR_IO, output);
    out << csv.str();
    if (!out) return fail(TC_ERR_IO, output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeclust: tree-based data-parallel DBSCAN"};
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a dataset and write labels");
  std::string input, output, algo = "fdbscan";
  float eps = 0.f;
  int minpts = 2, threads = 0;
  std::int64_t verify_cap = 0;
  bool renumber = false;
  cluster->add_option("--input", input, "input dataset (.csv or .bin)")->required();
  cluster->add_option("--out", output, "output label file (one id per line, -1 noise)");
  cluster->add_option("--algo", algo, "fdbscan | densebox | oracle")
      ->check(CLI::IsMember({"fdbscan", "densebox", "oracle"}));
  cluster->add_option("--eps", eps, "neighborhood radius")->required();
  cluster->add_option("--minpts", minpts, "density threshold (>= 2)")->required();
  cluster->add_option("--threads", threads, "worker threads (0 = hardware)");
  cluster->add_option("--verify-cap", verify_cap, "point cap for the oracle algorithm");
  cluster->add_flag("--renumber", renumber, "relabel clusters 0..k-1 by first occurrence");

  // verify
  auto* verify = app.add_subcommand("verify", "cross-check fdbscan, densebox, and the reference");
  std::string v_input;
  float v_eps = 0.f;
  int v_minpts = 2, v_threads = 0;
  std::int64_t v_cap = 0;
  verify->add_option("--input", v_input, "input dataset")->required();
  verify->add_option("--eps", v_eps, "neighborhood radius")->required();
  verify->add_option("--minpts", v_minpts, "density threshold (>= 2)")->required();
  verify->add_option("--threads", v_threads, "worker threads (0 = hardware)");
  verify->add_option("--verify-cap", v_cap, "oracle point cap (default 10000)");

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
  std::string g_kind = "blobs", g_out;
  std::uint64_t g_seed = 0;
  int g_dim = 2, g_k = 3;
  std::int64_t g_per_blob = 1000, g_n = 1000, g_side = 32;
  float g_separation = 10.f, g_sigma = 1.f, g_lo = 0.f, g_hi = 1.f, g_spacing = 1.f;
  generate->add_option("--kind", g_kind, "blobs | uniform | lattice")
      ->check(CLI::IsMember({"blobs", "uniform", "lattice"}));
  generate->add_option("--out", g_out, "output path (.csv or .bin)")->required();
  generate->add_option("--seed", g_seed, "rng seed");
  generate->add_option("-d,--dim", g_dim, "dimension (2 or 3)");
  generate->add_option("--blobs", g_k, "blob count (blobs)");
  generate->add_option("--per-blob", g_per_blob, "points per blob (blobs)");
  generate->add_option("--separation", g_separation, "min center distance (blobs)");
  generate->add_option("--sigma", g_sigma, "blob standard deviation (blobs)");
  generate->add_option("--n", g_n, "point count (uniform)");
  generate->add_option("--lo", g_lo, "lower bound per axis (uniform)");
  generate->add_option("--hi", g_hi, "upper bound per axis (uniform)");
  generate->add_option("--side", g_side, "points per axis (lattice)");
  generate->add_option("--spacing", g_spacing, "lattice spacing");

  // bench
  auto* bench = app.add_subcommand("bench", "parameter sweeps, CSV output");
  std::string b_input, b_out;
  std::vector<std::string> b_algos = {"fdbscan", "densebox"};
  std::vector<float> b_eps;
  std::vector<int> b_minpts;
  std::vector<std::int64_t> b_n;
  int b_threads = 0;
  bench->add_option("--input", b_input, "input dataset")->required();
  bench->add_option("--out", b_out, "CSV output path (default stdout)");
  bench->add_option("--algos", b_algos, "algorithms to sweep")->delimiter(',');
  bench->add_option("--eps-list", b_eps, "eps values")->delimiter(',')->required();
  bench->add_option("--minpts-list", b_minpts, "minpts values")->delimiter(',')->required();
  bench->add_option("--n-list", b_n, "point-count prefixes to sweep")->delimiter(',');
  bench->add_option("--threads", b_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (cluster->parsed())
    return run_cluster(input, output, algo, eps, minpts, threads, verify_cap,
                       renumber);
  if (verify->parsed())
    return run_verify(v_input, v_eps, v_minpts, v_threads, v_cap);
  if (generate->parsed()) {
    tc_dataset* raw = nullptr;
    tc_status status;
    if (g_kind == "blobs") {
      status = tc_generate_blobs(g_k, g_per_blob, g_dim, g_separation, g_sigma,
                                 g_seed, &raw);
    } else if (g_kind == "uniform") {
      float lo[3] = {g_lo, g_lo, g_lo};
      float hi[3] = {g_hi, g_hi, g_hi};
      status = tc_generate_uniform(g_n, g_dim, lo, hi, g_seed, &raw);
    } else {
      status = tc_generate_lattice(g_side, g_dim, g_spacing, &raw);
    }
    DatasetPtr ds(raw);
    if (status != TC_OK) return fail(status, "generate");
    status = tc_dataset_save(ds.get(), g_out.c_str(), TC_FORMAT_AUTO);
    if (status != TC_OK) return fail(status, g_out);
    std::printf("wrote %" PRId64 " points (dim %d) to %s\n",
                tc_dataset_size(ds.get()), tc_dataset_dim(ds.get()), g_out.c_str());
    return kExitOk;
  }
  if (bench->parsed())
    return run_bench(b_input, b_out, b_algos, b_eps, b_minpts, b_n, b_threads);
  return kExitUsage;
}

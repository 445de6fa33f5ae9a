#include "treeclust.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "datagen.hpp"
#include "dbscan.hpp"
#include "io.hpp"
#include "oracle.hpp"

struct tc_dataset {
  treeclust::PointSet points;
};

struct tc_result {
  treeclust::Clustering clustering;
  treeclust::RunStats stats;
};

namespace {

using treeclust::PointSet;

// Maps C++ exceptions from the core onto status codes.
template <typename Fn>
tc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument&) {
    return TC_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error&) {
    return TC_ERR_IO;
  } catch (const std::bad_alloc&) {
    return TC_ERR_INTERNAL;
  } catch (...) {
    return TC_ERR_INTERNAL;
  }
}

tc_status make_dataset(PointSet ps, tc_dataset** out) {
  ps.validate();
  *out = new tc_dataset{std::move(ps)};
  return TC_OK;
}

void append_report(std::string& out, const char* name,
                   const treeclust::EquivalenceReport& rep) {
  out += name;
  out += ": ";
  out += rep.pass ? "PASS" : "FAIL — " + rep.message;
  out += '\n';
}

}  // namespace

extern "C" {

const char* tc_status_string(tc_status status) {
  switch (status) {
    case TC_OK: return "ok";
    case TC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TC_ERR_IO: return "i/o error";
    case TC_ERR_VERIFY_FAIL: return "verification failed";
    case TC_ERR_CAP_EXCEEDED: return "oracle cap exceeded";
    case TC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tc_status tc_dataset_create(const float* coords, int64_t n, int dim,
                            tc_dataset** out) {
  if (!coords || !out || n < 1) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    PointSet ps(dim, std::vector<float>(coords, coords + n * dim));
    return make_dataset(std::move(ps), out);
  });
}

tc_status tc_dataset_load(const char* path, tc_file_format format,
                          tc_dataset** out) {
  if (!path || !out) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    PointSet ps;
    switch (format) {
      case TC_FORMAT_CSV: ps = treeclust::load_csv(path); break;
      case TC_FORMAT_BINARY: ps = treeclust::load_binary(path); break;
      default: ps = treeclust::load_points(path); break;
    }
    return make_dataset(std::move(ps), out);
  });
}

tc_status tc_dataset_save(const tc_dataset* ds, const char* path,
                          tc_file_format format) {
  if (!ds || !path) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    switch (format) {
      case TC_FORMAT_CSV: treeclust::save_csv(path, ds->points); break;
      case TC_FORMAT_BINARY: treeclust::save_binary(path, ds->points); break;
      default: treeclust::save_points(path, ds->points); break;
    }
    return TC_OK;
  });
}

int64_t tc_dataset_size(const tc_dataset* ds) { return ds ? ds->points.size() : 0; }
int tc_dataset_dim(const tc_dataset* ds) { return ds ? ds->points.dim : 0; }
const float* tc_dataset_coords(const tc_dataset* ds) {
  return ds ? ds->points.coords.data() : nullptr;
}
void tc_dataset_free(tc_dataset* ds) { delete ds; }

tc_status tc_generate_blobs(int k, int64_t per_blob, int dim, float separation,
                            float sigma, uint64_t seed, tc_dataset** out) {
  if (!out) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    return make_dataset(
        treeclust::gaussian_blobs(k, per_blob, dim, separation, sigma, seed),
        out);
  });
}

tc_status tc_generate_uniform(int64_t n, int dim, const float* lo,
                              const float* hi, uint64_t seed,
                              tc_dataset** out) {
  if (!out || !lo || !hi) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    treeclust::Aabb bounds;
    for (int k = 0; k < dim; ++k) {
      bounds.min[k] = lo[k];
      bounds.max[k] = hi[k];
      if (!(lo[k] <= hi[k])) throw std::invalid_argument("bounds");
    }
    return make_dataset(treeclust::uniform_noise(n, dim, bounds, seed), out);
  });
}

tc_status tc_generate_lattice(int64_t side, int dim, float spacing,
                              tc_dataset** out) {
  if (!out) return TC_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { return make_dataset(treeclust::dense_lattice(side, dim, spacing), out); });
}

tc_status tc_cluster(const tc_dataset* ds, float eps, int minpts,
                     tc_algorithm algorithm, int threads, int64_t oracle_cap,
                     tc_result** out) {
  if (!ds || !out) return TC_ERR_INVALID_ARGUMENT;
  return guarded([&]() -> tc_status {
    treeclust::DbscanParams params{eps, minpts};
    auto res = std::make_unique<tc_result>();
    switch (algorithm) {
      case TC_ALGO_FDBSCAN:
        res->clustering = treeclust::dbscan_run(
            ds->points, params, treeclust::Algorithm::Fdbscan, threads, &res->stats);
        break;
      case TC_ALGO_DENSEBOX:
        res->clustering = treeclust::dbscan_run(
            ds->points, params, treeclust::Algorithm::DenseBox, threads, &res->stats);
        break;
      case TC_ALGO_BRUTEFORCE: {
        int64_t cap = oracle_cap > 0 ? oracle_cap : treeclust::kDefaultOracleCap;
        if (ds->points.size() > cap) return TC_ERR_CAP_EXCEEDED;
        res->clustering = treeclust::dbscan_bruteforce(ds->points, params, cap);
        for (int32_t label : res->clustering.label)
          res->stats.noise_count += label == treeclust::kNoise;
        for (uint8_t core : res->clustering.is_core) res->stats.core_count += core;
        for (size_t i = 0; i < res->clustering.label.size(); ++i)
          res->stats.cluster_count +=
              res->clustering.label[i] == static_cast<int32_t>(i);
        break;
      }
      default:
        return TC_ERR_INVALID_ARGUMENT;
    }
    *out = res.release();
    return TC_OK;
  });
}

int64_t tc_result_size(const tc_result* res) {
  return res ? static_cast<int64_t>(res->clustering.label.size()) : 0;
}
const int32_t* tc_result_labels(const tc_result* res) {
  return res ? res->clustering.label.data() : nullptr;
}
const uint8_t* tc_result_core_flags(const tc_result* res) {
  return res ? res->clustering.is_core.data() : nullptr;
}

tc_status tc_result_stats(const tc_result* res, tc_cluster_stats* out) {
  if (!res || !out) return TC_ERR_INVALID_ARGUMENT;
  const treeclust::RunStats& s = res->stats;
  *out = tc_cluster_stats{s.build_seconds,
                          s.preprocess_seconds,
                          s.main_seconds,
                          s.finalize_seconds,
                          s.preprocess_skipped ? 1 : 0,
                          s.dense_point_fraction,
                          s.pair_resolutions,
                          s.distance_evaluations,
                          s.cluster_count,
                          s.core_count,
                          s.noise_count};
  return TC_OK;
}

void tc_result_free(tc_result* res) { delete res; }

tc_status tc_verify(const tc_dataset* ds, float eps, int minpts, int threads,
                    int64_t oracle_cap, char* report, size_t report_len) {
  if (!ds) return TC_ERR_INVALID_ARGUMENT;
  std::string text;
  tc_status status = guarded([&]() -> tc_status {
    treeclust::DbscanParams params{eps, minpts};
    int64_t cap = oracle_cap > 0 ? oracle_cap : treeclust::kDefaultOracleCap;

    treeclust::Clustering fd = treeclust::dbscan_run(
        ds->points, params, treeclust::Algorithm::Fdbscan, threads);
    treeclust::Clustering db = treeclust::dbscan_run(
        ds->points, params, treeclust::Algorithm::DenseBox, threads);

    bool all_pass = true;
    auto cross = treeclust::check_equivalence(fd, db, ds->points, params);
    append_report(text, "fdbscan vs densebox", cross);
    all_pass &= cross.pass;

    if (ds->points.size() <= cap) {
      treeclust::Clustering oracle =
          treeclust::dbscan_bruteforce(ds->points, params, cap);
      auto a = treeclust::check_equivalence(fd, oracle, ds->points, params);
      append_report(text, "fdbscan vs bruteforce", a);
      auto b = treeclust::check_equivalence(db, oracle, ds->points, params);
      append_report(text, "densebox vs bruteforce", b);
      all_pass &= a.pass && b.pass;
    } else {
      std::ostringstream os;
      os << "bruteforce reference skipped: n=" << ds->points.size()
         << " exceeds oracle cap " << cap << " (cross-algorithm check only)\n";
      text += os.str();
    }
    return all_pass ? TC_OK : TC_ERR_VERIFY_FAIL;
  });
  if (report && report_len > 0) {
    size_t len = std::min(report_len - 1, text.size());
    std::memcpy(report, text.data(), len);
    report[len] = '\0';
  }
  return status;
}

}  // extern "C"

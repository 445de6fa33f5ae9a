/* treeclust — data-parallel DBSCAN over a linear BVH.
 *
 * C interface to the shared library. Handles are opaque; every function that
 * can fail returns a tc_status, with TC_OK == 0 on success. Output handles
 * are written only on success and must be released with the matching _free.
 */

#ifndef TREECLUST_H
#define TREECLUST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tc_dataset tc_dataset;
typedef struct tc_result tc_result;

typedef enum tc_status {
  TC_OK = 0,
  TC_ERR_INVALID_ARGUMENT = 1,
  TC_ERR_IO = 2,
  TC_ERR_VERIFY_FAIL = 3,
  TC_ERR_CAP_EXCEEDED = 4,
  TC_ERR_INTERNAL = 5
} tc_status;

typedef enum tc_algorithm {
  TC_ALGO_FDBSCAN = 0,
  TC_ALGO_DENSEBOX = 1,
  TC_ALGO_BRUTEFORCE = 2 /* O(n^2) reference; subject to the oracle cap */
} tc_algorithm;

typedef enum tc_file_format { TC_FORMAT_AUTO = 0, TC_FORMAT_CSV = 1, TC_FORMAT_BINARY = 2 } tc_file_format;

typedef struct tc_cluster_stats {
  double build_seconds;
  double preprocess_seconds;
  double main_seconds;
  double finalize_seconds;
  int preprocess_skipped; /* 1 when minpts == 2 */
  double dense_point_fraction;
  uint64_t pair_resolutions;
  uint64_t distance_evaluations;
  int64_t cluster_count;
  int64_t core_count;
  int64_t noise_count;
} tc_cluster_stats;

const char* tc_status_string(tc_status status);

/* --- datasets --- */

/* coords: n*dim floats, row-major; dim must be 2 or 3, coordinates finite. */
tc_status tc_dataset_create(const float* coords, int64_t n, int dim,
                            tc_dataset** out);
tc_status tc_dataset_load(const char* path, tc_file_format format,
                          tc_dataset** out);
tc_status tc_dataset_save(const tc_dataset* ds, const char* path,
                          tc_file_format format);
int64_t tc_dataset_size(const tc_dataset* ds);
int tc_dataset_dim(const tc_dataset* ds);
const float* tc_dataset_coords(const tc_dataset* ds);
void tc_dataset_free(tc_dataset* ds);

/* --- seeded generators --- */

tc_status tc_generate_blobs(int k, int64_t per_blob, int dim, float separation,
                            float sigma, uint64_t seed, tc_dataset** out);
/* lo/hi: dim floats each */
tc_status tc_generate_uniform(int64_t n, int dim, const float* lo,
                              const float* hi, uint64_t seed, tc_dataset** out);
tc_status tc_generate_lattice(int64_t side, int dim, float spacing,
                              tc_dataset** out);

/* --- clustering --- */

/* threads == 0 selects the hardware thread count. oracle_cap <= 0 selects
 * the default cap (10000) for TC_ALGO_BRUTEFORCE; other algorithms ignore it. */
tc_status tc_cluster(const tc_dataset* ds, float eps, int minpts,
                     tc_algorithm algorithm, int threads, int64_t oracle_cap,
                     tc_result** out);

int64_t tc_result_size(const tc_result* res);
/* Per-point cluster id (index of the cluster's representative point), -1 for
 * noise. Valid until tc_result_free. */
const int32_t* tc_result_labels(const tc_result* res);
const uint8_t* tc_result_core_flags(const tc_result* res);
tc_status tc_result_stats(const tc_result* res, tc_cluster_stats* out);
void tc_result_free(tc_result* res);

/* --- verification --- */

/* Runs FDBSCAN, DenseBox, and (when n <= oracle_cap) the brute-force
 * reference, and cross-checks the clusterings: exact core flags, exact noise
 * set, core partition up to relabeling, valid border assignments. Returns
 * TC_OK when all checks pass, TC_ERR_VERIFY_FAIL otherwise. A human-readable
 * report is written to `report` (truncated to report_len, always
 * NUL-terminated) when provided. */
tc_status tc_verify(const tc_dataset* ds, float eps, int minpts, int threads,
                    int64_t oracle_cap, char* report, size_t report_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TREECLUST_H */

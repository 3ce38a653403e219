#ifndef LERW_CAPI_H
#define LERW_CAPI_H

/* C interface to the loop-erased walk library. All entry points return a
 * status code; on failure lerw_last_error() holds a message for the calling
 * thread. Handles are opaque and must be released with the matching destroy
 * call. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lerw_status {
  LERW_OK = 0,
  LERW_EINVAL = 1, /* bad arguments or configuration */
  LERW_EIO = 2,    /* file could not be read or written */
  LERW_EFAIL = 3   /* internal failure */
} lerw_status;

const char* lerw_version(void);
const char* lerw_rng_algorithm(void);
const char* lerw_last_error(void);

/* Run the experiment described by a key=value config file, writing the
 * record to the configured output path. */
lerw_status lerw_run(const char* config_path);

/* Print a human-readable summary of a record file to stdout; svg != 0 also
 * renders plots next to the record. */
lerw_status lerw_report(const char* record_path, int svg);

/* Run the built-in oracle agreement checks, printing one line each. */
lerw_status lerw_oracle_check(void);

/* --------------------------------------------------------------- walker --*/

typedef struct lerw_walker lerw_walker;

/* Simple random walk on the d-dimensional torus of side N. start may be
 * NULL for the origin; otherwise it holds dim coordinates in [0, N). The
 * walk stream is a pure function of (master_seed, replica_index). */
lerw_status lerw_walker_create(int64_t side, int dim, const int32_t* start,
                               uint64_t master_seed, uint64_t replica_index,
                               lerw_walker** out);
lerw_status lerw_walker_step(lerw_walker* w, int64_t* vertex_out);
lerw_status lerw_walker_position(const lerw_walker* w, int32_t* coords_out);
int64_t lerw_walker_vertex(const lerw_walker* w);
void lerw_walker_destroy(lerw_walker* w);

/* --------------------------------------------------------------- eraser --*/

typedef struct lerw_eraser lerw_eraser;

/* Online chronological loop-eraser over encoded vertex ids. universe > 0
 * selects a dense table over [0, universe); universe == 0 a hash map. */
lerw_status lerw_eraser_create(int64_t universe, lerw_eraser** out);
lerw_status lerw_eraser_push(lerw_eraser* e, int64_t vertex);
int64_t lerw_eraser_length(const lerw_eraser* e);
/* Copies the current loop-erased path into buf (capacity cap entries);
 * *written receives the path length. Fails with LERW_EINVAL if cap is too
 * small. */
lerw_status lerw_eraser_copy_path(const lerw_eraser* e, int64_t* buf, int64_t cap,
                                  int64_t* written);
void lerw_eraser_destroy(lerw_eraser* e);

/* ------------------------------------------------------------ reference --*/

/* Closed-formula complete-graph length pmf (support size n); buf receives
 * P(#LE = k) for k = 2..n+1. */
lerw_status lerw_complete_graph_pmf(int64_t n, double* buf, int64_t cap,
                                    int64_t* written);

/* Limit CDF 1 - exp(-t^2/2) of the normalized length. */
lerw_status lerw_limit_cdf(double t, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LERW_CAPI_H */

#include "lerw/capi.h"

#include <cstring>
#include <exception>
#include <iostream>
#include <memory>
#include <string>

#include "lerw/erasure.hpp"
#include "lerw/harness.hpp"
#include "lerw/laplacian.hpp"
#include "lerw/lattice.hpp"
#include "lerw/rng.hpp"
#include "lerw/walker.hpp"

namespace {

thread_local std::string g_last_error;

lerw_status fail(lerw_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

template <class Fn>
lerw_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(LERW_EINVAL, e.what());
  } catch (const std::runtime_error& e) {
    return fail(LERW_EIO, e.what());
  } catch (const std::exception& e) {
    return fail(LERW_EFAIL, e.what());
  } catch (...) {
    return fail(LERW_EFAIL, "unknown error");
  }
}

}  // namespace

struct lerw_walker {
  lerw::TorusParams params;
  lerw::TorusWalk walk;
};

struct lerw_eraser {
  // exactly one of the two is active
  std::unique_ptr<lerw::OnlineLoopEraser<lerw::DensePosMap>> dense;
  std::unique_ptr<lerw::OnlineLoopEraser<lerw::HashPosMap>> hash;
  std::int64_t universe = 0;

  void push(std::int64_t v) {
    if (dense)
      dense->push(v);
    else
      hash->push(v);
  }
  const lerw::SimplePath& path() const { return dense ? dense->path() : hash->path(); }
};

extern "C" {

const char* lerw_version(void) { return "0.1.0"; }

const char* lerw_rng_algorithm(void) { return lerw::kRngAlgorithm.data(); }

const char* lerw_last_error(void) { return g_last_error.c_str(); }

lerw_status lerw_run(const char* config_path) {
  if (!config_path) return fail(LERW_EINVAL, "config_path is null");
  return guarded([&] {
    auto cfg = lerw::ExperimentConfig::parse_file(config_path);
    lerw::run_experiment(cfg);
    return LERW_OK;
  });
}

lerw_status lerw_report(const char* record_path, int svg) {
  if (!record_path) return fail(LERW_EINVAL, "record_path is null");
  return guarded([&] {
    int rc = lerw::report_record(record_path, svg != 0, std::cout);
    if (rc == 1) return fail(LERW_EINVAL, "invalid record");
    if (rc == 2) return fail(LERW_EIO, "record could not be read");
    return LERW_OK;
  });
}

lerw_status lerw_oracle_check(void) {
  return guarded([&] {
    return lerw::oracle_check(std::cout) == 0
               ? LERW_OK
               : fail(LERW_EFAIL, "oracle checks failed");
  });
}

lerw_status lerw_walker_create(int64_t side, int dim, const int32_t* start,
                               uint64_t master_seed, uint64_t replica_index,
                               lerw_walker** out) {
  if (!out) return fail(LERW_EINVAL, "out is null");
  *out = nullptr;
  return guarded([&] {
    lerw::TorusParams params(side, dim);
    lerw::TorusPoint p{};
    if (start) {
      for (int i = 0; i < dim; ++i) {
        if (start[i] < 0 || start[i] >= side)
          throw std::invalid_argument("start coordinate out of range");
        p.c[i] = start[i];
      }
    }
    lerw::Rng rng(lerw::SeedSpec{master_seed, replica_index});
    *out = new lerw_walker{params, lerw::TorusWalk(params, p, rng)};
    return LERW_OK;
  });
}

lerw_status lerw_walker_step(lerw_walker* w, int64_t* vertex_out) {
  if (!w) return fail(LERW_EINVAL, "walker is null");
  return guarded([&] {
    std::int64_t v = w->walk.step();
    if (vertex_out) *vertex_out = v;
    return LERW_OK;
  });
}

lerw_status lerw_walker_position(const lerw_walker* w, int32_t* coords_out) {
  if (!w || !coords_out) return fail(LERW_EINVAL, "null argument");
  for (int i = 0; i < w->params.dim; ++i) coords_out[i] = w->walk.position().c[i];
  return LERW_OK;
}

int64_t lerw_walker_vertex(const lerw_walker* w) { return w ? w->walk.index() : -1; }

void lerw_walker_destroy(lerw_walker* w) { delete w; }

lerw_status lerw_eraser_create(int64_t universe, lerw_eraser** out) {
  if (!out) return fail(LERW_EINVAL, "out is null");
  *out = nullptr;
  if (universe < 0) return fail(LERW_EINVAL, "universe must be >= 0");
  return guarded([&] {
    auto e = std::make_unique<lerw_eraser>();
    e->universe = universe;
    if (universe > 0)
      e->dense = std::make_unique<lerw::OnlineLoopEraser<lerw::DensePosMap>>(universe);
    else
      e->hash = std::make_unique<lerw::OnlineLoopEraser<lerw::HashPosMap>>();
    *out = e.release();
    return LERW_OK;
  });
}

lerw_status lerw_eraser_push(lerw_eraser* e, int64_t vertex) {
  if (!e) return fail(LERW_EINVAL, "eraser is null");
  if (e->universe > 0 && (vertex < 0 || vertex >= e->universe))
    return fail(LERW_EINVAL, "vertex outside universe");
  return guarded([&] {
    e->push(vertex);
    return LERW_OK;
  });
}

int64_t lerw_eraser_length(const lerw_eraser* e) {
  return e ? static_cast<int64_t>(e->path().size()) : -1;
}

lerw_status lerw_eraser_copy_path(const lerw_eraser* e, int64_t* buf, int64_t cap,
                                  int64_t* written) {
  if (!e || !buf || !written) return fail(LERW_EINVAL, "null argument");
  const auto& p = e->path();
  *written = static_cast<int64_t>(p.size());
  if (cap < *written) return fail(LERW_EINVAL, "buffer too small");
  std::memcpy(buf, p.data(), p.size() * sizeof(int64_t));
  return LERW_OK;
}

void lerw_eraser_destroy(lerw_eraser* e) { delete e; }

lerw_status lerw_complete_graph_pmf(int64_t n, double* buf, int64_t cap,
                                    int64_t* written) {
  if (!buf || !written) return fail(LERW_EINVAL, "null argument");
  return guarded([&] {
    auto pmf = lerw::complete_graph_pmf(n);
    *written = static_cast<int64_t>(pmf.size());
    if (cap < *written) throw std::invalid_argument("buffer too small");
    std::memcpy(buf, pmf.data(), pmf.size() * sizeof(double));
    return LERW_OK;
  });
}

lerw_status lerw_limit_cdf(double t, double* out) {
  if (!out) return fail(LERW_EINVAL, "out is null");
  return guarded([&] {
    *out = lerw::complete_graph_limit_cdf(t);
    return LERW_OK;
  });
}

}  // extern "C"

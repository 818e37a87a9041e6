// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/par.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace transcend {

int thread_cap() {
  static const int cap = [] {
    int hw = 1;
#ifdef _OPENMP
    hw = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("TRANSCEND_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0 && v < 1024 && v < hw) return static_cast<int>(v);
    }
    return hw;
  }();
  return cap;
}

namespace detail {

void run_blocks_parallel(std::int64_t nblocks, void* ctx,
                         void (*body)(void*, std::int64_t)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
  for (std::int64_t b = 0; b < nblocks; ++b) body(ctx, b);
#else
  for (std::int64_t b = 0; b < nblocks; ++b) body(ctx, b);
#endif
}

}  // namespace detail
}  // namespace transcend

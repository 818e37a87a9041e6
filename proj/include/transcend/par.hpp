// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <vector>

namespace transcend {

// Execution mode for the sampling kernels. Every parallel kernel has a serial
// twin that performs the identical arithmetic; tests compare the two and the
// bench tool times them.
enum class Exec { serial, parallel };

// Number of OpenMP threads to use, honoring the TRANSCEND_THREADS env var.
int thread_cap();

namespace detail {
void run_blocks_parallel(std::int64_t nblocks, void* ctx,
                         void (*body)(void*, std::int64_t));
}

// Splits [0, n) into fixed blocks of size `block` and invokes
// fn(block_index, lo, hi) once per block. Block boundaries depend only on n
// and block, never on the schedule, so per-block partial results combined in
// block order are bit-identical for any thread count.
template <class Fn>
void for_blocks(std::int64_t n, std::int64_t block, Exec mode, Fn&& fn) {
  if (n <= 0) return;
  block = std::max<std::int64_t>(1, block);
  const std::int64_t nblocks = (n + block - 1) / block;
  auto run_one = [&](std::int64_t b) {
    const std::int64_t lo = b * block;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + block);
    fn(b, lo, hi);
  };
  if (mode == Exec::serial || nblocks == 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) run_one(b);
    return;
  }
  // Exceptions must not unwind across the OpenMP region; capture per block and
  // rethrow the one from the lowest block index, matching serial order.
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nblocks));
  auto guarded = [&](std::int64_t b) {
    try {
      run_one(b);
    } catch (...) {
      errs[static_cast<std::size_t>(b)] = std::current_exception();
    }
  };
  struct Ctx {
    decltype(guarded)* f;
  } ctx{&guarded};
  detail::run_blocks_parallel(
      nblocks, &ctx, [](void* c, std::int64_t b) { (*static_cast<Ctx*>(c)->f)(b); });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

inline std::int64_t block_count(std::int64_t n, std::int64_t block) {
  block = std::max<std::int64_t>(1, block);
  return n <= 0 ? 0 : (n + block - 1) / block;
}

// Default block size for circle scans and samplers.
inline constexpr std::int64_t kDefaultBlock = 16384;

}  // namespace transcend

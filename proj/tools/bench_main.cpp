// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Times the parallel kernels against their serial twins and insists on
// bit-identical results. Exit code 1 flags any divergence.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "CLI11.hpp"
#include "transcend/builder.hpp"
#include "transcend/checks.hpp"
#include "transcend/config.hpp"
#include "transcend/dynamics.hpp"
#include "transcend/io.hpp"
#include "transcend/par.hpp"

namespace {

using namespace transcend;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

bool report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-22s serial %9.1f ms  parallel %9.1f ms  speedup %5.2fx  %s\n",
              name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              identical ? "bit-identical" : "MISMATCH");
  return identical;
}

}  // namespace

int main(int argc, char** argv) {
  long samples = 65536;
  int res = 256;
  int depth = 4;
  CLI::App app{"serial vs parallel kernel comparison"};
  app.add_option("--samples", samples, "circle scan samples");
  app.add_option("--res", res, "render grid resolution");
  app.add_option("--depth", depth, "ladder depth");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", thread_cap());
  RunConfig cfg;
  cfg.depth = depth;
  cfg.samples = std::max(samples, 4096L);
  bool ok = true;

  // Ladder build: every circle scan inside runs in the requested mode.
  auto t0 = std::chrono::steady_clock::now();
  const Construction cs = config_build(cfg, Exec::serial);
  const double build_s = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const Construction cp = config_build(cfg, Exec::parallel);
  const double build_p = ms_since(t0);
  const std::string conf = config_to_text(cfg);
  ok &= report("build", build_s, build_p,
               construction_to_json(cs, conf) == construction_to_json(cp, conf));

  // Leading-term band scan at the head radius.
  const PolySpec spec = make_poly_spec(cfg.roots);
  HeadParams head = make_head_params(spec, cfg.lambda, cfg.head_n);
  head.R = cs.head.R;
  t0 = std::chrono::steady_clock::now();
  const RatioScan rs =
      leading_ratio_scan(spec, head, head.R, cfg.samples, RatioBand{}, Exec::serial);
  const double scan_s = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const RatioScan rp =
      leading_ratio_scan(spec, head, head.R, cfg.samples, RatioBand{}, Exec::parallel);
  const double scan_p = ms_since(t0);
  ok &= report("leading scan", scan_s, scan_p,
               std::memcmp(&rs.min_ratio_log, &rp.min_ratio_log, 8) == 0 &&
                   std::memcmp(&rs.max_ratio_log, &rp.max_ratio_log, 8) == 0 &&
                   rs.ok == rp.ok);

  // Full product max on |z| = 2 R_1.
  const double lr = cs.level(1).logR + std::log(2.0);
  const CircleEval eval = [&](double log_radius, double theta) {
    return f_eval(cs, lc_polar_log(log_radius, theta), 1e-9).mod_bounds();
  };
  const double hint = effective_degree(cs, cs.K(), lr);
  t0 = std::chrono::steady_clock::now();
  const CircleExtremum ms_ = circle_max(eval, lr, hint, cfg.samples, Exec::serial);
  const double circ_s = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const CircleExtremum mp = circle_max(eval, lr, hint, cfg.samples, Exec::parallel);
  const double circ_p = ms_since(t0);
  ok &= report("circle max", circ_s, circ_p,
               std::memcmp(&ms_.value_log, &mp.value_log, 8) == 0 &&
                   std::memcmp(&ms_.angle, &mp.angle, 8) == 0);

  // Orbit grid over the A_1 square.
  const Window win = default_window(cs);
  t0 = std::chrono::steady_clock::now();
  const Grid gs = render(cs, win, res, res, cfg.budget, Exec::serial);
  const double grid_s = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const Grid gp = render(cs, win, res, res, cfg.budget, Exec::parallel);
  const double grid_p = ms_since(t0);
  bool same = gs.cells.size() == gp.cells.size();
  for (std::size_t i = 0; same && i < gs.cells.size(); ++i)
    same = gs.cells[i].cls == gp.cells[i].cls &&
           gs.cells[i].first_B_level == gp.cells[i].first_B_level &&
           gs.cells[i].steps == gp.cells[i].steps;
  ok &= report("render", grid_s, grid_p, same);

  if (!ok) {
    std::fprintf(stderr, "serial and parallel kernels diverged\n");
    return 1;
  }
  return 0;
}

// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Subcommands cover construction, verification,
// growth analysis, rendering, dimension estimation and single orbits; every
// artifact embeds the resolved run configuration so it can be reproduced
// byte for byte.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "transcend/checks.hpp"
#include "transcend/config.hpp"
#include "transcend/dynamics.hpp"
#include "transcend/errors.hpp"
#include "transcend/io.hpp"

namespace {

using namespace transcend;

struct Cli {
  std::string config_path;
  std::string roots, lambda, head_n, lrule, depth, seed, samples, points;
  std::string window, res, budget, out;
  std::string npow, nconst, nlogpow;
  std::string in_path, z0 = "1,0";
  bool ntower = false;
  bool strict = false;
};

void add_common(CLI::App* sub, Cli& c) {
  sub->add_option("--config", c.config_path, "flat key=value config file");
  sub->add_option("--spec-roots", c.roots,
                  "positive roots a_1,...,a_k' of the seed polynomial");
  sub->add_option("--lambda", c.lambda, "head coefficient lambda (> 2)");
  sub->add_option("--head-n", c.head_n, "seed composition depth N (>= 4)");
  sub->add_option("--npow", c.npow, "power rule: n_k = floor(R_k^s)");
  sub->add_option("--nconst", c.nconst, "constant rule: n_k = n");
  sub->add_flag("--ntower", c.ntower, "tower rule: n_k = floor(R_k)^k");
  sub->add_option("--nlogpow", c.nlogpow,
                  "log-power rule: n_k = floor((ln R_k)^s)");
  sub->add_option("--lrule", c.lrule, "multiplicity rule: one | maxlog");
  sub->add_option("--depth", c.depth, "ladder depth K");
  sub->add_option("--seed", c.seed, "64-bit sampling seed");
  sub->add_option("--samples", c.samples, "circle scan sample floor (>= 4096)");
  sub->add_option("--points", c.points, "random point count for band checks");
  sub->add_option("--window", c.window, "render window cx,cy,w,h or 'auto'");
  sub->add_option("--res", c.res, "render resolution nx,ny (or one value)");
  sub->add_option("--budget", c.budget, "orbit iteration budget");
  sub->add_option("--out", c.out, "output path (base name for images)");
  sub->add_flag("--strict-no-skip", c.strict,
                "treat skipped checks as failures");
}

RunConfig make_config(const Cli& c) {
  RunConfig cfg;
  if (!c.config_path.empty()) cfg = config_from_text(read_file(c.config_path));
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) config_apply(cfg, key, v);
  };
  set("roots", c.roots);
  set("lambda", c.lambda);
  set("head_n", c.head_n);
  if (!c.nconst.empty()) {
    config_apply(cfg, "nrule", "constant");
    config_apply(cfg, "nconst", c.nconst);
  }
  if (!c.npow.empty()) {
    config_apply(cfg, "nrule", "power");
    config_apply(cfg, "nexp", c.npow);
  }
  if (c.ntower) config_apply(cfg, "nrule", "tower");
  if (!c.nlogpow.empty()) {
    config_apply(cfg, "nrule", "logpower");
    config_apply(cfg, "nexp", c.nlogpow);
  }
  set("lrule", c.lrule);
  set("depth", c.depth);
  set("seed", c.seed);
  set("samples", c.samples);
  set("points", c.points);
  set("window", c.window);
  set("res", c.res);
  set("budget", c.budget);
  set("out", c.out);
  if (c.strict) config_apply(cfg, "strict_no_skip", "1");
  return cfg;
}

std::string bc_display(const BigCount& b) {
  if (bc_is_exact(b)) return std::to_string(bc_value(b));
  return "exp(" + dec_from_double(b.log_value) + ")";
}

std::string strip_ext(const std::string& path) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return path;
  const std::string ext = path.substr(dot);
  if (ext == ".ppm" || ext == ".png" || ext == ".pbm" || ext == ".csv")
    return path.substr(0, dot);
  return path;
}

// ---------------------------------------------------------------------------

int cmd_construct(const RunConfig& cfg) {
  const Construction c = config_build(cfg);
  std::printf("%-3s %-24s %-18s %-12s %s\n", "k", "logR_k", "n_k", "l_k", "m_k");
  for (int k = 1; k <= c.K(); ++k) {
    const Level& lv = c.level(k);
    std::printf("%-3d %-24s %-18s %-12s %s\n", k,
                dec_from_double(lv.logR).c_str(), bc_display(lv.n).c_str(),
                bc_display(lv.l).c_str(), bc_display(lv.m).c_str());
  }
  if (c.capped)
    std::printf("capped at K=%d (log ceiling %s)\n", c.K(),
                dec_from_double(kLogCeiling).c_str());
  const std::string path = cfg.out.empty() ? "construction.json" : cfg.out;
  write_file(path, construction_to_json(c, config_to_text(cfg)));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& in_path) {
  const Construction c = in_path.empty()
                             ? config_build(cfg)
                             : construction_from_json(read_file(in_path));
  SuiteOptions opts;
  opts.samples = cfg.samples;
  opts.points = cfg.points;
  opts.seed = cfg.seed;
  opts.strict_no_skip = cfg.strict_no_skip;
  const CheckReport rep = run_full_suite(c, opts);
  std::fputs(report_table(rep).c_str(), stdout);
  const std::string path = cfg.out.empty() ? "report.json" : cfg.out;
  write_file(path, report_to_json(rep, config_to_text(cfg)));
  std::printf("wrote %s\n", path.c_str());
  return rep.n_fail() > 0 ? 1 : 0;
}

int cmd_growth(const RunConfig& cfg) {
  const Construction c = config_build(cfg);
  const std::vector<GrowthRow> rows = growth_order(c);
  std::vector<std::vector<std::string>> cells;
  for (const GrowthRow& r : rows) {
    std::string nk = r.log_n < 36.7 ? std::to_string(static_cast<long long>(
                                          std::llround(std::exp(r.log_n))))
                                    : "exp(" + dec_from_double(r.log_n) + ")";
    cells.push_back({std::to_string(r.k), dec_from_double(r.logR), nk,
                     dec_from_double(r.rho_hat), dec_from_double(r.rho_lower),
                     dec_from_double(r.liminf_ratio)});
  }
  const std::vector<std::string> notes = {
      "rho_hat = ln ln R_{k+1} / ln(2 R_k): upper growth-order surrogate "
      "(growth catalog GROW)",
      "rho_lower = ln(n_k ln 2) / ln(2 R_k): lower surrogate from the "
      "min-modulus bound 2^{n_k}",
      "liminf_ratio = ln ln R_{k+1} / ln ln(2 R_k): fast-escape criterion, "
      ">= 1 on every ladder",
  };
  const std::string path = cfg.out.empty() ? "growth.csv" : cfg.out;
  write_csv(path, "transcend-growth/1", config_to_text(cfg),
            {"k", "logR_k", "n_k", "rho_hat", "rho_lower", "liminf_ratio"},
            cells, notes);
  std::printf("%-3s %-22s %-14s %-12s %-12s %s\n", "k", "logR_k", "n_k",
              "rho_hat", "rho_lower", "liminf");
  for (const auto& row : cells)
    std::printf("%-3s %-22s %-14s %-12s %-12s %s\n", row[0].c_str(),
                row[1].c_str(), row[2].c_str(), row[3].c_str(), row[4].c_str(),
                row[5].c_str());
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

// Builds the grid shared by render and dimension; resolves the window and
// refuses one that pokes past the deepest annulus.
Grid build_grid(const Construction& c, RunConfig& cfg) {
  if (cfg.window_auto) {
    cfg.window = default_window(c);
    cfg.window_auto = false;
  }
  const double mx = std::hypot(std::fabs(cfg.window.cx) + cfg.window.w / 2,
                               std::fabs(cfg.window.cy) + cfg.window.h / 2);
  if (std::log(mx) > c.level(c.K()).logR + std::log(4.0))
    throw OutOfRange("window extends beyond the deepest annulus");
  return render(c, cfg.window, cfg.res_nx, cfg.res_ny, cfg.budget);
}

int cmd_render(RunConfig cfg) {
  const Construction c = config_build(cfg);
  const Grid g = build_grid(c, cfg);
  const std::string base = strip_ext(cfg.out.empty() ? "render" : cfg.out);
  const std::string conf = config_to_text(cfg);
  write_ppm(base + ".ppm", grid_to_image(g), conf);
  write_png(base + ".png", grid_to_image(g), conf);
  write_pbm(base + ".pbm", julia_mask(g), conf);
  long tally[4] = {0, 0, 0, 0};
  for (const Cell& cell : g.cells) ++tally[static_cast<int>(cell.cls)];
  std::printf("%dx%d cells: %ld fast-escaping, %ld trapped-D1, "
              "%ld julia-candidate, %ld budget\n",
              g.nx, g.ny, tally[0], tally[1], tally[2], tally[3]);
  std::printf("wrote %s.ppm %s.png %s.pbm\n", base.c_str(), base.c_str(),
              base.c_str());
  return 0;
}

int cmd_dimension(RunConfig cfg) {
  const Construction c = config_build(cfg);
  const Grid g = build_grid(c, cfg);
  const ImageMask mask = julia_mask(g);
  int cap = 0;
  while ((2 << cap) <= std::min(g.nx, g.ny)) ++cap;
  const BoxCountResult r = box_count(mask, 3, cap - 1);
  const std::string base = strip_ext(cfg.out.empty() ? "boxcount" : cfg.out);
  const std::string conf = config_to_text(cfg);
  write_pbm(base + ".pbm", mask, conf);
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < r.exps.size(); ++i)
    cells.push_back({std::to_string(r.exps[i]),
                     hex_from_double(std::ldexp(1.0, -r.exps[i])),
                     std::to_string(r.counts[i])});
  const std::vector<std::string> notes = {
      "slope = " + dec_from_double(r.slope),
      "stderr = " + dec_from_double(r.slope_stderr),
      "eps = 2^-e of the window side; count = occupied eps-boxes",
  };
  write_csv(base + ".csv", "transcend-boxcount/1", conf,
            {"e", "eps", "count"}, cells, notes);
  std::printf("slope %s stderr %s (%zu scales)\n",
              dec_from_double(r.slope).c_str(),
              dec_from_double(r.slope_stderr).c_str(), r.exps.size());
  std::printf("wrote %s.csv %s.pbm\n", base.c_str(), base.c_str());
  return 0;
}

int cmd_orbit(const RunConfig& cfg, const std::string& z0_text) {
  const Construction c = config_build(cfg);
  const auto parts = [&] {
    std::vector<std::string> p;
    std::string cur;
    for (char ch : z0_text) {
      if (ch == ',') {
        p.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    p.push_back(cur);
    return p;
  }();
  if (parts.size() != 2)
    throw ValidationFailure("--z0 needs re,im, got '" + z0_text + "'");
  const std::complex<double> z0(hex_to_double(parts[0]),
                                hex_to_double(parts[1]));
  const OrbitRecord rec = iterate_orbit(c, lc_from(z0), cfg.budget);
  std::printf("%-5s %-24s %-24s %-16s %s\n", "step", "log|z|", "arg z",
              "region", "dev");
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const OrbitStep& s = rec.steps[i];
    std::string region = region_kind_name(s.region.kind);
    if (s.region.k) region += "(" + std::to_string(s.region.k) + ")";
    const std::string lm =
        s.z.zero ? "-inf" : dec_from_double(s.z.log_mag);
    const std::string ar =
        s.has_arg && !s.z.zero ? dec_from_double(s.z.arg) : "-";
    std::printf("%-5zu %-24s %-24s %-16s %s\n", i, lm.c_str(), ar.c_str(),
                region.c_str(), dec_from_double(s.dev).c_str());
    cells.push_back({std::to_string(i),
                     s.z.zero ? "-inf" : hex_from_double(s.z.log_mag),
                     s.has_arg && !s.z.zero ? hex_from_double(s.z.arg) : "-",
                     region, hex_from_double(s.dev)});
  }
  std::printf("class %s, first B level %d, %zu f applications\n",
              orbit_class_name(rec.cls), rec.first_B_level,
              rec.steps.size() - 1);
  if (!cfg.out.empty())
    write_csv(cfg.out, "transcend-orbit/1", config_to_text(cfg),
              {"step", "log_mod", "arg", "region", "dev"}, cells,
              {std::string("class = ") + orbit_class_name(rec.cls),
               "first_B_level = " + std::to_string(rec.first_B_level)});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a product family of entire functions"};
  app.require_subcommand(1);
  Cli cli;
  CLI::App* sub_construct = app.add_subcommand(
      "construct", "build the radius ledger and write construction JSON");
  CLI::App* sub_verify = app.add_subcommand(
      "verify", "run the full check suite and write a report");
  CLI::App* sub_growth = app.add_subcommand(
      "growth", "tabulate growth-order surrogates per level");
  CLI::App* sub_render = app.add_subcommand(
      "render", "classify an orbit grid and write image artifacts");
  CLI::App* sub_dimension = app.add_subcommand(
      "dimension", "box-count the classification frontier");
  CLI::App* sub_orbit =
      app.add_subcommand("orbit", "iterate and classify a single point");
  for (CLI::App* sub : {sub_construct, sub_verify, sub_growth, sub_render,
                        sub_dimension, sub_orbit})
    add_common(sub, cli);
  sub_verify->add_option("--in", cli.in_path,
                         "verify an existing construction JSON");
  sub_orbit->add_option("--z0", cli.z0, "start point re,im");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // flag errors are configuration errors
  }

  try {
    const RunConfig cfg = make_config(cli);
    if (app.got_subcommand(sub_construct)) return cmd_construct(cfg);
    if (app.got_subcommand(sub_verify)) return cmd_verify(cfg, cli.in_path);
    if (app.got_subcommand(sub_growth)) return cmd_growth(cfg);
    if (app.got_subcommand(sub_render)) return cmd_render(cfg);
    if (app.got_subcommand(sub_dimension)) return cmd_dimension(cfg);
    if (app.got_subcommand(sub_orbit)) return cmd_orbit(cfg, cli.z0);
    return 2;
  } catch (const ValidationFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    for (const std::string& v : e.violations())
      std::fprintf(stderr, "  - %s\n", v.c_str());
    return 2;
  } catch (const EmptySet& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DegenerateFit& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "transcend/errors.hpp"

namespace transcend {

namespace {

constexpr double kLn4 = 1.3862943611198906;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

// ---------------------------------------------------------------------------
// Region classification

const char* region_kind_name(Region::Kind k) {
  switch (k) {
    case Region::Kind::D1: return "D1";
    case Region::Kind::A: return "A";
    case Region::Kind::B: return "B";
    case Region::Kind::OutOfLedger: return "out-of-ledger";
    case Region::Kind::Ambiguous: return "ambiguous";
  }
  return "?";
}

const char* orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::FastEscaping: return "fast-escaping";
    case OrbitClass::TrappedD1: return "trapped-D1";
    case OrbitClass::JuliaCandidate: return "julia-candidate";
    case OrbitClass::Budget: return "budget";
  }
  return "?";
}

Region classify_region(const Construction& c, double log_modulus) {
  if (c.K() < 1) throw ValidationFailure("classification needs a built level");
  if (std::isnan(log_modulus)) return Region{Region::Kind::Ambiguous, 0};
  const int K = c.K();
  for (int k = 1; k <= K; ++k) {
    const double lr = c.level(k).logR;
    if (log_modulus < lr - kLn4)
      return k == 1 ? Region{Region::Kind::D1, 0} : Region{Region::Kind::B, k - 1};
    if (log_modulus <= lr + kLn4) return Region{Region::Kind::A, k};
  }
  return Region{Region::Kind::OutOfLedger, 0};
}

Region classify_region(const Construction& c, const ModInterval& bounds) {
  if (bounds.hi_log == -kInf) return Region{Region::Kind::D1, 0};
  const Region lo = classify_region(c, bounds.lo_log);
  const Region hi = classify_region(c, bounds.hi_log);
  if (lo == hi) return lo;
  return Region{Region::Kind::Ambiguous, 0};
}

// ---------------------------------------------------------------------------
// Orbits

OrbitRecord iterate_orbit(const Construction& c, const LogComplex& z0,
                          int budget) {
  if (budget < 0) throw ValidationFailure("orbit budget must be >= 0");
  const int K = c.K();
  if (K < 1) throw ValidationFailure("orbit needs a built level");
  const double ledger_top = c.level(K).logR + kLn4;
  if (!z0.zero && !(z0.log_mag <= ledger_top))
    throw OutOfRange("orbit start beyond the deepest annulus");
  const double rel_tol =
      std::max(1e-9, kEpsilonC * std::exp(-c.level(K).logR) * (1.0 + 1e-12));

  OrbitRecord rec;
  OrbitStep start;
  start.z = z0;
  start.region = classify_region(c, z0.zero ? -kInf : z0.log_mag);
  rec.steps.push_back(start);

  for (;;) {
    const OrbitStep& last = rec.steps.back();
    switch (last.region.kind) {
      case Region::Kind::B:
        rec.cls = OrbitClass::FastEscaping;
        rec.first_B_level = last.region.k;
        return rec;
      case Region::Kind::OutOfLedger:
        rec.cls = OrbitClass::JuliaCandidate;
        return rec;
      case Region::Kind::Ambiguous:
        rec.cls = OrbitClass::Budget;
        return rec;
      case Region::Kind::D1:
      case Region::Kind::A:
        break;
    }
    if (!last.has_arg) {
      // Modulus alone cannot be iterated further.
      rec.cls = OrbitClass::Budget;
      return rec;
    }
    if (static_cast<int>(rec.steps.size()) > budget) break;

    OrbitStep next;
    try {
      const ValueBound v = f_eval(c, last.z, rel_tol);
      next.z = v.has_arg ? v.lc : lc_zero();
      next.has_arg = v.has_arg;
      next.dev = v.dev;
      next.region = classify_region(c, v.mod_bounds());
    } catch (const Error&) {
      rec.cls = OrbitClass::Budget;
      return rec;
    }
    rec.steps.push_back(next);
  }

  bool all_d1 = true;
  for (const OrbitStep& s : rec.steps)
    if (s.region.kind != Region::Kind::D1) all_d1 = false;
  rec.cls = all_d1 ? OrbitClass::TrappedD1 : OrbitClass::Budget;
  return rec;
}

// ---------------------------------------------------------------------------
// Grid rendering

Grid render(const Construction& c, const Window& win, int nx, int ny,
            int budget, Exec mode) {
  if (nx < 1 || ny < 1) throw ValidationFailure("render grid must be at least 1x1");
  if (!(win.w > 0.0) || !(win.h > 0.0) || !std::isfinite(win.w) ||
      !std::isfinite(win.h) || !std::isfinite(win.cx) || !std::isfinite(win.cy))
    throw ValidationFailure("render window must have positive finite size");

  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.window = win;
  g.budget = budget;
  g.cells.assign(static_cast<std::size_t>(nx) * ny, Cell{});

  const std::int64_t total = static_cast<std::int64_t>(nx) * ny;
  for_blocks(total, kDefaultBlock, mode,
             [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
               for (std::int64_t idx = lo; idx < hi; ++idx) {
                 const int i = static_cast<int>(idx % nx);
                 const int j = static_cast<int>(idx / nx);
                 const double x = win.cx - win.w / 2 + (i + 0.5) * win.w / nx;
                 const double y = win.cy + win.h / 2 - (j + 0.5) * win.h / ny;
                 Cell cell;
                 try {
                   const OrbitRecord rec =
                       iterate_orbit(c, lc_from({x, y}), budget);
                   cell.cls = rec.cls;
                   cell.first_B_level = rec.first_B_level;
                   cell.steps = static_cast<int>(rec.steps.size()) - 1;
                 } catch (const OutOfRange&) {
                   // Start point beyond the ledger: same verdict the orbit
                   // would get after one step out there.
                   cell = Cell{OrbitClass::JuliaCandidate, 0, 0};
                 }
                 g.cells[static_cast<std::size_t>(idx)] = cell;
               }
             });
  return g;
}

ImageMask julia_mask(const Grid& g) {
  ImageMask m;
  m.resize(g.nx, g.ny);
  auto key = [&](int i, int j) {
    const Cell& c = g.at(i, j);
    return std::pair<int, int>(static_cast<int>(c.cls), c.first_B_level);
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const auto here = key(i, j);
      bool frontier = false;
      if (i + 1 < g.nx && key(i + 1, j) != here) frontier = true;
      if (j + 1 < g.ny && key(i, j + 1) != here) frontier = true;
      m.at(i, j) = frontier ? 1 : 0;
    }
  return m;
}

ImageRGB grid_to_image(const Grid& g) {
  ImageRGB img;
  img.resize(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Cell& c = g.at(i, j);
      std::uint8_t* p = img.at(i, j);
      switch (c.cls) {
        case OrbitClass::FastEscaping: {
          const int shade = std::max(80, 255 - 36 * (c.first_B_level - 1));
          p[0] = 20;
          p[1] = static_cast<std::uint8_t>(shade / 2);
          p[2] = static_cast<std::uint8_t>(shade);
          break;
        }
        case OrbitClass::TrappedD1:
          p[0] = 120;
          p[1] = 20;
          p[2] = 20;
          break;
        case OrbitClass::JuliaCandidate:
          p[0] = p[1] = p[2] = 0;
          break;
        case OrbitClass::Budget:
          p[0] = p[1] = p[2] = 128;
          break;
      }
    }
  return img;
}

// ---------------------------------------------------------------------------
// Box-counting dimension

BoxCountResult box_count(const ImageMask& mask, int min_exp, int max_exp) {
  if (mask.width < 1 || mask.height < 1)
    throw ValidationFailure("box count needs a nonempty image");
  if (min_exp < 0 || max_exp < min_exp)
    throw ValidationFailure("box count needs 0 <= min_exp <= max_exp");

  long set = 0;
  for (std::uint8_t b : mask.bit) set += b ? 1 : 0;
  if (set == 0) throw EmptySet("box count of an empty mask");

  const int side = std::min(mask.width, mask.height);
  int cap = 0;
  while ((2 << cap) <= side) ++cap;  // largest e with 2^e <= side
  const int emax = std::min(max_exp, cap);
  if (emax - min_exp + 1 < 3)
    throw DegenerateFit("box count needs at least three usable scales");

  BoxCountResult res;
  std::vector<std::uint8_t> occ;
  for (int e = min_exp; e <= emax; ++e) {
    const std::int64_t nb = std::int64_t{1} << e;
    occ.assign(static_cast<std::size_t>(nb) * nb, 0);
    long count = 0;
    for (int j = 0; j < mask.height; ++j)
      for (int i = 0; i < mask.width; ++i) {
        if (!mask.at(i, j)) continue;
        const std::int64_t bi = static_cast<std::int64_t>(i) * nb / mask.width;
        const std::int64_t bj = static_cast<std::int64_t>(j) * nb / mask.height;
        std::uint8_t& cell = occ[static_cast<std::size_t>(bj) * nb + bi];
        if (!cell) {
          cell = 1;
          ++count;
        }
      }
    res.exps.push_back(e);
    res.counts.push_back(count);
  }

  const int n = static_cast<int>(res.exps.size());
  double xbar = 0.0, ybar = 0.0;
  std::vector<double> xs(n), ys(n);
  for (int s = 0; s < n; ++s) {
    xs[s] = res.exps[s] * std::log(2.0);
    ys[s] = std::log(static_cast<double>(res.counts[s]));
    xbar += xs[s];
    ybar += ys[s];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int s = 0; s < n; ++s) {
    sxx += (xs[s] - xbar) * (xs[s] - xbar);
    sxy += (xs[s] - xbar) * (ys[s] - ybar);
  }
  res.slope = sxy / sxx;
  double ss_res = 0.0;
  for (int s = 0; s < n; ++s) {
    const double r = ys[s] - ybar - res.slope * (xs[s] - xbar);
    ss_res += r * r;
  }
  res.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
  return res;
}

// ---------------------------------------------------------------------------
// Whitney sums

WhitneyResult whitney_tsum(const ImageMask& mask, double t, double pixel_size) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ValidationFailure("Whitney exponent t must be positive and finite");
  if (!(pixel_size > 0.0) || !std::isfinite(pixel_size))
    throw ValidationFailure("Whitney pixel size must be positive and finite");
  const int nx = mask.width, ny = mask.height;
  if (nx < 1 || ny < 1) throw ValidationFailure("Whitney sum needs a nonempty image");

  long set = 0;
  for (std::uint8_t b : mask.bit) set += b ? 1 : 0;
  if (set == 0) throw EmptySet("Whitney sum of an empty mask");

  // Chebyshev distance to the complement; outside the image counts as
  // complement. Two chamfer passes are exact for this metric.
  const int big = nx + ny + 2;
  std::vector<int> d(static_cast<std::size_t>(nx) * ny, 0);
  auto dat = [&](int i, int j) -> int {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return 0;
    return d[static_cast<std::size_t>(j) * nx + i];
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int& v = d[static_cast<std::size_t>(j) * nx + i];
      if (!mask.at(i, j)) {
        v = 0;
        continue;
      }
      v = big;
      v = std::min(v, 1 + dat(i - 1, j));
      v = std::min(v, 1 + dat(i - 1, j - 1));
      v = std::min(v, 1 + dat(i, j - 1));
      v = std::min(v, 1 + dat(i + 1, j - 1));
    }
  for (int j = ny - 1; j >= 0; --j)
    for (int i = nx - 1; i >= 0; --i) {
      if (!mask.at(i, j)) continue;
      int& v = d[static_cast<std::size_t>(j) * nx + i];
      v = std::min(v, 1 + dat(i + 1, j));
      v = std::min(v, 1 + dat(i + 1, j + 1));
      v = std::min(v, 1 + dat(i, j + 1));
      v = std::min(v, 1 + dat(i - 1, j + 1));
    }

  int pmax = 0;
  while ((2 << pmax) <= std::min(nx, ny)) ++pmax;

  WhitneyResult res;
  res.min_diam = kInf;
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(nx) * ny, 0);
  for (int p = pmax; p >= 0; --p) {
    const int s = 1 << p;
    for (int y0 = 0; y0 + s <= ny; y0 += s)
      for (int x0 = 0; x0 + s <= nx; x0 += s) {
        // Dyadic alignment nests tiles exactly, so one pixel decides.
        if (covered[static_cast<std::size_t>(y0) * nx + x0]) continue;
        int dmin = big;
        for (int y = y0; y < y0 + s && dmin > 0; ++y)
          for (int x = x0; x < x0 + s; ++x)
            dmin = std::min(dmin, d[static_cast<std::size_t>(y) * nx + x]);
        if (dmin < s) continue;
        if (s > 1 && dmin > 4 * s) continue;
        const double diam = std::sqrt(2.0) * s * pixel_size;
        res.tsum += std::pow(diam, t);
        res.squares += 1;
        res.max_side = std::max(res.max_side, s);
        res.min_diam = std::min(res.min_diam, diam);
        res.max_diam = std::max(res.max_diam, diam);
        for (int y = y0; y < y0 + s; ++y)
          for (int x = x0; x < x0 + s; ++x)
            covered[static_cast<std::size_t>(y) * nx + x] = 1;
      }
  }
  if (res.squares == 0) res.min_diam = 0.0;
  return res;
}

}  // namespace transcend

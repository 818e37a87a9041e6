// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
//
// Orbit classification and box-counting geometry on the ladder annuli.
//
// The plane splits along the moduli |z| into the inner disk D1, the critical
// annuli A_k = {R_k/4 <= |z| <= 4 R_k} and the escape annuli
// B_k = {4 R_k < |z| < R_{k+1}/4}. Once an orbit enters some B_k it runs to
// infinity through B_k, B_{k+1}, ... and never returns, so the first B hit
// certifies escape. Everything past 4 R_K is outside the built ledger and
// nothing can be certified there.
#pragma once

#include <vector>

#include "transcend/builder.hpp"
#include "transcend/extrange.hpp"
#include "transcend/io.hpp"
#include "transcend/par.hpp"

namespace transcend {

// ---------------------------------------------------------------------------
// Region classification

struct Region {
  enum class Kind { D1, A, B, OutOfLedger, Ambiguous };
  Kind kind = Kind::D1;
  int k = 0;  // level for A / B, 0 otherwise

  bool operator==(const Region& o) const { return kind == o.kind && k == o.k; }
};

const char* region_kind_name(Region::Kind k);

// Classifies by exact log-modulus. A bands are closed, B bands open; the
// boundary moduli 4 R_k and R_{k+1}/4 belong to the A side.
Region classify_region(const Construction& c, double log_modulus);

// Interval version: when the bounds do not land in the same region the
// result is Ambiguous (k = 0).
Region classify_region(const Construction& c, const ModInterval& bounds);

// ---------------------------------------------------------------------------
// Orbits

enum class OrbitClass { FastEscaping, TrappedD1, JuliaCandidate, Budget };

const char* orbit_class_name(OrbitClass c);

struct OrbitStep {
  LogComplex z;
  bool has_arg = true;  // false when a log-only power dropped the argument
  Region region;
  double dev = 0.0;  // relative deviation bound carried by the evaluation
};

struct OrbitRecord {
  std::vector<OrbitStep> steps;  // steps[0] is the start point
  OrbitClass cls = OrbitClass::Budget;
  int first_B_level = 0;  // level of the first B band hit, 0 if none
};

// Iterates z -> f(z) for at most `budget` applications, stopping early when
// the orbit is decided:
//   - first step inside some B_k      -> FastEscaping (escape is certified),
//   - value beyond the ledger (4 R_K) -> JuliaCandidate (nothing certifiable),
//   - every step inside D1            -> TrappedD1,
//   - ambiguous classification        -> Budget, recorded and stopped.
// Throws OutOfRange when the start point itself lies beyond 4 R_K.
OrbitRecord iterate_orbit(const Construction& c, const LogComplex& z0,
                          int budget = 64);

// ---------------------------------------------------------------------------
// Grid rendering

struct Window {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct Cell {
  OrbitClass cls = OrbitClass::Budget;
  int first_B_level = 0;
  int steps = 0;  // f applications spent on this pixel
};

struct Grid {
  int nx = 0;
  int ny = 0;
  Window window;
  int budget = 0;
  std::vector<Cell> cells;  // row-major, row 0 at the top

  const Cell& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * nx + i];
  }
};

// Classifies the orbit of every pixel center. Pixel (i, j) sits at
//   x = cx - w/2 + (i + 0.5) w / nx,  y = cy + h/2 - (j + 0.5) h / ny.
// Pixels are independent, so the parallel path is bit-identical to the
// serial one.
Grid render(const Construction& c, const Window& win, int nx, int ny,
            int budget, Exec mode = Exec::parallel);

// Marks pixels whose (class, first B level) pair differs from the right or
// the down neighbor: a one pixel frontier between classification cells.
ImageMask julia_mask(const Grid& g);

// Fixed palette: escaping pixels fade with the entry level, candidates are
// black, trapped pixels dark red, undecided gray.
ImageRGB grid_to_image(const Grid& g);

// ---------------------------------------------------------------------------
// Box-counting dimension

struct BoxCountResult {
  double slope = 0.0;         // log N(eps) vs log 1/eps
  double slope_stderr = 0.0;  // OLS standard error of the slope
  std::vector<int> exps;      // dyadic exponents e used (eps = 2^-e)
  std::vector<long> counts;   // occupied boxes at each exponent
};

// Counts occupied dyadic boxes at eps = 2^-e for e in [min_exp, max_exp]
// (box (bi, bj) covers pixels with floor(i 2^e / nx) == bi) and fits the
// count exponent by least squares. Throws EmptySet when the mask has no set
// pixel and DegenerateFit with fewer than three usable scales.
BoxCountResult box_count(const ImageMask& mask, int min_exp, int max_exp);

// ---------------------------------------------------------------------------
// Whitney sums

struct WhitneyResult {
  double tsum = 0.0;   // sum of diam^t over the accepted squares
  long squares = 0;
  int max_side = 0;    // largest accepted side, in pixels
  double min_diam = 0.0;
  double max_diam = 0.0;
};

// Dyadic Whitney decomposition of the open set marked by the mask (the
// complement, including everything outside the image, is the boundary).
// Grid-aligned squares of side s = 2^p are accepted top-down when every
// pixel sits at Chebyshev distance >= s from the complement and the square
// is proportional (distance <= 4 s); side 1 drops the upper proportionality
// bound so the decomposition always covers the set. diam = sqrt(2) * side *
// pixel_size. Throws EmptySet on an empty mask.
WhitneyResult whitney_tsum(const ImageMask& mask, double t, double pixel_size);

}  // namespace transcend

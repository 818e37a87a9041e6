// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#include "transcend/builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "json.hpp"
#include "transcend/errors.hpp"
#include "transcend/io.hpp"

namespace transcend {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLog2of53 = 53.0 * kLn2;  // ln(2^53)
constexpr double kExpClip = 700.0;         // exp stays finite below this

double safe_exp(double x) { return std::exp(std::min(x, kExpClip)); }

}  // namespace

// ---------------------------------------------------------------------------
// Sequence rules

std::string SequenceRule::describe() const {
  char buf[64];
  std::string out = "n=";
  switch (nkind) {
    case NKind::constant:
      std::snprintf(buf, sizeof buf, "constant:%llu",
                    static_cast<unsigned long long>(nc));
      out += buf;
      break;
    case NKind::power:
      std::snprintf(buf, sizeof buf, "power:%.17g", ns);
      out += buf;
      break;
    case NKind::tower:
      out += "tower";
      break;
    case NKind::logpower:
      std::snprintf(buf, sizeof buf, "logpower:%.17g", ns);
      out += buf;
      break;
  }
  out += ",l=";
  out += (lkind == LKind::one) ? "one" : "maxlog";
  return out;
}

BigCount rule_n(const SequenceRule& rule, double logR, int k, bool* clamped) {
  if (clamped) *clamped = false;
  if (!(logR > 0.0) || !std::isfinite(logR))
    throw ValidationFailure("rule_n needs a positive finite logR");
  BigCount raw = bc_exact(8);
  switch (rule.nkind) {
    case SequenceRule::NKind::constant:
      raw = bc_exact(rule.nc);
      break;
    case SequenceRule::NKind::power: {
      if (!(rule.ns > 0.0) || !std::isfinite(rule.ns))
        throw ValidationFailure("power rule needs a positive finite exponent");
      const double lg = rule.ns * logR;
      raw = (lg < kLog2of53)
                ? bc_exact(static_cast<std::uint64_t>(std::floor(std::exp(lg))))
                : bc_log(lg);
      break;
    }
    case SequenceRule::NKind::tower: {
      if (k < 1) throw ValidationFailure("tower rule needs k >= 1");
      if (logR < kLog2of53) {
        const double fl = std::floor(std::exp(logR));
        const double lf = std::log(fl);
        if (static_cast<double>(k) * lf < kLog2of53) {
          std::uint64_t acc = 1;
          const std::uint64_t base = static_cast<std::uint64_t>(fl);
          for (int i = 0; i < k; ++i) acc *= base;
          raw = bc_exact(acc);
        } else {
          raw = bc_log(static_cast<double>(k) * lf);
        }
      } else {
        // floor is a sub-ulp perturbation at this size
        raw = bc_log(static_cast<double>(k) * logR);
      }
      break;
    }
    case SequenceRule::NKind::logpower: {
      if (!(rule.ns > 0.0) || !std::isfinite(rule.ns))
        throw ValidationFailure(
            "logpower rule needs a positive finite exponent");
      const double v = std::pow(logR, rule.ns);
      raw = (v < 9.007199254740992e15)
                ? bc_exact(static_cast<std::uint64_t>(std::floor(v)))
                : bc_log(rule.ns * std::log(logR));
      break;
    }
  }
  if (bc_is_exact(raw) && raw.value < 8) {
    raw = bc_exact(8);
    if (clamped) *clamped = true;
  }
  return raw;
}

BigCount rule_l(const SequenceRule& rule, double logR) {
  if (rule.lkind == SequenceRule::LKind::one) return bc_exact(1);
  if (!(logR > 0.0) || !std::isfinite(logR))
    throw ValidationFailure("rule_l needs a positive finite logR");
  const double v = logR / kLn2;
  if (v < 9.007199254740992e15) {
    const std::uint64_t fl = static_cast<std::uint64_t>(std::floor(v));
    return bc_exact(fl >= 1 ? fl : 1);
  }
  return bc_log(std::log(logR) - std::log(kLn2));
}

// ---------------------------------------------------------------------------
// Circle extrema

namespace {

struct Cand {
  double key = -kInf;
  double angle = 0.0;
};

inline bool better(const Cand& a, const Cand& b, bool want_max) {
  if (a.key != b.key) return want_max ? (a.key > b.key) : (a.key < b.key);
  return a.angle < b.angle;
}

constexpr int kTopK = 8;

struct TopSet {
  std::array<Cand, kTopK> c{};
  int count = 0;

  void insert(const Cand& x, bool want_max) {
    if (count < kTopK) {
      c[static_cast<std::size_t>(count++)] = x;
    } else if (better(x, c[kTopK - 1], want_max)) {
      c[kTopK - 1] = x;
    } else {
      return;
    }
    for (int i = count - 1; i > 0 && better(c[static_cast<std::size_t>(i)],
                                            c[static_cast<std::size_t>(i) - 1],
                                            want_max);
         --i)
      std::swap(c[static_cast<std::size_t>(i)],
                c[static_cast<std::size_t>(i) - 1]);
  }
};

double key_of(const ModInterval& m, bool want_max) {
  return want_max ? m.hi_log : m.lo_log;
}

Cand golden_refine(const CircleEval& eval, double log_r, double a, double b,
                   bool want_max) {
  constexpr double invphi = 0.61803398874989484820;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = key_of(eval(log_r, x1), want_max);
  double f2 = key_of(eval(log_r, x2), want_max);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    const bool keep_left = want_max ? (f1 >= f2) : (f1 <= f2);
    if (keep_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = key_of(eval(log_r, x1), want_max);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = key_of(eval(log_r, x2), want_max);
    }
  }
  Cand best{f1, x1};
  if (better(Cand{f2, x2}, best, want_max)) best = Cand{f2, x2};
  const double mid = 0.5 * (a + b);
  const Cand cm{key_of(eval(log_r, mid), want_max), mid};
  if (better(cm, best, want_max)) best = cm;
  return best;
}

CircleExtremum scan_circle(const CircleEval& eval, double log_radius,
                           double degree_hint, long samples, Exec mode,
                           bool want_max) {
  if (samples < 4096)
    throw ValidationFailure("circle scan needs at least 4096 samples");
  double dh = degree_hint;
  if (!(dh >= 1.0)) dh = 1.0;  // also catches NaN
  dh = std::min(dh, 1e7);
  const std::int64_t n =
      std::max<std::int64_t>(samples, static_cast<std::int64_t>(
                                          std::ceil(8.0 * dh)));
  const double step = kTau / static_cast<double>(n);

  const std::int64_t nb = block_count(n, kDefaultBlock);
  std::vector<TopSet> tops(static_cast<std::size_t>(nb));
  for_blocks(n, kDefaultBlock, mode,
             [&](std::int64_t bi, std::int64_t lo, std::int64_t hi) {
               TopSet& t = tops[static_cast<std::size_t>(bi)];
               for (std::int64_t i = lo; i < hi; ++i) {
                 const double th = step * static_cast<double>(i);
                 t.insert(Cand{key_of(eval(log_radius, th), want_max), th},
                          want_max);
               }
             });
  TopSet global;
  for (const TopSet& t : tops)
    for (int i = 0; i < t.count; ++i)
      global.insert(t.c[static_cast<std::size_t>(i)], want_max);
  if (global.count == 0) throw EmptySet("circle scan produced no samples");

  Cand best = global.c[0];
  for (int i = 0; i < global.count; ++i) {
    const double th = global.c[static_cast<std::size_t>(i)].angle;
    const Cand r = golden_refine(eval, log_radius, th - step, th + step,
                                 want_max);
    if (better(r, best, want_max)) best = r;
  }
  return CircleExtremum{best.key, normalize_angle(best.angle), n};
}

}  // namespace

CircleExtremum circle_max(const CircleEval& eval, double log_radius,
                          double degree_hint, long samples, Exec mode) {
  return scan_circle(eval, log_radius, degree_hint, samples, mode, true);
}

CircleExtremum circle_min(const CircleEval& eval, double log_radius,
                          double degree_hint, long samples, Exec mode) {
  return scan_circle(eval, log_radius, degree_hint, samples, mode, false);
}

// ---------------------------------------------------------------------------
// Evaluation

ModInterval ValueBound::mod_bounds() const {
  ModInterval base{0.0, 0.0};
  if (has_arg) {
    if (lc.zero) return ModInterval{-kInf, -kInf};
    base = mi_point(lc.log_mag);
  } else {
    base = mi;
  }
  if (dev <= 0.0) return base;
  const double lo =
      (dev < 1.0) ? base.lo_log + std::log1p(-dev) : -kInf;
  const double hi = base.hi_log + std::log1p(dev);
  return mi_make(lo, hi);
}

FkValue Fk_eval(const Level& lv, const LogComplex& z) {
  FkValue out;
  out.lc = lc_one();
  if (lc_is_zero(z)) return out;  // w = 0, factor is exactly 1

  const LogComplex base{false, z.log_mag - lv.logR, z.arg};
  const PowValue wv = lc_pow(base, lv.n);

  if (std::holds_alternative<LogComplex>(wv)) {
    const LogComplex w = std::get<LogComplex>(wv);
    if (w.zero) return out;
    if (w.log_mag < -kDominanceGap) {
      // |w| < e^-D: |F_k - 1| <= l_k |w| / 2 relatively; keep the exact 1.
      const double dlog = lv.l.log_value + w.log_mag - kLn2;
      out.skipped_dev = safe_exp(std::min(dlog, 0.0));
      return out;
    }
    const LogComplex half{false, w.log_mag - kLn2, w.arg};
    const LogComplex g = lc_sub(lc_one(), half);
    if (g.zero) {
      out.lc = lc_zero();  // a zero of F_k; any l_k >= 1 keeps it zero
      return out;
    }
    const PowValue fv = lc_pow(g, lv.l);
    if (std::holds_alternative<LogComplex>(fv)) {
      out.lc = std::get<LogComplex>(fv);
    } else {
      out.has_arg = false;
      out.mi = std::get<ModInterval>(fv);
    }
    return out;
  }

  // n_k is log-only: modulus interval arithmetic from here on.
  const ModInterval w = std::get<ModInterval>(wv);
  if (w.hi_log < -kDominanceGap) {
    const double dlog = lv.l.log_value + w.hi_log - kLn2;
    out.skipped_dev = safe_exp(std::min(dlog, 0.0));
    return out;
  }
  const ModInterval g = mi_abs_linear(1.0, -0.5, w);
  out.has_arg = false;
  out.mi = mi_pow(g, lv.l);
  return out;
}

ValueBound f_truncated(const Construction& c, const LogComplex& z, int k) {
  if (k < 0 || k > c.K())
    throw OutOfRange("truncation level outside the built ladder");
  ValueBound acc;
  acc.lc = F0_eval(c.spec, c.head, z);
  acc.k_used = k;
  for (int j = 1; j <= k; ++j) {
    const FkValue f = Fk_eval(c.level(j), z);
    // Relative deviations compose multiplicatively.
    acc.dev = acc.dev + f.skipped_dev + acc.dev * f.skipped_dev;
    if (acc.has_arg && f.has_arg) {
      acc.lc = lc_mul(acc.lc, f.lc);
      continue;
    }
    const ModInterval a =
        acc.has_arg ? (acc.lc.zero ? ModInterval{-kInf, -kInf}
                                   : mi_point(acc.lc.log_mag))
                    : acc.mi;
    const ModInterval b =
        f.has_arg ? (f.lc.zero ? ModInterval{-kInf, -kInf}
                               : mi_point(f.lc.log_mag))
                  : f.mi;
    acc.has_arg = false;
    acc.mi = mi_mul(a, b);
  }
  return acc;
}

ValueBound f_eval(const Construction& c, const LogComplex& z, double rel_tol) {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw ValidationFailure("rel_tol must be positive and finite");
  if (c.K() < 1) throw ValidationFailure("construction has no levels");

  const double zlog = lc_is_zero(z) ? -kInf : z.log_mag;
  int kmin = 0;
  for (int k = 1; k <= c.K(); ++k) {
    if (zlog <= 2.0 * kLn2 + c.level(k).logR) {
      kmin = k;
      break;
    }
  }
  if (kmin == 0)
    throw OutOfRange("point lies beyond 4 R_K; deepen the construction");

  int kuse = 0;
  for (int k = kmin; k <= c.K(); ++k) {
    if (8.0 * safe_exp(-c.level(k).logR) <= rel_tol) {
      kuse = k;
      break;
    }
  }
  if (kuse == 0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "tail bound %.3e at the deepest level exceeds rel_tol %.3e",
                  8.0 * safe_exp(-c.level(c.K()).logR), rel_tol);
    throw TolUnreachable(msg);
  }

  ValueBound v = f_truncated(c, z, kuse);
  const double tail = 8.0 * safe_exp(-c.level(kuse).logR);
  v.dev = v.dev + tail + v.dev * tail;
  v.k_used = kuse;
  return v;
}

double epsilon_k(const Level& lv) {
  const double geom =
      lv.l.log_value + bc_double(lv.n) * std::log(2.0 / 3.0);
  return safe_exp(geom) + safe_exp(-lv.logR);
}

double effective_degree(const Construction& c, int k, double log_radius) {
  double deg = static_cast<double>(c.head.m);
  for (int j = 1; j <= k && j <= c.K(); ++j) {
    const Level& lv = c.level(j);
    const double diff = log_radius - lv.logR;
    const double s = (diff == 0.0) ? 0.0 : bc_double(lv.n) * diff;
    const double llog = lv.l.log_value;
    // |F_j - 1| <= l |w| / 2 small: factor is flat at 1.
    const bool tiny = (llog + s - kLn2) < -kDominanceGap;
    // |w| >> 1: modulus ripple <= 2 l / |w| small, only the trend remains.
    const bool flat = (llog + kLn2 - s) < -kDominanceGap;
    if (!tiny && !flat) {
      const double add = bc_double(bc_mul(lv.n, lv.l));
      deg += std::isfinite(add) ? add : 1e18;
    }
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Build

Construction build(const PolySpec& spec, const HeadParams& head,
                   const SequenceRule& rule, int depth,
                   const BuildOptions& opts, Exec mode) {
  std::vector<std::string> bad;
  if (!(head.R >= 32.0))
    bad.push_back("R must be at least 32 (run find_leading_radius first)");
  if (head.m < 13) bad.push_back("degree m must be at least 13");
  if (depth < 1) bad.push_back("depth must be at least 1");
  if (opts.samples < 4096) bad.push_back("samples must be at least 4096");
  if (!(opts.log_ceiling > 0.0) || std::isnan(opts.log_ceiling))
    bad.push_back("log ceiling must be positive");
  if (!bad.empty()) throw ValidationFailure("invalid build request", bad);

  Construction c;
  c.spec = spec;
  c.head = head;
  c.rule = rule;
  c.requested_depth = depth;
  c.build_samples = opts.samples;

  double logR = std::log(head.R) + kLn2;  // R_1 = 2R exactly in log form
  BigCount m_acc = bc_exact(head.m);
  BigCount sum_l = bc_exact(0);
  double sum_nl_logR = 0.0;  // sum_{j<=k} n_j l_j ln R_j
  double tail = 0.0;
  const double log_lambda = std::log(head.lambda);

  for (int k = 1; k <= depth; ++k) {
    bool clamped = false;
    const BigCount n = rule_n(rule, logR, k, &clamped);
    if (clamped)
      c.warnings.push_back("n_" + std::to_string(k) +
                           " fell below 8 and was clamped");
    const BigCount l = rule_l(rule, logR);
    if (l.log_value > std::log(logR / kLn2) + 1e-12)
      throw ValidationFailure("l_k exceeds log2 R_k");

    const BigCount nl = bc_mul(n, l);
    const BigCount S_prev = sum_l;
    sum_l = bc_add(sum_l, l);
    const double nl_d = bc_double(nl);

    // C_k = lambda^{m*} (-1)^{S_{k-1}} (1/2)^{S_k} R_k^{n_k l_k}
    //       prod_{j<k} R_j^{-n_j l_j}
    double logC = static_cast<double>(head.m_star) * log_lambda -
                  bc_double(sum_l) * kLn2 + nl_d * logR - sum_nl_logR;
    if (!std::isfinite(logC)) logC = kNaN;
    const int signC =
        bc_is_exact(S_prev) ? ((S_prev.value & 1u) ? -1 : 1) : 0;

    m_acc = bc_add(m_acc, nl);
    sum_nl_logR += nl_d * logR;
    tail += safe_exp(l.log_value + bc_double(n) * std::log(2.0 / 3.0));

    Level lv;
    lv.k = k;
    lv.logR = logR;
    lv.n = n;
    lv.l = l;
    lv.m = m_acc;
    lv.logC = logC;
    lv.signC = signC;
    c.levels.push_back(lv);

    if (k == depth) break;

    // Predict the next radius with the closed-form upper bound before
    // evaluating anything; beyond the ceiling the doubles themselves die.
    const double log_ub = std::log(1.5) +
                          static_cast<double>(head.m_star) * log_lambda +
                          bc_double(m_acc) * (kLn2 + logR) - sum_nl_logR;
    if (!(log_ub <= opts.log_ceiling)) {
      c.capped = true;
      c.warnings.push_back(
          "depth capped after level " + std::to_string(k) +
          ": the next radius would leave the representable log range");
      break;
    }

    const CircleEval ev = [&c, k](double lr, double th) {
      return f_truncated(c, lc_polar_log(lr, th), k).mod_bounds();
    };
    const double circle_log = logR + kLn2;  // |z| = 2 R_k
    const CircleExtremum ex =
        circle_max(ev, circle_log, effective_degree(c, k, circle_log),
                   opts.samples, mode);
    if (!(ex.value_log <= opts.log_ceiling)) {
      c.capped = true;
      c.warnings.push_back("depth capped after level " + std::to_string(k));
      break;
    }
    if (!(ex.value_log > logR))
      throw ConvergenceFailure("radius ladder failed to grow");
    logR = ex.value_log;
  }
  c.tail_sum = tail;
  return c;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

using ojson = nlohmann::ordered_json;

ojson bc_to_json(const BigCount& b) {
  ojson j;
  if (bc_is_exact(b)) {
    j["mode"] = "exact";
    j["value"] = b.value;
  } else {
    j["mode"] = "log";
  }
  j["log"] = hex_from_double(b.log_value);
  return j;
}

BigCount bc_from_json(const ojson& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "exact") {
    BigCount b = bc_exact(j.at("value").get<std::uint64_t>());
    b.log_value = hex_to_double(j.at("log").get<std::string>());
    return b;
  }
  if (mode != "log")
    throw ValidationFailure("unknown BigCount mode '" + mode + "'");
  return bc_log(hex_to_double(j.at("log").get<std::string>()));
}

const char* nkind_name(SequenceRule::NKind k) {
  switch (k) {
    case SequenceRule::NKind::constant: return "constant";
    case SequenceRule::NKind::power: return "power";
    case SequenceRule::NKind::tower: return "tower";
    case SequenceRule::NKind::logpower: return "logpower";
  }
  return "constant";
}

SequenceRule::NKind nkind_from(const std::string& s) {
  if (s == "constant") return SequenceRule::NKind::constant;
  if (s == "power") return SequenceRule::NKind::power;
  if (s == "tower") return SequenceRule::NKind::tower;
  if (s == "logpower") return SequenceRule::NKind::logpower;
  throw ValidationFailure("unknown n rule '" + s + "'");
}

}  // namespace

std::string construction_to_json(const Construction& c,
                                 const std::string& config_text) {
  ojson j;
  j["format"] = "transcend-construction/1";
  j["config"] = config_text;

  ojson roots = ojson::array();
  for (double r : c.spec.roots) roots.push_back(hex_from_double(r));
  j["spec"] = ojson{{"roots", roots}};

  j["head"] = ojson{{"lambda", hex_from_double(c.head.lambda)},
                    {"N", c.head.N},
                    {"m", c.head.m},
                    {"m_star", c.head.m_star},
                    {"R", hex_from_double(c.head.R)},
                    {"R_star", hex_from_double(c.head.R_star)}};

  j["rule"] = ojson{{"n", nkind_name(c.rule.nkind)},
                    {"ns", hex_from_double(c.rule.ns)},
                    {"nc", c.rule.nc},
                    {"l", c.rule.lkind == SequenceRule::LKind::one
                              ? "one"
                              : "maxlog"}};

  j["depth"] = c.requested_depth;
  j["capped"] = c.capped;
  j["build_samples"] = c.build_samples;
  j["tail_sum"] = hex_from_double(c.tail_sum);
  j["warnings"] = c.warnings;

  ojson lvls = ojson::array();
  for (const Level& L : c.levels) {
    ojson e;
    e["k"] = L.k;
    e["logR"] = hex_from_double(L.logR);
    e["n"] = bc_to_json(L.n);
    e["l"] = bc_to_json(L.l);
    e["m"] = bc_to_json(L.m);
    e["logC"] = std::isnan(L.logC) ? ojson(nullptr)
                                   : ojson(hex_from_double(L.logC));
    e["signC"] = L.signC;
    lvls.push_back(e);
  }
  j["levels"] = lvls;
  return j.dump(2) + "\n";
}

Construction construction_from_json(const std::string& json_text,
                                    std::string* config_text) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationFailure(std::string("construction JSON parse error: ") +
                            e.what());
  }
  if (j.value("format", "") != std::string("transcend-construction/1"))
    throw ValidationFailure("unrecognized construction format tag");
  if (config_text) *config_text = j.value("config", "");

  std::vector<double> roots;
  for (const auto& r : j.at("spec").at("roots"))
    roots.push_back(hex_to_double(r.get<std::string>()));

  Construction c;
  c.spec = make_poly_spec(roots);
  const auto& h = j.at("head");
  c.head = make_head_params(c.spec, hex_to_double(h.at("lambda").get<std::string>()),
                            h.at("N").get<int>());
  c.head.R = hex_to_double(h.at("R").get<std::string>());
  c.head.R_star = hex_to_double(h.at("R_star").get<std::string>());

  const auto& r = j.at("rule");
  c.rule.nkind = nkind_from(r.at("n").get<std::string>());
  c.rule.ns = hex_to_double(r.at("ns").get<std::string>());
  c.rule.nc = r.at("nc").get<std::uint64_t>();
  const std::string lk = r.at("l").get<std::string>();
  if (lk == "one") {
    c.rule.lkind = SequenceRule::LKind::one;
  } else if (lk == "maxlog") {
    c.rule.lkind = SequenceRule::LKind::maxlog;
  } else {
    throw ValidationFailure("unknown l rule '" + lk + "'");
  }

  c.requested_depth = j.at("depth").get<int>();
  c.capped = j.at("capped").get<bool>();
  c.build_samples = j.at("build_samples").get<long>();
  c.tail_sum = hex_to_double(j.at("tail_sum").get<std::string>());
  for (const auto& w : j.at("warnings"))
    c.warnings.push_back(w.get<std::string>());

  for (const auto& e : j.at("levels")) {
    Level L;
    L.k = e.at("k").get<int>();
    L.logR = hex_to_double(e.at("logR").get<std::string>());
    L.n = bc_from_json(e.at("n"));
    L.l = bc_from_json(e.at("l"));
    L.m = bc_from_json(e.at("m"));
    L.logC = e.at("logC").is_null()
                 ? kNaN
                 : hex_to_double(e.at("logC").get<std::string>());
    L.signC = e.at("signC").get<int>();
    c.levels.push_back(L);
  }
  return c;
}

}  // namespace transcend

#pragma once

// One-dimensional root isolation and extremum refinement helpers.

#include <cmath>
#include <utility>

namespace crosskit::numeric {

/// Golden-section search for the maximum of f on [lo, hi].
/// Returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi,
                                     double width = 1e-12, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > width; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);
  double fbest = f(best);
  // The endpoints can win on monotone stretches.
  if (const double fl = f(lo); fl > fbest) {
    best = lo;
    fbest = fl;
  }
  if (const double fh = f(hi); fh > fbest) {
    best = hi;
    fbest = fh;
  }
  return {best, fbest};
}

template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi,
                                     double width = 1e-12, int max_iter = 200) {
  auto [x, v] = golden_max([&](double t) { return -f(t); }, lo, hi, width, max_iter);
  return {x, -v};
}

/// Maximizes a smooth function on [lo, hi] by a coarse scan followed by
/// golden-section refinement around the best sample.
template <class F>
std::pair<double, double> scan_max(F&& f, double lo, double hi, int samples = 24,
                                   double width = 1e-12) {
  if (hi <= lo) return {lo, f(lo)};
  double best_t = lo, best_v = f(lo);
  const double step = (hi - lo) / samples;
  for (int i = 1; i <= samples; ++i) {
    const double t = (i == samples) ? hi : lo + i * step;
    const double v = f(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  const double a = std::max(lo, best_t - step);
  const double b = std::min(hi, best_t + step);
  auto refined = golden_max(f, a, b, width);
  if (refined.second >= best_v) return refined;
  return {best_t, best_v};
}

/// Bisection for a sign change of f between lo and hi, assuming
/// f(lo) and f(hi) have opposite signs.
template <class F>
double bisect(F&& f, double lo, double hi, double width = 1e-12, int max_iter = 200) {
  double flo = f(lo);
  for (int i = 0; i < max_iter && std::abs(hi - lo) > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Bisection on a boolean predicate: pred(inside) is true, pred(outside) is
/// false; returns the boundary point.
template <class P>
double bisect_predicate(P&& pred, double inside, double outside, double width = 1e-12,
                        int max_iter = 200) {
  for (int i = 0; i < max_iter && std::abs(outside - inside) > width; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (pred(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return 0.5 * (inside + outside);
}

}  // namespace crosskit::numeric

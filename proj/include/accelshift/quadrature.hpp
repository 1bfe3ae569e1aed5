#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature (QUADPACK QAG strategy)
// over a sequence of user breakpoints.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace accelshift::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int subintervals = 0;
  bool converged = false;
};

struct Segment {
  double lo, hi;
  double value, error;
  double resabs;  // integral of |f|, used for the roundoff floor
};

/// Single 21-point Kronrod panel with the QUADPACK error heuristic.
template <class F>
Segment gk21(F& f, double lo, double hi) {
  static constexpr std::array<double, 5> wg = {
      0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
      0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
      0.295524224714752870173892994651338};
  static constexpr std::array<double, 11> xgk = {
      0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
      0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
      0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
      0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
      0.294392862701460198131126603103866, 0.14887433898163121088482600112972,
      0.0};
  static constexpr std::array<double, 11> wgk = {
      0.011694638867371874278064396062192, 0.03255816230796472747881897245939,
      0.05475589657435199603138130024458,  0.07503967481091995276704314091619,
      0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
      0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
      0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
      0.149445554002916905664936468389821};

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resk = wgk[10] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * xgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double s = f1[j] + f2[j];
    resk += wgk[j] * s;
    resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += wg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {lo, hi, resk, err, resabs};
}

/// Integrates f over [breaks.front(), breaks.back()], seeding one panel per
/// breakpoint interval and bisecting the worst panel until the summed error
/// estimate drops below max(abs_tol, rel_tol * |value|). Panels whose error
/// sits at the roundoff floor are not split further.
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Options& opt) {
  auto cmp = [](const Segment& a, const Segment& b) { return a.error < b.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> heap(cmp);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  double value = 0.0, error = 0.0, floor_error = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Segment s = gk21(f, breaks[i], breaks[i + 1]);
    value += s.value;
    error += s.error;
    heap.push(s);
    ++count;
  }

  auto done = [&] { return error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };

  while (!done() && !heap.empty()) {
    if (count >= opt.max_subdivisions) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool at_floor = worst.error <= 50.0 * eps * worst.resabs * 1.0001 ||
                          !(mid > worst.lo && mid < worst.hi);
    if (at_floor) {
      // Cannot be refined further in double precision.
      floor_error += worst.error;
      continue;
    }
    Segment left = gk21(f, worst.lo, mid);
    Segment right = gk21(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  Result r;
  r.value = value;
  r.abs_error = error;
  r.subintervals = count;
  // Panels at the roundoff floor cannot be improved; judge the remainder.
  r.converged = done() || error - floor_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
  return r;
}

template <class F>
Result integrate(F&& f, double lo, double hi, const Options& opt) {
  const std::array<double, 2> b{lo, hi};
  return integrate(std::forward<F>(f), std::span<const double>(b), opt);
}

}  // namespace accelshift::quad

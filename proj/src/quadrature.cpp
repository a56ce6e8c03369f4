#include "spikeslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "spikeslab/errors.hpp"

namespace spikeslab {
namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
constexpr double kK15Nodes[8] = {
    0.0,
    0.20778495500789846760,
    0.40584515137739716691,
    0.58608723546769113029,
    0.74153118559939443986,
    0.86486442335976907279,
    0.94910791234275852453,
    0.99145537112081263921,
};
constexpr double kK15Weights[8] = {
    0.20948214108472782801,
    0.20443294007529889241,
    0.19035057806478540991,
    0.16900472663926790283,
    0.14065325971552591875,
    0.10479001032225018384,
    0.06309209262997855329,
    0.02293532201052922496,
};
// Gauss-7 weights for K15 nodes 0, 2, 4, 6.
constexpr double kG7Weights[4] = {
    0.41795918367346938776,
    0.38183005050511894495,
    0.27970539148927666790,
    0.12948496616886969327,
};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  const double f0 = f(c);
  double kronrod = kK15Weights[0] * f0;
  double gauss = kG7Weights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double fl = f(c - h * kK15Nodes[i]);
    const double fr = f(c + h * kK15Nodes[i]);
    kronrod += kK15Weights[i] * (fl + fr);
    if (i % 2 == 0) gauss += kG7Weights[i / 2] * (fl + fr);
  }
  kronrod *= h;
  gauss *= h;
  double err = std::abs(kronrod - gauss);
  // QUADPACK-style sharpening of the raw difference.
  if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
  return {kronrod, err};
}

struct Interval {
  double a, b, integral, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          int max_intervals) {
  if (a == b) return 0.0;
  PanelResult first = gk15(f, a, b);
  if (!std::isfinite(first.integral)) {
    throw numerical_error("integrate_adaptive: non-finite integrand");
  }
  std::priority_queue<Interval> heap;
  heap.push({a, b, first.integral, first.error});
  double total = first.integral;
  double total_err = first.error;
  int used = 1;
  while (total_err > std::max(rel_tol * std::abs(total), abs_tol) &&
         used < max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval no longer splittable at double precision; accept it.
      total_err -= worst.error;
      continue;
    }
    PanelResult left = gk15(f, worst.a, mid);
    PanelResult right = gk15(f, mid, worst.b);
    if (!std::isfinite(left.integral) || !std::isfinite(right.integral)) {
      throw numerical_error("integrate_adaptive: non-finite integrand");
    }
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.integral, left.error});
    heap.push({mid, worst.b, right.integral, right.error});
    ++used;
  }
  if (total_err > std::max(1e-6 * std::abs(total), abs_tol) &&
      total_err > 1e-300) {
    if (used >= max_intervals) {
      throw numerical_error("integrate_adaptive: subdivision budget exhausted");
    }
  }
  return total;
}

double integrate_expanding(const std::function<double(double)>& f,
                           double center, double rel_tol, double tail_rel) {
  double total = integrate_adaptive(f, center - 1.0, center + 1.0, rel_tol);
  double left_edge = center - 1.0;
  double right_edge = center + 1.0;
  double width = 1.0;
  bool left_done = false, right_done = false;
  for (int step = 0; step < 64 && !(left_done && right_done); ++step) {
    width *= 2.0;
    if (!left_done) {
      const double a = center - width;
      const double shell =
          integrate_adaptive(f, a, left_edge, rel_tol,
                             tail_rel * std::abs(total));
      total += shell;
      left_edge = a;
      if (std::abs(shell) <= tail_rel * std::abs(total) && total != 0.0) {
        left_done = true;
      }
    }
    if (!right_done) {
      const double b = center + width;
      const double shell =
          integrate_adaptive(f, right_edge, b, rel_tol,
                             tail_rel * std::abs(total));
      total += shell;
      right_edge = b;
      if (std::abs(shell) <= tail_rel * std::abs(total) && total != 0.0) {
        right_done = true;
      }
    }
  }
  if (!(left_done && right_done)) {
    throw numerical_error("integrate_expanding: tails failed to decay");
  }
  return total;
}

}  // namespace spikeslab

#pragma once

#include <functional>

namespace spikeslab {

// One-dimensional deterministic integration utilities.

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
// Subdivides until the error estimate is below max(rel_tol * |integral|,
// abs_tol) or the subdivision budget is exhausted; throws numerical_error
// on breakdown (non-finite integrand values or exhausted budget with a
// large error estimate).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          double abs_tol = 0.0, int max_intervals = 4000);

// Integral of f over the whole real line for an integrand that decays in
// both directions.  Starts from [center-1, center+1] and doubles the
// bracket outward until the outermost shell contributes less than
// tail_rel of the accumulated integral on each side.
double integrate_expanding(const std::function<double(double)>& f,
                           double center, double rel_tol = 1e-10,
                           double tail_rel = 1e-12);

}  // namespace spikeslab

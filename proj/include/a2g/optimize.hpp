#pragma once

// Derivative-free minimization (Nelder-Mead simplex). Deterministic: no
// randomness, fixed initial simplex.

#include <functional>
#include <vector>

namespace a2g::opt {

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double f_tolerance = 1e-14;  // spread of simplex values
  double x_tolerance = 1e-10;  // simplex diameter
  int restarts = 2;            // re-seed the simplex at the best point
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           std::vector<double> step, const NelderMeadOptions& options = {});

}  // namespace a2g::opt

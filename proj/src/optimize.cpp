#include "a2g/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "a2g/errors.hpp"

namespace a2g::opt {

namespace {

MinimizeResult run_simplex(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
                           const std::vector<double>& step, const NelderMeadOptions& o, int budget) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? HUGE_VAL : v;
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double diam = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d) diam = std::max(diam, std::abs(pts[i][d] - pts[best][d]));
    if (std::abs(vals[worst] - vals[best]) <= o.f_tolerance * (1.0 + std::abs(vals[best])) && diam <= o.x_tolerance)
      break;
    if (diam <= o.x_tolerance * 1e-3) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      return x;
    };

    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return MinimizeResult{pts[static_cast<std::size_t>(it - vals.begin())], *it, evals};
}

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           std::vector<double> step, const NelderMeadOptions& options) {
  if (x0.empty() || step.size() != x0.size()) throw DomainError("nelder_mead: dimension mismatch");
  MinimizeResult best = run_simplex(f, x0, step, options, options.max_evaluations);
  int total = best.evaluations;
  for (int r = 0; r < options.restarts && total < options.max_evaluations; ++r) {
    for (auto& s : step) s *= 0.1;
    auto next = run_simplex(f, best.x, step, options, options.max_evaluations - total);
    total += next.evaluations;
    if (next.value <= best.value) best = std::move(next);
  }
  best.evaluations = total;
  return best;
}

}  // namespace a2g::opt

#include "selmer/stats.hpp"

#include <algorithm>
#include <cmath>

#include "selmer/error.hpp"

namespace selmer {

std::vector<std::int64_t> default_checkpoints(std::int64_t bound, std::int64_t step) {
  if (step < 1 || bound < step) throw Error(ErrorKind::config, "bound must be at least the checkpoint step");
  std::vector<std::int64_t> out;
  for (std::int64_t m = step; m <= bound; m += step) out.push_back(m);
  return out;
}

namespace {

void check_checkpoints(const std::vector<std::int64_t>& checkpoints, std::int64_t covered_bound) {
  if (checkpoints.empty()) throw Error(ErrorKind::range, "no checkpoints");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorKind::range, "checkpoints must ascend");
  }
  if (checkpoints.back() > covered_bound) {
    throw Error(ErrorKind::range, "checkpoint " + std::to_string(checkpoints.back()) +
                                      " exceeds surveyed bound " + std::to_string(covered_bound));
  }
}

}  // namespace

std::map<std::int64_t, RatioSeries> tally_all(const std::vector<TwistResult>& results,
                                              const std::vector<std::int64_t>& checkpoints,
                                              std::int64_t covered_bound) {
  check_checkpoints(checkpoints, covered_bound);
  const std::size_t nc = checkpoints.size();
  std::map<std::int64_t, std::vector<std::int64_t>> s;
  std::vector<std::int64_t> x(nc, 0);
  // Count per checkpoint slice, then accumulate.
  std::size_t c = 0;
  for (const auto& r : results) {
    while (c < nc && r.n > checkpoints[c]) ++c;
    if (c == nc) break;
    ++x[c];
    auto& v = s[r.k];
    if (v.empty()) v.assign(nc, 0);
    ++v[c];
  }
  for (std::size_t i = 1; i < nc; ++i) x[i] += x[i - 1];
  std::map<std::int64_t, RatioSeries> out;
  for (auto& [k, v] : s) {
    for (std::size_t i = 1; i < nc; ++i) v[i] += v[i - 1];
    out[k] = RatioSeries{checkpoints, x, v, {}, 0, k};
  }
  return out;
}

RatioSeries tally(const std::vector<TwistResult>& results, std::int64_t k,
                  const std::vector<std::int64_t>& checkpoints, std::int64_t covered_bound) {
  auto all = tally_all(results, checkpoints, covered_bound);
  if (auto it = all.find(k); it != all.end()) return it->second;
  RatioSeries empty{checkpoints, {}, std::vector<std::int64_t>(checkpoints.size(), 0), {}, 0, k};
  // x does not depend on k; take it from any bucket or count directly.
  if (!all.empty()) {
    empty.x = all.begin()->second.x;
  } else {
    empty.x.assign(checkpoints.size(), 0);
  }
  return empty;
}

double sigma(std::int64_t x, double alpha, double epsilon, SigmaForm form) {
  if (x < 16) throw Error(ErrorKind::domain, "sigma needs x >= 16");
  const double xd = static_cast<double>(x);
  if (form == SigmaForm::published) {
    const double l = std::log10(xd);
    return alpha * std::pow(std::log10(l), epsilon) / l;
  }
  const double l = std::log(xd);
  return alpha * std::pow(std::log(l), 1.0 + epsilon) / l;
}

namespace {

// alpha = sum w_i alpha_i / sum w_i with alpha_i = q_i / sigma(x_i; 1, eps).
AlphaFit weighted_alpha(const std::vector<std::int64_t>& x, const std::vector<double>& q,
                        const std::vector<double>& w, const AlphaOptions& options) {
  double num = 0.0, den = 0.0;
  bool any = false;
  std::size_t used = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 16) continue;
    num += w[i] * q[i] / sigma(x[i], 1.0, options.epsilon, options.form);
    den += w[i];
    any = any || q[i] != 0.0;
    ++used;
  }
  if (used < 2) throw Error(ErrorKind::insufficient_data, "fit_alpha needs two checkpoints with x >= 16");
  if (!any) return {0.0, true};
  return {num / den, false};
}

}  // namespace

AlphaFit fit_alpha(const std::vector<std::int64_t>& x, const std::vector<double>& q,
                   const AlphaOptions& options) {
  if (x.size() != q.size()) throw Error(ErrorKind::dimension, "x and q lengths differ");
  std::vector<double> w(x.size(), 1.0);
  if (options.weighting == Weighting::sample_size) {
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = static_cast<double>(x[i]);
  }
  return weighted_alpha(x, q, w, options);
}

AlphaFit fit_alpha(const RatioSeries& series, const AlphaOptions& options) {
  if (options.intervals == Intervals::cumulative) {
    std::vector<double> q;
    for (std::size_t i = 0; i < series.x.size(); ++i) q.push_back(series.ratio(i));
    return fit_alpha(series.x, q, options);
  }
  // Disjoint slices (M_{i-1}, M_i]: ratio and sample size of each slice.
  std::vector<std::int64_t> x;
  std::vector<double> q, w;
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    const std::int64_t dx = series.x[i] - (i ? series.x[i - 1] : 0);
    const std::int64_t ds = series.s[i] - (i ? series.s[i - 1] : 0);
    if (dx <= 0) continue;
    x.push_back(series.x[i]);
    q.push_back(static_cast<double>(ds) / static_cast<double>(dx));
    w.push_back(options.weighting == Weighting::sample_size ? static_cast<double>(dx) : 1.0);
  }
  return weighted_alpha(x, q, w, options);
}

FitResult fit_epsilon(const RatioSeries& series, double alpha, SigmaForm form, double grid_step) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::domain, "fit_epsilon needs alpha > 0");
  if (!(grid_step > 0.0)) throw Error(ErrorKind::config, "epsilon grid step must be positive");
  FitResult best{alpha, 0.0, 0.0, false};
  if (std::all_of(series.s.begin(), series.s.end(), [](std::int64_t v) { return v == 0; })) {
    best.degenerate = true;
  }
  const auto rms = [&](double eps) {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      if (series.x[i] < 16) continue;
      const double d = series.ratio(i) - sigma(series.x[i], alpha, eps, form);
      acc += d * d;
      ++used;
    }
    if (used == 0) throw Error(ErrorKind::insufficient_data, "no checkpoint with x >= 16");
    return std::sqrt(acc / static_cast<double>(used));
  };
  const auto steps = static_cast<int>(std::floor(0.02 / grid_step + 1e-9));
  best.residual = rms(0.0);
  if (best.degenerate) return best;
  // Visit 0, +h, -h, +2h, ... so equal residuals keep the value nearest zero.
  for (int i = 1; i <= steps; ++i) {
    for (int sgn : {1, -1}) {
      const double eps = sgn * i * grid_step;
      const double r = rms(eps);
      if (r < best.residual * (1.0 - 1e-12)) {
        best.residual = r;
        best.epsilon = eps;
      }
    }
  }
  return best;
}

QuotientFit quotient_fit(const RatioSeries& a, const RatioSeries& b) {
  if (a.checkpoints != b.checkpoints) throw Error(ErrorKind::dimension, "series checkpoints differ");
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    if (a.x[i] < 16 || a.s[i] == 0 || b.s[i] == 0) continue;
    X.push_back(std::log(std::log(std::log(static_cast<double>(a.x[i])))));
    Y.push_back(std::log(a.ratio(i) / b.ratio(i)));
  }
  if (X.size() < 2) throw Error(ErrorKind::insufficient_data, "quotient fit needs two usable checkpoints");
  const double n = static_cast<double>(X.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  if (sxx <= 0) throw Error(ErrorKind::insufficient_data, "checkpoints do not spread in x");
  const double delta = sxy / sxx;
  return {std::exp(my - delta * mx), delta};
}

}  // namespace selmer

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "selmer/waldspurger.hpp"

namespace selmer {

struct RatioSeries {
  std::vector<std::int64_t> checkpoints;
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> s;
  std::string curve;
  std::int64_t n0 = 0;
  std::int64_t k = 0;

  double ratio(std::size_t i) const {
    return x[i] == 0 ? 0.0 : static_cast<double>(s[i]) / static_cast<double>(x[i]);
  }
};

struct FitResult {
  double alpha = 0.0;
  double epsilon = 0.0;
  double residual = 0.0;
  bool degenerate = false;
};

// Default grid M_i = step * i for i = 1..floor(bound / step).
std::vector<std::int64_t> default_checkpoints(std::int64_t bound, std::int64_t step = 50000);

// results must be ascending in n and cover every class member <= the last checkpoint.
RatioSeries tally(const std::vector<TwistResult>& results, std::int64_t k,
                  const std::vector<std::int64_t>& checkpoints, std::int64_t covered_bound);

// Every k occurring in results (0 included), each with its series.
std::map<std::int64_t, RatioSeries> tally_all(const std::vector<TwistResult>& results,
                                              const std::vector<std::int64_t>& checkpoints,
                                              std::int64_t covered_bound);

enum class SigmaForm {
  natural,   // alpha (ln ln x)^(1+eps) / ln x
  published  // alpha (log10 log10 x)^eps / log10 x, the form behind the printed tables
};

double sigma(std::int64_t x, double alpha, double epsilon, SigmaForm form = SigmaForm::natural);

enum class Weighting { sample_size, uniform };
enum class Intervals { cumulative, disjoint };

struct AlphaOptions {
  Weighting weighting = Weighting::sample_size;
  Intervals intervals = Intervals::cumulative;
  SigmaForm form = SigmaForm::natural;
  double epsilon = 0.0;  // exponent used when normalizing each interval's ratio
};

struct AlphaFit {
  double alpha = 0.0;
  bool degenerate = false;
};

AlphaFit fit_alpha(const RatioSeries& series, const AlphaOptions& options = {});
// Same fit on real-valued cumulative ratios q_i at sample sizes x_i.
AlphaFit fit_alpha(const std::vector<std::int64_t>& x, const std::vector<double>& q,
                   const AlphaOptions& options = {});

FitResult fit_epsilon(const RatioSeries& series, double alpha,
                      SigmaForm form = SigmaForm::natural, double grid_step = 0.001);

struct QuotientFit {
  double c = 0.0;
  double delta = 0.0;
};
QuotientFit quotient_fit(const RatioSeries& a, const RatioSeries& b);

}  // namespace selmer

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "selmer/stats.hpp"
#include "selmer/survey.hpp"

namespace selmer {

inline constexpr int kSchemaVersion = 1;

// Twelve significant digits, '.' decimal separator, locale independent.
std::string format_real(double v);

void write_expand_csv(std::ostream& out, const PowerSeries& F, const SieveTables& sieve,
                      std::int64_t bound);
void write_class_csv(std::ostream& out, const ClassSurvey& cs);

struct FitConfig {
  std::int64_t checkpoint_step = 50000;
  double epsilon_grid_step = 0.001;
  AlphaOptions alpha;  // sigma form, weights, intervals, epsilon used for alpha
};

struct CellFit {
  std::int64_t k = 0;
  RatioSeries series;
  AlphaFit alpha;
  FitResult fit;
};

// Fits every k that occurs in the class (k = 0 included).
std::vector<CellFit> fit_class(const CurveSurvey& survey, const ClassSurvey& cs,
                               const FitConfig& config);

nlohmann::ordered_json summary_json(const CurveSurvey& survey, const FitConfig& config);

// Whitespace columns x, ratio, sigma; header line starts with '#'.
void write_plot_data(std::ostream& out, const RatioSeries& series, double alpha, double epsilon,
                     SigmaForm form);

}  // namespace selmer

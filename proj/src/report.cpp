#include "selmer/report.hpp"

#include <cstdio>
#include <ostream>

namespace selmer {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_expand_csv(std::ostream& out, const PowerSeries& F, const SieveTables& sieve,
                      std::int64_t bound) {
  out << "n,a_n\n";
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (sieve.squarefree(n)) out << n << ',' << F[n] << '\n';
  }
}

void write_class_csv(std::ostream& out, const ClassSurvey& cs) {
  out << "n,a_n,k,selmer,L\n";
  for (const auto& r : cs.results) {
    out << r.n << ',' << r.a_n << ',' << r.k << ',';
    if (r.status == RankStatus::rank_zero) out << r.selmer << ',' << format_real(r.l_value);
    else out << ',';
    out << '\n';
  }
}

std::vector<CellFit> fit_class(const CurveSurvey& survey, const ClassSurvey& cs,
                               const FitConfig& config) {
  const auto checkpoints = default_checkpoints(survey.bound, config.checkpoint_step);
  std::vector<CellFit> out;
  for (auto& [k, series] : tally_all(cs.results, checkpoints, survey.bound)) {
    CellFit cell;
    cell.k = k;
    cell.series = series;
    cell.series.curve = survey.label;
    cell.series.n0 = cs.baseline.n0;
    if (checkpoints.size() >= 2) {
      cell.alpha = fit_alpha(cell.series, config.alpha);
      if (cell.alpha.alpha > 0) {
        cell.fit = fit_epsilon(cell.series, cell.alpha.alpha, config.alpha.form, config.epsilon_grid_step);
      }
      cell.fit.alpha = cell.alpha.alpha;
      cell.fit.degenerate = cell.alpha.degenerate;
    } else {
      cell.fit.degenerate = true;
    }
    out.push_back(std::move(cell));
  }
  return out;
}

namespace {

const char* form_name(SigmaForm f) { return f == SigmaForm::natural ? "natural" : "published"; }

}  // namespace

nlohmann::ordered_json summary_json(const CurveSurvey& survey, const FitConfig& config) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["curve"] = survey.label;
  j["bound"] = survey.bound;
  j["family_torsion"] = survey.family_torsion;
  j["checkpoint_step"] = config.checkpoint_step;
  j["sigma_form"] = form_name(config.alpha.form);
  j["alpha_epsilon"] = config.alpha.epsilon;
  j["weights"] = config.alpha.weighting == Weighting::sample_size ? "sample_size" : "uniform";
  j["intervals"] = config.alpha.intervals == Intervals::cumulative ? "cumulative" : "disjoint";
  j["class_csv_columns"] = {"n", "a_n", "k", "selmer", "L"};
  auto& classes = j["classes"] = nlohmann::ordered_json::array();
  for (const auto& cs : survey.classes) {
    nlohmann::ordered_json c;
    c["n0"] = cs.baseline.n0;
    c["n0_effective"] = cs.baseline.n0_effective;
    c["a_n0"] = cs.baseline.a_n0;
    c["selmer_n0"] = cs.baseline.selmer_n0;
    c["l_n0"] = cs.baseline.l_n0;
    c["members"] = cs.results.size();
    c["cassels_violations"] = cs.cassels_violations;
    auto& cells = c["fits"] = nlohmann::ordered_json::array();
    for (const auto& cell : fit_class(survey, cs, config)) {
      nlohmann::ordered_json f;
      f["k"] = cell.k;
      f["alpha"] = cell.fit.alpha;
      f["epsilon"] = cell.fit.epsilon;
      f["residual"] = cell.fit.residual;
      f["degenerate"] = cell.fit.degenerate;
      f["checkpoints"] = cell.series.checkpoints;
      f["x"] = cell.series.x;
      f["s"] = cell.series.s;
      cells.push_back(std::move(f));
    }
    classes.push_back(std::move(c));
  }
  return j;
}

void write_plot_data(std::ostream& out, const RatioSeries& series, double alpha, double epsilon,
                     SigmaForm form) {
  out << "# x ratio sigma\n";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    if (series.x[i] < 16) continue;
    out << series.x[i] << ' ' << format_real(series.ratio(i)) << ' '
        << format_real(sigma(series.x[i], alpha, epsilon, form)) << '\n';
  }
}

}  // namespace selmer

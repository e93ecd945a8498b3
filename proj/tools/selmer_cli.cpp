#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "selmer/bsd_oracle.hpp"
#include "selmer/catalog.hpp"
#include "selmer/error.hpp"
#include "selmer/report.hpp"
#include "selmer/sieve.hpp"
#include "selmer/survey.hpp"

namespace fs = std::filesystem;
using namespace selmer;

namespace {

constexpr int kExitOk = 0, kExitConfig = 2, kExitVerify = 3, kExitAbort = 4;

// Everything a command may need; filled from defaults, then the config file, then flags.
struct Settings {
  std::string curve;
  std::int64_t bound = 10'000'000;
  std::vector<std::int64_t> classes;
  std::int64_t checkpoint_step = 50000;
  double epsilon_grid_step = 0.001;
  std::string output_dir = ".";
  std::string threads = "1";
  std::string overrides;
  std::string sigma_form = "natural";
  std::string weights = "sample_size";
  std::string intervals = "cumulative";
  double alpha_epsilon = 0.0;
  std::string tamagawa_rule = "kodaira";
};

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "bad integer '" + item + "' in list");
    }
  }
  return out;
}

void load_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot read config " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto eq = line.find('=');
    auto trim = [](std::string v) {
      v.erase(0, v.find_first_not_of(" \t\r"));
      v.erase(v.find_last_not_of(" \t\r") + 1);
      return v;
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "curve") s.curve = value;
      else if (key == "bound") s.bound = std::stoll(value);
      else if (key == "classes") s.classes = parse_list(value);
      else if (key == "checkpoint_step") s.checkpoint_step = std::stoll(value);
      else if (key == "epsilon_grid_step") s.epsilon_grid_step = std::stod(value);
      else if (key == "output_dir") s.output_dir = value;
      else if (key == "threads") s.threads = value;
      else if (key == "overrides") s.overrides = value;
      else if (key == "sigma_form") s.sigma_form = value;
      else if (key == "weights") s.weights = value;
      else if (key == "intervals") s.intervals = value;
      else if (key == "alpha_epsilon") s.alpha_epsilon = std::stod(value);
      else if (key == "tamagawa_rule") s.tamagawa_rule = value;
      else throw Error(ErrorKind::config, path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::config, path + ":" + std::to_string(lineno) + ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::config, path + ":" + std::to_string(lineno) + ": value out of range");
    }
  }
}

unsigned thread_count(const std::string& t) {
  if (t == "auto") return std::max(1u, std::thread::hardware_concurrency());
  try {
    const long v = std::stol(t);
    if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::config, "threads must be a positive integer or 'auto'");
}

template <class E>
E pick(const std::string& value, const std::map<std::string, E>& names, const char* what) {
  auto it = names.find(value);
  if (it == names.end()) throw Error(ErrorKind::config, std::string("unknown ") + what + " '" + value + "'");
  return it->second;
}

FitConfig fit_config(const Settings& s) {
  FitConfig c;
  c.checkpoint_step = s.checkpoint_step;
  c.epsilon_grid_step = s.epsilon_grid_step;
  if (!(c.epsilon_grid_step > 0.0)) throw Error(ErrorKind::config, "epsilon_grid_step must be positive");
  c.alpha.form = pick<SigmaForm>(s.sigma_form, {{"natural", SigmaForm::natural}, {"published", SigmaForm::published}},
                                 "sigma form");
  c.alpha.weighting = pick<Weighting>(s.weights, {{"sample_size", Weighting::sample_size}, {"uniform", Weighting::uniform}},
                                      "weighting");
  c.alpha.intervals = pick<Intervals>(s.intervals,
                                      {{"cumulative", Intervals::cumulative}, {"disjoint", Intervals::disjoint}},
                                      "interval scheme");
  c.alpha.epsilon = s.alpha_epsilon;
  return c;
}

CurveSpec load_curve(const Settings& s, const std::string& label) {
  if (label.empty()) throw Error(ErrorKind::config, "--curve is required");
  CurveSpec spec = curve(label);
  if (!s.overrides.empty()) spec = apply_override_file(spec, s.overrides);
  return spec;
}

SurveyOptions survey_options(const Settings& s) {
  SurveyOptions o;
  o.bound = s.bound;
  o.classes = s.classes;
  o.threads = thread_count(s.threads);
  o.rule = pick<TamagawaRule>(s.tamagawa_rule,
                              {{"kodaira", TamagawaRule::kodaira}, {"uniform_four", TamagawaRule::uniform_four}},
                              "Tamagawa rule");
  if (o.bound < s.checkpoint_step) throw Error(ErrorKind::config, "bound must be at least the checkpoint step");
  return o;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  return out;
}

// ---- commands ----

int cmd_expand(const Settings& s, const std::string& out_file) {
  const auto spec = load_curve(s, s.curve);
  if (s.bound < 1) throw Error(ErrorKind::config, "bound must be positive");
  const auto F = build_F(spec.recipe, s.bound, thread_count(s.threads));
  const auto sieve = build_sieve(s.bound);
  if (out_file.empty() || out_file == "-") {
    write_expand_csv(std::cout, F, sieve, s.bound);
  } else {
    auto out = open_out(out_file);
    write_expand_csv(out, F, sieve, s.bound);
  }
  return kExitOk;
}

int cmd_survey(const Settings& s) {
  const auto spec = load_curve(s, s.curve);
  const auto opt = survey_options(s);
  const auto cfg = fit_config(s);
  const auto survey = run_survey(spec, opt);
  const fs::path dir = s.output_dir;
  std::int64_t violations = 0;
  for (const auto& cs : survey.classes) {
    auto out = open_out(dir / (spec.label + "_n0_" + std::to_string(cs.baseline.n0) + ".csv"));
    write_class_csv(out, cs);
    violations += cs.cassels_violations;
  }
  {
    auto out = open_out(dir / (spec.label + "_summary.json"));
    out << summary_json(survey, cfg).dump(1) << '\n';
  }
  std::cout << spec.label << ": " << survey.classes.size() << " classes up to " << s.bound
            << ", Cassels violations " << violations << ", output in " << dir.string() << '\n';
  return violations == 0 ? kExitOk : kExitVerify;
}

int cmd_fit(const Settings& s) {
  const auto spec = load_curve(s, s.curve);
  const auto survey = run_survey(spec, survey_options(s));
  const auto cfg = fit_config(s);
  std::cout << "curve\tn0\tk\talpha\tepsilon\tresidual\tdegenerate\n";
  for (const auto& cs : survey.classes) {
    for (const auto& cell : fit_class(survey, cs, cfg)) {
      std::cout << spec.label << '\t' << cs.baseline.n0 << '\t' << cell.k << '\t' << format_real(cell.fit.alpha)
                << '\t' << format_real(cell.fit.epsilon) << '\t' << format_real(cell.fit.residual) << '\t'
                << (cell.fit.degenerate ? "yes" : "no") << '\n';
    }
  }
  return kExitOk;
}

int cmd_plot_data(const Settings& s, std::int64_t n0, std::int64_t k, std::optional<double> alpha,
                  std::optional<double> epsilon, const std::string& out_file) {
  auto cfg_settings = s;
  cfg_settings.classes = {n0};
  const auto spec = load_curve(s, s.curve);
  const auto survey = run_survey(spec, survey_options(cfg_settings));
  const auto cfg = fit_config(s);
  const auto cells = fit_class(survey, survey.classes.front(), cfg);
  RatioSeries series;
  double a = alpha.value_or(0.0), e = epsilon.value_or(0.0);
  for (const auto& c : cells) {
    if (c.k != k) continue;
    series = c.series;
    if (!alpha) a = c.fit.alpha;
    if (!epsilon) e = c.fit.epsilon;
  }
  std::ostringstream text;
  write_plot_data(text, series, a, e, cfg.alpha.form);
  if (out_file.empty() || out_file == "-") {
    std::cout << text.str();
  } else {
    auto out = open_out(out_file);
    out << text.str();
  }
  return kExitOk;
}

int cmd_tables(const Settings& s, std::optional<std::int64_t> n0, std::optional<std::int64_t> k,
               std::vector<std::int64_t> rows, std::optional<double> epsilon) {
  const auto spec = load_curve(s, s.curve);
  const auto survey = run_survey(spec, survey_options(s));
  const auto cfg = fit_config(s);
  std::map<std::int64_t, std::map<std::int64_t, CellFit>> cells;
  std::set<std::int64_t> ks;
  for (const auto& cs : survey.classes) {
    for (auto& c : fit_class(survey, cs, cfg)) {
      if (c.k == 0 || c.k > 361) continue;
      ks.insert(c.k);
      cells[cs.baseline.n0][c.k] = std::move(c);
    }
  }
  if (n0 && k) {
    // Ratio table for one cell: M, s/x, sigma with the fitted alpha.
    const auto it = cells.find(*n0);
    if (it == cells.end() || !it->second.count(*k)) {
      std::cout << spec.label << " n0=" << *n0 << " k=" << *k << ": no twists\n";
      return kExitOk;
    }
    const auto& cell = it->second.at(*k);
    const double eps = epsilon.value_or(cell.fit.epsilon);
    if (rows.empty()) {
      const auto& cp = cell.series.checkpoints;
      for (std::size_t i = 1; i <= 6; ++i) rows.push_back(cp[(cp.size() * i) / 6 - 1]);
    }
    std::cout << spec.label << "  n0 = " << *n0 << "  k = " << *k << "  alpha = " << format_real(cell.fit.alpha)
              << "  eps = " << format_real(eps) << "\n";
    std::cout << std::setw(10) << "M" << " | " << std::setw(9) << "ratio" << " | " << std::setw(9) << "sigma" << '\n';
    for (auto M : rows) {
      const auto& cp = cell.series.checkpoints;
      const auto pos = std::find(cp.begin(), cp.end(), M);
      if (pos == cp.end()) throw Error(ErrorKind::config, "row " + std::to_string(M) + " is not a checkpoint");
      const auto i = static_cast<std::size_t>(pos - cp.begin());
      std::cout << std::setw(10) << M << " | " << std::fixed << std::setprecision(6) << std::setw(9)
                << cell.series.ratio(i) << " | " << std::setw(9)
                << sigma(cell.series.x[i], cell.fit.alpha, eps, cfg.alpha.form) << '\n'
                << std::defaultfloat;
    }
    return kExitOk;
  }
  // Alpha table: one row per class, one column per k.
  std::cout << std::setw(6) << "n0";
  for (auto kk : ks) std::cout << std::setw(10) << kk;
  std::cout << '\n';
  for (const auto& [rep, row] : cells) {
    std::cout << std::setw(6) << rep;
    for (auto kk : ks) {
      auto c = row.find(kk);
      if (c == row.end()) std::cout << std::setw(10) << "-";
      else std::cout << std::setw(10) << std::fixed << std::setprecision(6) << c->second.fit.alpha << std::defaultfloat;
    }
    std::cout << '\n';
  }
  return kExitOk;
}

// ---- verify ----

struct Check {
  std::string suite, curve;
  bool pass = false;
  std::string detail;
};

Check theta_suite(const CurveSpec& spec, std::int64_t bound) {
  const bool ok = build_F(spec.recipe, bound, 2) == naive_F(spec.recipe, bound);
  return {"theta", spec.label, ok, "build_F vs lattice scan, n <= " + std::to_string(bound)};
}

Check baseline_suite(const CurveSpec& spec) {
  std::int64_t top = 0, terms = 0;
  for (const auto& b : spec.baselines) {
    top = std::max(top, b.n0_effective);
    terms = std::max(terms, terms_needed(spec, b.n0_effective));
  }
  const auto F = build_F(spec.recipe, top);
  const auto w = expand_b(spec, terms);
  std::vector<std::string> bad;
  for (const auto& cached : spec.baselines) {
    try {
      const auto fresh = derive_baseline(spec, cached.n0, F, w);
      if (fresh.selmer_n0 != cached.selmer_n0 || fresh.a_n0 != cached.a_n0 ||
          fresh.n0_effective != cached.n0_effective || std::abs(fresh.l_n0 - cached.l_n0) > 1e-9 * cached.l_n0) {
        bad.push_back(std::to_string(cached.n0));
      }
    } catch (const Error& e) {
      bad.push_back(std::to_string(cached.n0) + " (" + e.what() + ")");
    }
  }
  std::string detail = "catalog constants re-derived by the oracle";
  if (!bad.empty()) {
    detail = "classes disagree:";
    for (auto& b : bad) detail += " " + b;
  }
  return {"baselines", spec.label, bad.empty(), detail};
}

Check cassels_suite(const CurveSpec& spec, std::int64_t bound, unsigned threads) {
  SurveyOptions opt;
  opt.bound = bound;
  opt.threads = threads;
  std::int64_t twists = 0, violations = 0;
  try {
    const auto survey = run_survey(spec, opt);
    for (const auto& cs : survey.classes) {
      violations += cs.cassels_violations;
      twists += static_cast<std::int64_t>(cs.results.size());
    }
  } catch (const Error& e) {
    return {"cassels", spec.label, false, e.what()};
  }
  return {"cassels", spec.label, violations == 0,
          std::to_string(violations) + " non-square k among " + std::to_string(twists) + " twists, n <= " +
              std::to_string(bound)};
}

Check waldspurger_suite(const CurveSpec& spec, std::int64_t limit, int pairs_per_class) {
  const auto F = build_F(spec.recipe, limit);
  const auto sieve = build_sieve(limit);
  std::vector<std::pair<const ClassBaseline*, std::vector<std::int64_t>>> plan;
  std::int64_t terms = 0;
  for (const auto& b : spec.baselines) {
    std::vector<std::int64_t> ns;
    for (auto n : class_members(sieve, b.n0, spec.table_modulus, limit)) {
      if (n == b.n0_effective || F[n] == 0) continue;
      ns.push_back(n);
      terms = std::max(terms, terms_needed(spec, n));
      if (static_cast<int>(ns.size()) == pairs_per_class) break;
    }
    terms = std::max(terms, terms_needed(spec, b.n0_effective));
    plan.emplace_back(&b, std::move(ns));
  }
  const auto w = expand_b(spec, terms);
  double worst = 0.0;
  int short_classes = 0, total = 0;
  for (const auto& [b, ns] : plan) {
    if (static_cast<int>(ns.size()) < pairs_per_class) ++short_classes;
    const double l0 = twisted_l1(spec, b->n0_effective, w, w.bound).l1;
    const double a0 = static_cast<double>(F[b->n0_effective]);
    for (auto n : ns) {
      const double ln = twisted_l1(spec, n, w, w.bound).l1;
      const double an = static_cast<double>(F[n]);
      const double lhs = a0 * a0 * std::sqrt(static_cast<double>(n)) * ln;
      const double rhs = an * an * std::sqrt(static_cast<double>(b->n0_effective)) * l0;
      worst = std::max(worst, std::abs(lhs - rhs) / lhs);
      ++total;
    }
  }
  std::ostringstream d;
  d << total << " pairs, max relative defect " << std::scientific << std::setprecision(3) << worst;
  if (short_classes) d << ", " << short_classes << " classes below " << pairs_per_class << " pairs";
  return {"waldspurger", spec.label, worst < 1e-5 && short_classes == 0, d.str()};
}

Check worked_example_suite(unsigned threads) {
  const auto& spec = curve("11a1");
  const std::int64_t n = 8090677;
  const double reference = 2.10072023061090418;
  const auto F = build_F(spec.recipe, n, threads);
  const auto& b = baseline(spec, 1);
  const double propagated = propagate_l(n, F[n], b);
  const auto w = expand_b(spec, l1_terms(spec, n, 1e-6));
  const auto direct = twisted_l1_assuming_sign(spec, n, w, 1e-6);
  const double d1 = std::abs(propagated - reference) / reference, d2 = std::abs(direct.l1 - propagated) / propagated;
  std::ostringstream d;
  d << std::setprecision(15) << "a_n = " << F[n] << ", propagated " << propagated << ", direct " << direct.l1
    << " (" << direct.terms_used << " terms)";
  return {"worked_example", spec.label, d1 < 1e-4 && d2 < 1e-4, d.str()};
}

int cmd_verify(const Settings& s, const std::string& depth) {
  if (depth != "quick" && depth != "extended") throw Error(ErrorKind::config, "depth must be quick or extended");
  const bool extended = depth == "extended";
  const unsigned threads = thread_count(s.threads);
  std::vector<std::string> labels;
  if (s.curve.empty() || s.curve == "all") labels = catalog_labels();
  else labels = {s.curve};

  std::vector<Check> checks;
  const auto record = [&](Check c) {
    nlohmann::ordered_json j;
    j["suite"] = c.suite;
    j["curve"] = c.curve;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    std::cout << j.dump() << std::endl;
    checks.push_back(std::move(c));
  };
  for (const auto& label : labels) {
    const auto spec = load_curve(s, label);
    record(theta_suite(spec, 10000));
    record(baseline_suite(spec));
    record(cassels_suite(spec, extended ? 1'000'000 : 100'000, threads));
    record(waldspurger_suite(spec, 20000, 20));
  }
  if (extended && std::find(labels.begin(), labels.end(), "11a1") != labels.end()) {
    record(worked_example_suite(threads));
  }
  nlohmann::ordered_json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["depth"] = depth;
  summary["checks"] = checks.size();
  auto& failures = summary["failures"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    if (!c.pass) failures.push_back(c.suite + ":" + c.curve);
  }
  std::cout << summary.dump() << std::endl;
  return failures.empty() ? kExitOk : kExitVerify;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::integrality:
    case ErrorKind::normalization:
      return kExitAbort;
    case ErrorKind::config:
    case ErrorKind::io:
    case ErrorKind::not_in_catalog:
    case ErrorKind::invalid_class:
      return kExitConfig;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selmer group orders in quadratic twist families"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings cli;
  std::string config_path;
  auto* o_config = app.add_option("--config", config_path, "Flat key = value file; flags override it");
  auto* o_curve = app.add_option("--curve", cli.curve, "Curve label (11a1, 14a1, 17a1, 20a1, 34a1)");
  auto* o_bound = app.add_option("--bound", cli.bound, "Upper bound M")->check(CLI::PositiveNumber);
  std::string classes_text;
  auto* o_classes = app.add_option("--classes", classes_text, "Comma-separated class reps (default all)");
  auto* o_step = app.add_option("--step", cli.checkpoint_step, "Checkpoint spacing")->check(CLI::PositiveNumber);
  auto* o_eps_step = app.add_option("--epsilon-step", cli.epsilon_grid_step, "Epsilon grid step");
  auto* o_out = app.add_option("--out", cli.output_dir, "Output directory (survey) or file");
  auto* o_threads = app.add_option("--threads", cli.threads, "Worker threads or 'auto'");
  auto* o_overrides = app.add_option("--overrides", cli.overrides, "Baseline override file");
  auto* o_form = app.add_option("--sigma-form", cli.sigma_form, "natural | published");
  auto* o_weights = app.add_option("--weights", cli.weights, "sample_size | uniform");
  auto* o_intervals = app.add_option("--intervals", cli.intervals, "cumulative | disjoint");
  auto* o_alpha_eps = app.add_option("--alpha-epsilon", cli.alpha_epsilon, "Epsilon inside the alpha_i quotients");
  auto* o_rule = app.add_option("--tamagawa-rule", cli.tamagawa_rule, "kodaira | uniform_four");

  auto* expand = app.add_subcommand("expand", "Write n,a_n for squarefree n <= bound");
  auto* survey = app.add_subcommand("survey", "Per-class CSVs and a JSON summary");
  auto* fit = app.add_subcommand("fit", "Print alpha and epsilon per class and k");
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  auto* plot = app.add_subcommand("plot-data", "Three columns x, ratio, sigma for one cell");
  auto* tables = app.add_subcommand("tables", "Text tables of alpha, or ratios for one cell");

  std::string depth = "quick";
  verify->add_option("--depth", depth, "quick | extended");
  std::int64_t n0 = 0, k = 0;
  double alpha = 0, epsilon = 0;
  auto* p_n0 = plot->add_option("--n0", n0, "Class rep")->required();
  plot->add_option("--k", k, "Selmer quotient k")->required();
  auto* p_alpha = plot->add_option("--alpha", alpha, "Alpha for the sigma column (default fitted)");
  auto* p_eps = plot->add_option("--epsilon", epsilon, "Epsilon for the sigma column (default fitted)");
  (void)p_n0;
  std::int64_t t_n0 = 0, t_k = 0;
  std::string rows_text;
  double t_eps = 0;
  auto* t_n0_opt = tables->add_option("--n0", t_n0, "Class rep for a ratio table");
  auto* t_k_opt = tables->add_option("--k", t_k, "k for a ratio table");
  tables->add_option("--rows", rows_text, "Comma-separated checkpoints for the ratio table");
  auto* t_eps_opt = tables->add_option("--epsilon", t_eps, "Epsilon for the sigma column (default fitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    Settings s;
    if (o_config->count()) load_config(s, config_path);
    if (o_curve->count()) s.curve = cli.curve;
    if (o_bound->count()) s.bound = cli.bound;
    if (o_classes->count()) s.classes = parse_list(classes_text);
    if (o_step->count()) s.checkpoint_step = cli.checkpoint_step;
    if (o_eps_step->count()) s.epsilon_grid_step = cli.epsilon_grid_step;
    if (o_out->count()) s.output_dir = cli.output_dir;
    if (o_threads->count()) s.threads = cli.threads;
    if (o_overrides->count()) s.overrides = cli.overrides;
    if (o_form->count()) s.sigma_form = cli.sigma_form;
    if (o_weights->count()) s.weights = cli.weights;
    if (o_intervals->count()) s.intervals = cli.intervals;
    if (o_alpha_eps->count()) s.alpha_epsilon = cli.alpha_epsilon;
    if (o_rule->count()) s.tamagawa_rule = cli.tamagawa_rule;

    if (*expand) return cmd_expand(s, o_out->count() ? cli.output_dir : "-");
    if (*survey) return cmd_survey(s);
    if (*fit) return cmd_fit(s);
    if (*verify) return cmd_verify(s, depth);
    if (*plot) {
      return cmd_plot_data(s, n0, k, p_alpha->count() ? std::optional(alpha) : std::nullopt,
                           p_eps->count() ? std::optional(epsilon) : std::nullopt,
                           o_out->count() ? cli.output_dir : "-");
    }
    if (*tables) {
      return cmd_tables(s, t_n0_opt->count() ? std::optional(t_n0) : std::nullopt,
                        t_k_opt->count() ? std::optional(t_k) : std::nullopt, parse_list(rows_text),
                        t_eps_opt->count() ? std::optional(t_eps) : std::nullopt);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

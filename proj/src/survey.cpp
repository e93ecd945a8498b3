#include "selmer/survey.hpp"

#include <algorithm>
#include <thread>

#include "selmer/arith.hpp"
#include "selmer/error.hpp"

namespace selmer {

SurveyInputs prepare_inputs(const CurveSpec& spec, const SurveyOptions& options) {
  if (options.bound < 1) throw Error(ErrorKind::config, "bound must be positive");
  if (options.scale == 0) throw Error(ErrorKind::config, "scale must be nonzero");
  SurveyInputs in;
  in.F = build_F(spec.recipe, options.bound, options.threads);
  if (options.scale != 1) in.F = series_scale(in.F, options.scale);
  in.sieve = build_sieve(options.bound);
  in.tamagawa = build_tamagawa_table(spec, in.sieve, options.rule);
  return in;
}

namespace {

ClassSurvey survey_one(const CurveSpec& spec, const SurveyInputs& in, std::int64_t n0,
                       const SurveyOptions& options) {
  ClassSurvey cs;
  cs.baseline = baseline(spec, n0);
  auto& b = cs.baseline;
  const auto members = class_members(in.sieve, n0, spec.table_modulus, options.bound);
  const auto where = spec.label + " class " + std::to_string(n0);

  // The effective rep and its coefficient must agree with the F actually in use.
  if (b.n0_effective <= options.bound) {
    for (auto n : members) {
      if (n >= b.n0_effective) break;
      if (in.F[n] != 0) {
        throw Error(ErrorKind::normalization, where + ": a_" + std::to_string(n) +
                                                  " is nonzero below the effective rep");
      }
    }
    if (in.F[b.n0_effective] != b.a_n0 * options.scale) {
      throw Error(ErrorKind::normalization, where + ": catalog a_n0 disagrees with F");
    }
  } else {
    throw Error(ErrorKind::range, where + ": bound below the effective rep");
  }
  b.a_n0 = in.F[b.n0_effective];

  cs.results.resize(members.size());
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t chunk = (members.size() + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  const auto work = [&](unsigned t) {
    try {
      const std::size_t lo = t * chunk, hi = std::min(members.size(), lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        const auto n = members[i];
        cs.results[i] = evaluate_twist(n, in.F[n], b, spec.family_torsion, in.tamagawa);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  // Report the failure at the smallest n, independent of scheduling.
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const Error& err) {
      throw Error(err.kind(), where + ": " + err.detail());
    }
  }
  for (const auto& r : cs.results) {
    if (r.status == RankStatus::rank_zero && !is_perfect_square(r.k)) ++cs.cassels_violations;
  }
  return cs;
}

}  // namespace

CurveSurvey survey_classes(const CurveSpec& spec, const SurveyInputs& inputs,
                           const SurveyOptions& options) {
  CurveSurvey out;
  out.label = spec.label;
  out.bound = options.bound;
  out.family_torsion = spec.family_torsion;
  const auto& reps = options.classes.empty() ? spec.class_reps : options.classes;
  for (auto n0 : reps) {
    if (std::find(spec.class_reps.begin(), spec.class_reps.end(), n0) == spec.class_reps.end()) {
      throw Error(ErrorKind::config, spec.label + " has no class " + std::to_string(n0));
    }
    out.classes.push_back(survey_one(spec, inputs, n0, options));
  }
  return out;
}

CurveSurvey run_survey(const CurveSpec& spec, const SurveyOptions& options) {
  return survey_classes(spec, prepare_inputs(spec, options), options);
}

}  // namespace selmer

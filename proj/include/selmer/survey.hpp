#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selmer/catalog.hpp"
#include "selmer/qseries.hpp"
#include "selmer/sieve.hpp"
#include "selmer/waldspurger.hpp"

namespace selmer {

struct SurveyOptions {
  std::int64_t bound = 10'000'000;
  std::vector<std::int64_t> classes;  // empty means every class rep
  unsigned threads = 1;
  TamagawaRule rule = TamagawaRule::kodaira;
  std::int64_t scale = 1;  // multiplies F; the outputs must not depend on it
};

struct ClassSurvey {
  ClassBaseline baseline;
  std::vector<TwistResult> results;  // every squarefree class member <= bound, ascending
  std::int64_t cassels_violations = 0;
};

struct CurveSurvey {
  std::string label;
  std::int64_t bound = 0;
  int family_torsion = 1;
  std::vector<ClassSurvey> classes;
};

// Shared precomputation for one curve and bound.
struct SurveyInputs {
  PowerSeries F;
  SieveTables sieve;
  TamagawaTable tamagawa;
};
SurveyInputs prepare_inputs(const CurveSpec& spec, const SurveyOptions& options);

CurveSurvey survey_classes(const CurveSpec& spec, const SurveyInputs& inputs,
                           const SurveyOptions& options);

CurveSurvey run_survey(const CurveSpec& spec, const SurveyOptions& options);

}  // namespace selmer

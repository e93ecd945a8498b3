#include <doctest.h>

#include <sstream>

#include "selmer/catalog.hpp"
#include "selmer/report.hpp"
#include "selmer/survey.hpp"
#include "support.hpp"

using namespace selmer;

namespace {

std::string class_csv(const CurveSurvey& s) {
  std::ostringstream out;
  for (const auto& cs : s.classes) write_class_csv(out, cs);
  return out.str();
}

}  // namespace

TEST_CASE("expand csv for 11a1") {
  const auto& spec = curve("11a1");
  const auto F = build_F(spec.recipe, 3);
  const auto sieve = build_sieve(3);
  std::ostringstream out;
  write_expand_csv(out, F, sieve, 3);
  CHECK(out.str() == "n,a_n\n1,2\n2,0\n3,-2\n");
}

TEST_CASE("class csv layout") {
  SurveyOptions opt;
  opt.bound = 200;
  opt.classes = {3};
  const auto s = run_survey(curve("11a1"), opt);
  const auto text = class_csv(s);
  CHECK(text.rfind("n,a_n,k,selmer,L\n3,-2,1,1,1.68449633298\n47,0,0,,\n91,8,4,4,4.8936170851\n", 0) == 0);
}

TEST_CASE("Cassels squares and zero pattern on every curve") {
  for (const auto& label : catalog_labels()) {
    SurveyOptions opt;
    opt.bound = 100000;
    const auto s = run_survey(curve(label), opt);
    for (const auto& cs : s.classes) {
      CHECK(cs.cassels_violations == 0);
      for (const auto& r : cs.results) {
        CHECK((r.a_n == 0) == (r.k == 0));
        CHECK((r.status == RankStatus::positive_rank) == (r.k == 0));
        if (r.k) CHECK(r.selmer == r.k * s.family_torsion);
      }
    }
  }
}

TEST_CASE("thread count does not change results") {
  for (const std::string label : {"14a1", "34a1"}) {
    SurveyOptions one, four;
    one.bound = four.bound = 200000;
    four.threads = 4;
    CHECK(class_csv(run_survey(curve(label), one)) == class_csv(run_survey(curve(label), four)));
  }
}

TEST_CASE("scaling F by 3 changes no twist result") {
  for (const auto& label : catalog_labels()) {
    SurveyOptions plain, tripled;
    plain.bound = tripled.bound = 50000;
    tripled.scale = 3;
    const auto a = run_survey(curve(label), plain);
    const auto b = run_survey(curve(label), tripled);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t c = 0; c < a.classes.size(); ++c) {
      const auto& ra = a.classes[c].results;
      const auto& rb = b.classes[c].results;
      REQUIRE(ra.size() == rb.size());
      for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].k == rb[i].k);
        CHECK(ra[i].selmer == rb[i].selmer);
        CHECK(rb[i].a_n == 3 * ra[i].a_n);
        CHECK(ra[i].l_value == doctest::Approx(rb[i].l_value).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("c_p = 4 at every p | n breaks integrality") {
  // With the flat rule, twists whose 2-division cubic has no root mod some p | n
  // get a Selmer order that is not an integer.
  SurveyOptions opt;
  opt.bound = 20000;
  opt.rule = TamagawaRule::uniform_four;
  CHECK(error_kind([&] { run_survey(curve("11a1"), opt); }) == ErrorKind::integrality);
}

TEST_CASE("corrupted baselines fail loudly") {
  SurveyOptions opt;
  opt.bound = 20000;
  opt.classes = {1};
  const auto non_square = apply_overrides(curve("14a1"), "14a1.1.selmer_n0 = 6\n");
  const auto s = run_survey(non_square, opt);
  CHECK(s.classes[0].cassels_violations > 0);

  const auto wrong_a = apply_overrides(curve("14a1"), "14a1.1.a_n0 = 4\n");
  CHECK(error_kind([&] { run_survey(wrong_a, opt); }) == ErrorKind::normalization);

  const auto wrong_rep = apply_overrides(curve("14a1"), "14a1.23.n0_effective = 135\n");
  opt.classes = {23};
  CHECK(error_kind([&] { run_survey(wrong_rep, opt); }) == ErrorKind::normalization);
}

TEST_CASE("survey configuration errors") {
  SurveyOptions opt;
  opt.bound = 1000;
  opt.classes = {7};
  CHECK(error_kind([&] { run_survey(curve("11a1"), opt); }) == ErrorKind::config);
  opt.classes = {};
  opt.scale = 0;
  CHECK(error_kind([&] { run_survey(curve("11a1"), opt); }) == ErrorKind::config);
  opt.scale = 1;
  opt.bound = 100;
  CHECK(error_kind([&] { run_survey(curve("34a1"), opt); }) == ErrorKind::range);
}

TEST_CASE("summary json and plot data") {
  SurveyOptions opt;
  opt.bound = 200000;
  opt.classes = {1, 3};
  const auto s = run_survey(curve("11a1"), opt);
  FitConfig cfg;
  const auto j = summary_json(s, cfg);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["classes"].size() == 2);
  for (const auto& c : j["classes"]) {
    std::int64_t total = 0;
    for (const auto& f : c["fits"]) total += f["s"].back().get<std::int64_t>();
    CHECK(total == c["fits"][0]["x"].back().get<std::int64_t>());
  }

  const auto cells = fit_class(s, s.classes[0], cfg);
  std::ostringstream out;
  write_plot_data(out, cells[1].series, 0.295669, 0.005, SigmaForm::natural);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# x ratio sigma");
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cols(line);
    std::string c;
    int n = 0;
    while (cols >> c) ++n;
    CHECK(n == 3);
    ++rows;
  }
  CHECK(rows == 4);

  std::ostringstream empty;
  write_plot_data(empty, RatioSeries{}, 0.3, 0.0, SigmaForm::natural);
  CHECK(empty.str() == "# x ratio sigma\n");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.0 / 3.0) == "0.666666666667");
}

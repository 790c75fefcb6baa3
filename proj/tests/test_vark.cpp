#include "olms/error.hpp"
#include "olms/vark.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <numeric>

using namespace olms;
using namespace olms::vark;
using olms::testing::Rng;

namespace {

std::vector<SurveyQuestion> questions(std::size_t n) {
  std::vector<SurveyQuestion> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"q" + std::to_string(i), "prompt", {"k", "v", "r", "a"}});
  }
  return out;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an olms::Error");
  return Errc::InvalidArgument;
}

} // namespace

TEST_CASE("option index to style mapping is fixed") {
  CHECK(style_for_option(1) == LearningStyle::Kinesthetic);
  CHECK(style_for_option(2) == LearningStyle::Visual);
  CHECK(style_for_option(3) == LearningStyle::ReadWrite);
  CHECK(style_for_option(4) == LearningStyle::Aural);
  CHECK(code_of([] { style_for_option(0); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { style_for_option(5); }) == Errc::IndexOutOfRange);
}

TEST_CASE("style names") {
  for (auto s : {LearningStyle::Visual, LearningStyle::Aural, LearningStyle::ReadWrite,
                 LearningStyle::Kinesthetic}) {
    CHECK(style_from_string(to_string(s)) == s);
  }
  CHECK_FALSE(style_from_string("visual"));
  CHECK(to_string(VarkScores{8, 0, 0, 0}) == "v=8 a=0 r=0 k=0");
}

TEST_CASE("default questionnaire") {
  auto qs = load_questionnaire(default_questionnaire());
  REQUIRE(qs.size() == 8);
  CHECK(qs.front().id == "directions");
  CHECK(qs.back().id == "choose_course");
  for (const auto& q : qs) {
    for (const auto& o : q.options) CHECK_FALSE(o.empty());
  }
}

TEST_CASE("questionnaire format errors") {
  auto line_of = [](std::string_view doc) -> std::size_t {
    try {
      load_questionnaire(doc);
    } catch (const DocumentError& e) {
      CHECK(e.code() == Errc::FormatError);
      return e.line();
    }
    FAIL("questionnaire accepted");
    return 0;
  };
  line_of("");
  line_of("\n\n");
  CHECK(line_of("Q a\nprompt\n1) x\n2) y\n3) z\n") > 0);
  line_of("Q a\nprompt\n1) x\n2) y\n3) z\n4) w\n5) extra\n");
  line_of("Q a\nprompt\n1) x\n3) y\n2) z\n4) w\n");
  line_of("Q a\np\n1) x\n2) y\n3) z\n4) w\n\nQ a\np\n1) x\n2) y\n3) z\n4) w\n");
  line_of("Question a\np\n1) x\n2) y\n3) z\n4) w\n");
  auto ok = load_questionnaire("Q a\np\n1) x\n2) y\n3) z\n4) w\n\n\nQ b\np\n1) x\n2) y\n3) z\n4) w");
  CHECK(ok.size() == 2);
}

TEST_CASE("scoring") {
  auto qs8 = questions(8);
  std::vector<int> all2(8, 2);
  CHECK(score_survey(qs8, all2) == VarkScores{8, 0, 0, 0});

  auto qs5 = questions(5);
  std::vector<int> mixed{1, 1, 4, 4, 4};
  auto scores = score_survey(qs5, mixed);
  CHECK(scores == VarkScores{0, 3, 0, 2});
  CHECK(classify(scores) == LearningStyle::Aural);

  std::vector<int> short_answers{1, 2};
  CHECK(code_of([&] { score_survey(qs5, short_answers); }) == Errc::LengthMismatch);
  std::vector<int> bad{1, 2, 3, 4, 7};
  CHECK(code_of([&] { score_survey(qs5, bad); }) == Errc::IndexOutOfRange);
}

TEST_CASE("classification and tie-break") {
  CHECK(classify({8, 0, 0, 0}) == LearningStyle::Visual);
  CHECK(classify({2, 0, 2, 0}) == LearningStyle::Visual);
  CHECK(classify({0, 1, 1, 1}) == LearningStyle::Aural);
  CHECK(classify({0, 0, 1, 1}) == LearningStyle::ReadWrite);
  CHECK(classify({0, 0, 0, 1}) == LearningStyle::Kinesthetic);
  CHECK(code_of([] { classify({}); }) == Errc::EmptySurvey);
}

TEST_CASE("unanimous sheets classify to their style") {
  auto qs = questions(8);
  for (int option = 1; option <= 4; ++option) {
    std::vector<int> sheet(8, option);
    CHECK(classify(score_survey(qs, sheet)) == style_for_option(option));
  }
}

// ---------------------------------------------------------------------------
// properties

TEST_CASE("scores are conserved, permutation-stable and classify to a maximum") {
  Rng rng(41);
  for (int round = 0; round < 500; ++round) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 30));
    auto qs = questions(n);
    std::vector<int> sheet(n);
    for (auto& a : sheet) a = testing::uniform(rng, 1, 4);

    auto scores = score_survey(qs, sheet);
    REQUIRE(scores.total() == static_cast<int>(n));
    // Independent tally.
    std::array<int, 5> tally{};
    for (int a : sheet) ++tally[a];
    REQUIRE(scores == VarkScores{tally[2], tally[4], tally[3], tally[1]});

    auto style = classify(scores);
    REQUIRE(scores.of(style) == std::max({scores.v, scores.a, scores.r, scores.k}));
    REQUIRE(classify(scores) == style);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<SurveyQuestion> qs2;
    std::vector<int> sheet2;
    for (auto i : perm) {
      qs2.push_back(qs[i]);
      sheet2.push_back(sheet[i]);
    }
    REQUIRE(score_survey(qs2, sheet2) == scores);
  }
}

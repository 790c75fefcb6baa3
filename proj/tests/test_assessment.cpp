#include "olms/assessment.hpp"
#include "olms/error.hpp"
#include "olms/persistence.hpp"

#include <doctest.h>

using namespace olms;
using namespace olms::quiz;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an olms::Error");
  return Errc::InvalidArgument;
}

OntologyStore seed_with_style(std::string_view style) {
  auto s = load_seed();
  s.assert_data("VARK", "abcStudent", std::string(style));
  return s;
}

QuizQuestion bank_question(const std::string& id) {
  for (auto& q : load_quiz_bank(default_quiz_bank())) {
    if (q.id == id) return q;
  }
  FAIL("no question " << id);
  return {};
}

} // namespace

TEST_CASE("format tokens map to styles") {
  using vark::LearningStyle;
  CHECK(style_for_format("video") == LearningStyle::Visual);
  CHECK(style_for_format("audio") == LearningStyle::Aural);
  CHECK(style_for_format("lecture-notes") == LearningStyle::ReadWrite);
  CHECK(style_for_format("book") == LearningStyle::ReadWrite);
  CHECK(style_for_format("exercise") == LearningStyle::Kinesthetic);
  CHECK(style_for_format("lab") == LearningStyle::Kinesthetic);
  CHECK_FALSE(style_for_format("pdf"));
  CHECK_FALSE(is_format_token("Video"));
}

TEST_CASE("recommend_resource prefers the learner's style") {
  CHECK(recommend_resource(seed_with_style("Visual"), "abcStudent", "Buffering") == "CMVideo");
  CHECK(recommend_resource(seed_with_style("ReadWrite"), "abcStudent", "Buffering") ==
        "CMResource");
  // No style match: smallest containing id.
  CHECK(recommend_resource(seed_with_style("Aural"), "abcStudent", "Buffering") == "CMResource");
  CHECK(recommend_resource(seed_with_style("Visual"), "abcStudent", "MessageSending") ==
        "CMResource");

  auto s = load_seed();
  s.add_individual("Deadlock", "ProcessManagement");
  CHECK(code_of([&] { recommend_resource(s, "abcStudent", "Deadlock"); }) ==
        Errc::NoResourceForTopic);
}

TEST_CASE("rank_resources puts style matches first") {
  auto s = load_seed();
  IdSet both{"CMResource", "CMVideo"};
  CHECK(rank_resources(s, both, vark::LearningStyle::Visual) ==
        std::vector<Id>{"CMVideo", "CMResource"});
  CHECK(rank_resources(s, both, vark::LearningStyle::ReadWrite) ==
        std::vector<Id>{"CMResource", "CMVideo"});
  CHECK(rank_resources(s, both, std::nullopt) == std::vector<Id>{"CMResource", "CMVideo"});
}

TEST_CASE("default quiz bank") {
  auto bank = load_quiz_bank(default_quiz_bank());
  REQUIRE(bank.size() == 3);
  const auto s = load_seed();
  for (const auto& q : bank) {
    CHECK(s.has_individual(q.topic));
    CHECK(q.correct >= 1);
    CHECK(q.correct <= static_cast<int>(q.options.size()));
    CHECK_FALSE(q.hint.empty());
  }
}

TEST_CASE("quiz bank format errors") {
  auto rejects = [](std::string_view doc) {
    try {
      load_quiz_bank(doc);
    } catch (const DocumentError& e) {
      CHECK(e.code() == Errc::FormatError);
      return true;
    }
    return false;
  };
  CHECK(rejects(""));
  CHECK(rejects("QUIZ a\nTOPIC t\np\n1) x\nANSWER 1\nHINT h\n"));
  CHECK(rejects("QUIZ a\nTOPIC t\np\n1) x\n2) y\nANSWER 3\nHINT h\n"));
  CHECK(rejects("QUIZ a\nTOPIC t\np\n1) x\n2) y\nANSWER 1\n"));
  CHECK(rejects("QUIZ a\nTOPIC t\np\n1) x\n2) y\nANSWER 1\nHINT h\n\n"
                "QUIZ a\nTOPIC t\np\n1) x\n2) y\nANSWER 1\nHINT h\n"));
  CHECK_FALSE(rejects("QUIZ a\nTOPIC t\np\n1) x\n2) y\nANSWER 2\nHINT h\n"));
}

TEST_CASE("start_session preconditions") {
  auto s = load_seed();
  auto q = bank_question("q_buffering");
  auto session = start_session("s1", s, "abcStudent", {q});
  CHECK(session.state("q_buffering") == QuestionState::FirstAttempt);

  CHECK(code_of([&] { start_session("s", s, "xyzTeacher", {q}); }) == Errc::UnknownLearner);
  CHECK(code_of([&] { start_session("s", s, "ghost", {q}); }) == Errc::UnknownLearner);
  CHECK(code_of([&] { start_session("s", s, "abcStudent", {}); }) == Errc::EmptyQuiz);
  auto bad = q;
  bad.topic = "NoSuchTopic";
  CHECK(code_of([&] { start_session("s", s, "abcStudent", {bad}); }) == Errc::UnknownTopic);

  s.add_individual("newStudent", "Student");
  CHECK(code_of([&] { start_session("s", s, "newStudent", {q}); }) == Errc::MissingStyle);
}

TEST_CASE("the three terminal paths") {
  const auto s = load_seed();
  auto q = bank_question("q_buffering");
  const int right = q.correct;
  const int wrong = right == 1 ? 2 : 1;

  SUBCASE("correct first time") {
    auto session = start_session("s", s, "abcStudent", {q});
    CHECK(std::holds_alternative<Correct>(session.submit_answer(s, q.id, right)));
    CHECK(session.state(q.id) == QuestionState::ResolvedCorrect);
    auto r = session.report();
    CHECK(r.first_try == 1);
    CHECK(r.after_hint == 0);
    CHECK(r.recommended == 0);
  }
  SUBCASE("wrong, hint, correct") {
    auto session = start_session("s", s, "abcStudent", {q});
    auto first = session.submit_answer(s, q.id, wrong);
    REQUIRE(std::holds_alternative<Hint>(first));
    CHECK(std::get<Hint>(first).text == q.hint);
    CHECK(session.state(q.id) == QuestionState::HintShown);
    CHECK(std::holds_alternative<Correct>(session.submit_answer(s, q.id, right)));
    auto r = session.report();
    CHECK(r.first_try == 0);
    CHECK(r.after_hint == 1);
    CHECK(r.recommended == 0);
  }
  SUBCASE("wrong, hint, wrong, recommendation") {
    auto session = start_session("s", s, "abcStudent", {q});
    session.submit_answer(s, q.id, wrong);
    auto second = session.submit_answer(s, q.id, wrong);
    REQUIRE(std::holds_alternative<Recommendation>(second));
    CHECK(std::get<Recommendation>(second) ==
          Recommendation{"CMVideo", "localhost:8080/thesisMLearning/CMVideo.mp4"});
    CHECK(session.state(q.id) == QuestionState::ResolvedWrong);
    CHECK(code_of([&] { session.submit_answer(s, q.id, right); }) == Errc::AlreadyResolved);
    auto r = session.report();
    CHECK(r.recommended == 1);
    CHECK(r.questions.front().outcomes.size() == 2);
  }
}

TEST_CASE("invalid answers leave the session unchanged") {
  auto s = load_seed();
  auto q = bank_question("q_buffering");
  auto session = start_session("s", s, "abcStudent", {q});
  CHECK(code_of([&] { session.submit_answer(s, q.id, 0); }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] { session.submit_answer(s, q.id, 5); }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] { session.submit_answer(s, "nope", 1); }) == Errc::UnknownQuestion);
  CHECK(session.state(q.id) == QuestionState::FirstAttempt);

  // Recommendation failure: drop every resource, then miss twice.
  session.submit_answer(s, q.id, q.correct == 1 ? 2 : 1);
  s.remove_individual("CMVideo");
  s.remove_individual("CMResource");
  CHECK(code_of([&] { session.submit_answer(s, q.id, q.correct == 1 ? 2 : 1); }) ==
        Errc::NoResourceForTopic);
  CHECK(session.state(q.id) == QuestionState::HintShown);
}

TEST_CASE("every path over every bank question stays within two scored answers") {
  const auto s = load_seed();
  auto bank = load_quiz_bank(default_quiz_bank());
  for (const auto& q : bank) {
    const int n = static_cast<int>(q.options.size());
    for (int a1 = 1; a1 <= n; ++a1) {
      for (int a2 = 1; a2 <= n; ++a2) {
        auto session = start_session("s", s, "abcStudent", {q});
        int scored = 0;
        for (int a : {a1, a2, a1}) {
          try {
            auto out = session.submit_answer(s, q.id, a);
            ++scored;
            if (auto* rec = std::get_if<Recommendation>(&out)) {
              CHECK(s.holds("contains", rec->resource, q.topic));
              CHECK(s.data_value(rec->resource, "path") == rec->path);
            }
          } catch (const Error& e) {
            CHECK(e.code() == Errc::AlreadyResolved);
          }
        }
        CHECK(scored <= 2);
        CHECK(is_resolved(session.state(q.id)));
      }
    }
  }
}

TEST_CASE("sessions are isolated") {
  const auto s = load_seed();
  auto q = bank_question("q_buffering");
  auto a = start_session("a", s, "abcStudent", {q});
  auto b = start_session("b", s, "abcStudent", {q});
  a.submit_answer(s, q.id, q.correct == 1 ? 2 : 1);
  CHECK(a.state(q.id) == QuestionState::HintShown);
  CHECK(b.state(q.id) == QuestionState::FirstAttempt);
}

#pragma once

#include "olms/ontology.hpp"
#include "olms/vark.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace olms {

// Resource formats and the learning style each one serves:
// video -> Visual, audio -> Aural, lecture-notes/book -> ReadWrite,
// exercise/lab -> Kinesthetic.
std::optional<vark::LearningStyle> style_for_format(std::string_view token) noexcept;
bool is_format_token(std::string_view token) noexcept;

// The style stored in a learner's VARK data property, if any.
std::optional<vark::LearningStyle> learner_style(const OntologyStore& store, const Id& learner);

// Resources whose format matches style first, then by id.
std::vector<Id> rank_resources(const OntologyStore& store, const IdSet& resources,
                               std::optional<vark::LearningStyle> style);

// Picks the resource a learner should study for topic: among resources that
// contain the topic, the style-matching one with the smallest id, otherwise
// the smallest id overall. Throws Error(NoResourceForTopic).
Id recommend_resource(const OntologyStore& store, const Id& learner, const Id& topic);

namespace quiz {

struct QuizQuestion {
  std::string id;
  Id topic;
  std::string prompt;
  std::vector<std::string> options;
  int correct = 1;  // 1-based option index
  std::string hint;
};

// Quiz bank text, blocks separated by blank lines:
//   QUIZ <id>
//   TOPIC <individual>
//   <prompt>
//   1) ...            (two or more numbered options)
//   ANSWER <index>
//   HINT <text>
// Throws DocumentError(FormatError).
std::vector<QuizQuestion> load_quiz_bank(std::string_view document);
std::string_view default_quiz_bank();

enum class QuestionState { FirstAttempt, HintShown, ResolvedCorrect, ResolvedWrong };

std::string_view to_string(QuestionState state) noexcept;
inline bool is_resolved(QuestionState s) noexcept {
  return s == QuestionState::ResolvedCorrect || s == QuestionState::ResolvedWrong;
}

struct Correct {
  bool operator==(const Correct&) const = default;
};
struct Hint {
  std::string text;
  bool operator==(const Hint&) const = default;
};
struct Recommendation {
  Id resource;
  std::string path;
  bool operator==(const Recommendation&) const = default;
};
using Outcome = std::variant<Correct, Hint, Recommendation>;

struct QuestionReport {
  std::string question;
  QuestionState state;
  std::vector<Outcome> outcomes;
};

struct SessionReport {
  std::vector<QuestionReport> questions;
  int first_try = 0;
  int after_hint = 0;
  int recommended = 0;
};

// One learner working through an ordered list of questions. Each question
// allows two scored answers: a wrong first answer earns the hint, a wrong
// second answer earns a resource recommendation and closes the question.
class QuizSession {
public:
  const std::string& id() const noexcept { return id_; }
  const Id& learner() const noexcept { return learner_; }
  const std::vector<QuizQuestion>& questions() const noexcept { return questions_; }

  QuestionState state(const std::string& question) const;

  // Throws Error(UnknownQuestion | AlreadyResolved | IndexOutOfRange), or
  // Error(NoResourceForTopic) from the recommendation, leaving the session
  // unchanged in every case.
  Outcome submit_answer(const OntologyStore& store, const std::string& question, int answer);

  SessionReport report() const;

private:
  friend QuizSession start_session(std::string, const OntologyStore&, const Id&,
                                   std::vector<QuizQuestion>);
  QuizSession() = default;

  std::size_t index_of(const std::string& question) const;

  std::string id_;
  Id learner_;
  std::vector<QuizQuestion> questions_;
  std::vector<QuestionState> states_;
  std::vector<std::vector<Outcome>> issued_;
};

// Throws Error(UnknownLearner | MissingStyle | EmptyQuiz | UnknownTopic).
QuizSession start_session(std::string session_id, const OntologyStore& store, const Id& learner,
                          std::vector<QuizQuestion> questions);

} // namespace quiz

} // namespace olms

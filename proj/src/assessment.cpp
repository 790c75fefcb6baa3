#include "olms/assessment.hpp"

#include "olms/error.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace olms {

namespace {

struct FormatEntry {
  std::string_view token;
  vark::LearningStyle style;
};

constexpr FormatEntry kFormats[] = {
    {"video", vark::LearningStyle::Visual},
    {"audio", vark::LearningStyle::Aural},
    {"lecture-notes", vark::LearningStyle::ReadWrite},
    {"book", vark::LearningStyle::ReadWrite},
    {"exercise", vark::LearningStyle::Kinesthetic},
    {"lab", vark::LearningStyle::Kinesthetic},
};

std::optional<vark::LearningStyle> resource_style(const OntologyStore& store, const Id& resource) {
  if (!store.has_data_property("format")) return std::nullopt;
  auto token = store.data_value(resource, "format");
  return token ? style_for_format(*token) : std::nullopt;
}

} // namespace

std::optional<vark::LearningStyle> style_for_format(std::string_view token) noexcept {
  for (const auto& entry : kFormats) {
    if (entry.token == token) return entry.style;
  }
  return std::nullopt;
}

bool is_format_token(std::string_view token) noexcept {
  return style_for_format(token).has_value();
}

std::optional<vark::LearningStyle> learner_style(const OntologyStore& store, const Id& learner) {
  if (!store.has_data_property("VARK") || !store.has_individual(learner)) return std::nullopt;
  auto value = store.data_value(learner, "VARK");
  return value ? vark::style_from_string(*value) : std::nullopt;
}

std::vector<Id> rank_resources(const OntologyStore& store, const IdSet& resources,
                               std::optional<vark::LearningStyle> style) {
  std::vector<Id> matching;
  std::vector<Id> rest;
  for (const auto& r : resources) {
    (style && resource_style(store, r) == style ? matching : rest).push_back(r);
  }
  matching.insert(matching.end(), rest.begin(), rest.end());
  return matching;
}

Id recommend_resource(const OntologyStore& store, const Id& learner, const Id& topic) {
  if (!store.has_individual(topic)) {
    throw Error(Errc::UnknownTopic, "no topic '" + topic + "'");
  }
  auto style = learner_style(store, learner);
  if (!style) {
    throw Error(Errc::MissingStyle, "'" + learner + "' has no learning style");
  }
  IdSet candidates;
  if (store.has_object_property("contains")) {
    candidates = store.object_subjects("contains", topic);
  }
  if (candidates.empty()) {
    throw Error(Errc::NoResourceForTopic, "no resource contains '" + topic + "'");
  }
  return rank_resources(store, candidates, style).front();
}

namespace quiz {

std::string_view to_string(QuestionState state) noexcept {
  switch (state) {
    case QuestionState::FirstAttempt: return "first-attempt";
    case QuestionState::HintShown: return "hint-shown";
    case QuestionState::ResolvedCorrect: return "resolved-correct";
    case QuestionState::ResolvedWrong: return "resolved-wrong";
  }
  return "";
}

std::vector<QuizQuestion> load_quiz_bank(std::string_view document) {
  std::vector<QuizQuestion> out;
  std::set<std::string> ids;
  std::vector<std::pair<std::size_t, std::string_view>> block;

  auto fail = [](std::size_t line, const std::string& detail) -> void {
    throw DocumentError(Errc::FormatError, line, detail);
  };

  auto flush = [&] {
    if (block.empty()) return;
    // QUIZ, TOPIC, prompt, >= 2 options, ANSWER, HINT
    if (block.size() < 7) {
      fail(block.front().first, "incomplete quiz block");
    }
    QuizQuestion q;
    const auto& [first_line, header] = block[0];
    if (!header.starts_with("QUIZ ")) fail(first_line, "block must start with 'QUIZ <id>'");
    q.id = std::string(header.substr(5));
    if (q.id.empty()) fail(first_line, "empty quiz id");
    if (!ids.insert(q.id).second) fail(first_line, "duplicate quiz id '" + q.id + "'");

    const auto& [topic_line, topic] = block[1];
    if (!topic.starts_with("TOPIC ") || !is_identifier(topic.substr(6))) {
      fail(topic_line, "expected 'TOPIC <individual>'");
    }
    q.topic = Id(topic.substr(6));
    q.prompt = std::string(block[2].second);

    std::size_t i = 3;
    for (; i < block.size() - 2; ++i) {
      const auto& [line, text] = block[i];
      const std::string marker = std::to_string(q.options.size() + 1) + ") ";
      if (!text.starts_with(marker)) fail(line, "expected option line '" + marker + "...'");
      q.options.emplace_back(text.substr(marker.size()));
    }
    if (q.options.size() < 2) fail(block.front().first, "a question needs at least two options");

    const auto& [answer_line, answer] = block[i];
    if (!answer.starts_with("ANSWER ")) fail(answer_line, "expected 'ANSWER <index>'");
    auto digits = answer.substr(7);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q.correct);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || q.correct < 1 ||
        q.correct > static_cast<int>(q.options.size())) {
      fail(answer_line, "answer must be an option index");
    }

    const auto& [hint_line, hint] = block[i + 1];
    if (!hint.starts_with("HINT ")) fail(hint_line, "expected 'HINT <text>'");
    q.hint = std::string(hint.substr(5));

    out.push_back(std::move(q));
    block.clear();
  };

  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view text = document.substr(pos, eol - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    ++line;
    pos = eol + 1;
    if (text.find_first_not_of(" \t") == std::string_view::npos) {
      flush();
    } else {
      block.emplace_back(line, text);
    }
  }
  flush();

  if (out.empty()) {
    throw DocumentError(Errc::FormatError, 0, "quiz bank has no questions");
  }
  return out;
}

QuizSession start_session(std::string session_id, const OntologyStore& store, const Id& learner,
                          std::vector<QuizQuestion> questions) {
  if (!store.has_individual(learner) || !store.has_class("Student") ||
      !store.is_instance_of(learner, "Student")) {
    throw Error(Errc::UnknownLearner, "'" + learner + "' is not a student");
  }
  if (!learner_style(store, learner)) {
    throw Error(Errc::MissingStyle, "'" + learner + "' has not taken the survey");
  }
  if (questions.empty()) {
    throw Error(Errc::EmptyQuiz, "a quiz needs at least one question");
  }
  std::set<std::string> seen;
  for (const auto& q : questions) {
    if (!store.has_individual(q.topic)) {
      throw Error(Errc::UnknownTopic, "question '" + q.id + "' refers to unknown topic '" +
                                          q.topic + "'");
    }
    if (!seen.insert(q.id).second) {
      throw Error(Errc::InvalidArgument, "question '" + q.id + "' appears twice");
    }
  }

  QuizSession session;
  session.id_ = std::move(session_id);
  session.learner_ = learner;
  session.states_.assign(questions.size(), QuestionState::FirstAttempt);
  session.issued_.resize(questions.size());
  session.questions_ = std::move(questions);
  return session;
}

std::size_t QuizSession::index_of(const std::string& question) const {
  for (std::size_t i = 0; i < questions_.size(); ++i) {
    if (questions_[i].id == question) return i;
  }
  throw Error(Errc::UnknownQuestion, "question '" + question + "' is not in this session");
}

QuestionState QuizSession::state(const std::string& question) const {
  return states_[index_of(question)];
}

Outcome QuizSession::submit_answer(const OntologyStore& store, const std::string& question,
                                   int answer) {
  const std::size_t i = index_of(question);
  const auto& q = questions_[i];
  if (is_resolved(states_[i])) {
    throw Error(Errc::AlreadyResolved, "question '" + question + "' is already resolved");
  }
  if (answer < 1 || answer > static_cast<int>(q.options.size())) {
    throw Error(Errc::IndexOutOfRange, "answer " + std::to_string(answer) + " is not an option");
  }

  Outcome outcome;
  QuestionState next;
  if (answer == q.correct) {
    outcome = Correct{};
    next = QuestionState::ResolvedCorrect;
  } else if (states_[i] == QuestionState::FirstAttempt) {
    outcome = Hint{q.hint};
    next = QuestionState::HintShown;
  } else {
    Id resource = recommend_resource(store, learner_, q.topic);
    auto path = store.has_data_property("path") ? store.data_value(resource, "path") : std::nullopt;
    outcome = Recommendation{resource, path.value_or("")};
    next = QuestionState::ResolvedWrong;
  }
  states_[i] = next;
  issued_[i].push_back(outcome);
  return outcome;
}

SessionReport QuizSession::report() const {
  SessionReport report;
  for (std::size_t i = 0; i < questions_.size(); ++i) {
    report.questions.push_back({questions_[i].id, states_[i], issued_[i]});
    if (states_[i] == QuestionState::ResolvedCorrect) {
      (issued_[i].size() == 1 ? report.first_try : report.after_hint) += 1;
    } else if (states_[i] == QuestionState::ResolvedWrong) {
      report.recommended += 1;
    }
  }
  return report;
}

} // namespace quiz

} // namespace olms

#include "olms/vark.hpp"

#include "olms/error.hpp"

#include <set>

namespace olms::vark {

std::string_view to_string(LearningStyle style) noexcept {
  switch (style) {
    case LearningStyle::Visual: return "Visual";
    case LearningStyle::Aural: return "Aural";
    case LearningStyle::ReadWrite: return "ReadWrite";
    case LearningStyle::Kinesthetic: return "Kinesthetic";
  }
  return "";
}

std::optional<LearningStyle> style_from_string(std::string_view text) noexcept {
  for (auto style : {LearningStyle::Visual, LearningStyle::Aural, LearningStyle::ReadWrite,
                     LearningStyle::Kinesthetic}) {
    if (to_string(style) == text) return style;
  }
  return std::nullopt;
}

LearningStyle style_for_option(int option) {
  switch (option) {
    case 1: return LearningStyle::Kinesthetic;
    case 2: return LearningStyle::Visual;
    case 3: return LearningStyle::ReadWrite;
    case 4: return LearningStyle::Aural;
    default:
      throw Error(Errc::IndexOutOfRange,
                  "answer " + std::to_string(option) + " is not an option index in 1..4");
  }
}

int VarkScores::of(LearningStyle style) const noexcept {
  switch (style) {
    case LearningStyle::Visual: return v;
    case LearningStyle::Aural: return a;
    case LearningStyle::ReadWrite: return r;
    case LearningStyle::Kinesthetic: return k;
  }
  return 0;
}

std::string to_string(const VarkScores& s) {
  return "v=" + std::to_string(s.v) + " a=" + std::to_string(s.a) + " r=" + std::to_string(s.r) +
         " k=" + std::to_string(s.k);
}

std::vector<SurveyQuestion> load_questionnaire(std::string_view document) {
  std::vector<SurveyQuestion> questions;
  std::set<std::string> ids;

  // Lines of the current block with their 1-based numbers.
  std::vector<std::pair<std::size_t, std::string_view>> block;
  auto flush = [&] {
    if (block.empty()) return;
    const auto [first_line, header] = block.front();
    if (!header.starts_with("Q ") || header.size() < 3) {
      throw DocumentError(Errc::FormatError, first_line, "block must start with 'Q <id>'");
    }
    if (block.size() != 6) {
      throw DocumentError(Errc::FormatError, first_line,
                          "question needs a prompt and exactly four options, found " +
                              std::to_string(block.size() >= 2 ? block.size() - 2 : 0) +
                              " option lines");
    }
    SurveyQuestion q;
    q.id = std::string(header.substr(2));
    if (!ids.insert(q.id).second) {
      throw DocumentError(Errc::FormatError, first_line, "duplicate question id '" + q.id + "'");
    }
    q.prompt = std::string(block[1].second);
    for (int i = 0; i < 4; ++i) {
      const auto [line, text] = block[2 + i];
      const std::string marker = std::to_string(i + 1) + ") ";
      if (!text.starts_with(marker)) {
        throw DocumentError(Errc::FormatError, line, "expected option line '" + marker + "...'");
      }
      q.options[i] = std::string(text.substr(marker.size()));
    }
    questions.push_back(std::move(q));
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

  if (questions.empty()) {
    throw DocumentError(Errc::FormatError, 0, "questionnaire has no questions");
  }
  return questions;
}

VarkScores score_survey(std::span<const SurveyQuestion> questions, std::span<const int> answers) {
  if (answers.size() != questions.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(answers.size()) + " answers for " +
                                          std::to_string(questions.size()) + " questions");
  }
  VarkScores scores;
  for (int answer : answers) {
    switch (style_for_option(answer)) {
      case LearningStyle::Visual: ++scores.v; break;
      case LearningStyle::Aural: ++scores.a; break;
      case LearningStyle::ReadWrite: ++scores.r; break;
      case LearningStyle::Kinesthetic: ++scores.k; break;
    }
  }
  return scores;
}

LearningStyle classify(const VarkScores& scores) {
  if (scores.total() <= 0) {
    throw Error(Errc::EmptySurvey, "no answers to classify");
  }
  LearningStyle best = LearningStyle::Visual;
  for (auto style : {LearningStyle::Aural, LearningStyle::ReadWrite, LearningStyle::Kinesthetic}) {
    if (scores.of(style) > scores.of(best)) {
      best = style;
    }
  }
  return best;
}

} // namespace olms::vark

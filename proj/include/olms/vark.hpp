#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olms::vark {

enum class LearningStyle { Visual, Aural, ReadWrite, Kinesthetic };

// "Visual", "Aural", "ReadWrite", "Kinesthetic" -- the value stored in the
// learner's VARK data property.
std::string_view to_string(LearningStyle style) noexcept;
std::optional<LearningStyle> style_from_string(std::string_view text) noexcept;

// Option index (1-based) -> style. Fixed for every question:
// 1 Kinesthetic, 2 Visual, 3 ReadWrite, 4 Aural.
LearningStyle style_for_option(int option);

struct SurveyQuestion {
  std::string id;
  std::string prompt;
  std::array<std::string, 4> options;
};

struct VarkScores {
  int v = 0;
  int a = 0;
  int r = 0;
  int k = 0;

  int total() const noexcept { return v + a + r + k; }
  int of(LearningStyle style) const noexcept;

  bool operator==(const VarkScores&) const = default;
};

// Compact "v=8 a=0 r=0 k=0" form kept on the learner next to the style.
std::string to_string(const VarkScores& scores);

// Questionnaire text: blocks separated by blank lines, each block
//   Q <id>
//   <prompt>
//   1) ...
//   2) ...
//   3) ...
//   4) ...
// Throws DocumentError(FormatError).
std::vector<SurveyQuestion> load_questionnaire(std::string_view document);

// The eight-question questionnaire shipped with the engine.
std::string_view default_questionnaire();

// Throws Error(LengthMismatch) or Error(IndexOutOfRange).
VarkScores score_survey(std::span<const SurveyQuestion> questions, std::span<const int> answers);

// Maximal count wins; ties resolve Visual > Aural > ReadWrite > Kinesthetic.
// Throws Error(EmptySurvey) when no answer was counted.
LearningStyle classify(const VarkScores& scores);

} // namespace olms::vark

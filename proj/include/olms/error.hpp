#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace olms {

// Every failure the engine reports carries one of these codes. The HTTP layer
// maps them onto status classes; see status_for() in service.cpp.
enum class Errc {
  // ontology-core
  DuplicateId,
  UnknownParent,
  CycleDetected,
  UnknownClass,
  InverseMismatch,
  InverseAlreadyBound,
  IdCollidesWithClass,
  UnknownEntity,
  DomainViolation,
  RangeViolation,
  AssertionNotFound,
  InvalidIdentifier,
  InvalidLiteral,
  ClassInUse,
  // dl-query
  ParseError,
  UnknownName,
  // persistence
  SyntaxError,
  // vark-profiler
  FormatError,
  LengthMismatch,
  IndexOutOfRange,
  EmptySurvey,
  // assessment-engine
  UnknownLearner,
  MissingStyle,
  EmptyQuiz,
  UnknownTopic,
  UnknownQuestion,
  AlreadyResolved,
  NoResourceForTopic,
  // lms-catalog
  Forbidden,
  DuplicateUserid,
  UnknownUser,
  SelfDeletion,
  ParentOutsideTaxonomy,
  AlreadyEnrolled,
  UnknownCourse,
  BadFormatToken,
  NotEnrolled,
  InvalidArgument,
  // http-service
  InvalidCredentials,
  Unauthorized,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string detail);

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

// A DL-query text could not be parsed. offset is 1-based; a value one past
// the end of the text means the input ended early.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, std::string expected);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

// A line-oriented document (.onto, questionnaire, quiz bank) was rejected.
// line is 1-based; 0 when the failure is not tied to a single line.
class DocumentError : public Error {
public:
  DocumentError(Errc code, std::size_t line, std::string detail);

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace olms

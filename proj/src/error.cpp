#include "olms/error.hpp"

#include <utility>

namespace olms {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownParent: return "UnknownParent";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::InverseMismatch: return "InverseMismatch";
    case Errc::InverseAlreadyBound: return "InverseAlreadyBound";
    case Errc::IdCollidesWithClass: return "IdCollidesWithClass";
    case Errc::UnknownEntity: return "UnknownEntity";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::RangeViolation: return "RangeViolation";
    case Errc::AssertionNotFound: return "AssertionNotFound";
    case Errc::InvalidIdentifier: return "InvalidIdentifier";
    case Errc::InvalidLiteral: return "InvalidLiteral";
    case Errc::ClassInUse: return "ClassInUse";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownName: return "UnknownName";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::FormatError: return "FormatError";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptySurvey: return "EmptySurvey";
    case Errc::UnknownLearner: return "UnknownLearner";
    case Errc::MissingStyle: return "MissingStyle";
    case Errc::EmptyQuiz: return "EmptyQuiz";
    case Errc::UnknownTopic: return "UnknownTopic";
    case Errc::UnknownQuestion: return "UnknownQuestion";
    case Errc::AlreadyResolved: return "AlreadyResolved";
    case Errc::NoResourceForTopic: return "NoResourceForTopic";
    case Errc::Forbidden: return "Forbidden";
    case Errc::DuplicateUserid: return "DuplicateUserid";
    case Errc::UnknownUser: return "UnknownUser";
    case Errc::SelfDeletion: return "SelfDeletion";
    case Errc::ParentOutsideTaxonomy: return "ParentOutsideTaxonomy";
    case Errc::AlreadyEnrolled: return "AlreadyEnrolled";
    case Errc::UnknownCourse: return "UnknownCourse";
    case Errc::BadFormatToken: return "BadFormatToken";
    case Errc::NotEnrolled: return "NotEnrolled";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidCredentials: return "InvalidCredentials";
    case Errc::Unauthorized: return "Unauthorized";
  }
  return "Unknown";
}

Error::Error(Errc code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

ParseError::ParseError(std::size_t offset, std::string expected)
    : Error(Errc::ParseError,
            "at offset " + std::to_string(offset) + ", expected " + expected),
      offset_(offset),
      expected_(std::move(expected)) {}

DocumentError::DocumentError(Errc code, std::size_t line, std::string detail)
    : Error(code, "line " + std::to_string(line) + ": " + detail), line_(line) {}

} // namespace olms

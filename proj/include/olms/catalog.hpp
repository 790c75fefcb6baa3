#pragma once

#include "olms/ontology.hpp"
#include "olms/shared_store.hpp"
#include "olms/vark.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace olms {

enum class Role { Admin, Teacher, Student, Manager };

// Role tokens double as the ontology class names under User.
std::string_view to_string(Role role) noexcept;
std::optional<Role> role_from_string(std::string_view text) noexcept;

// Everything the application layer lets a role do.
enum class Operation {
  AddUser,
  DeleteUser,
  AddCourse,
  DeleteCourse,
  Enroll,
  AssignTeacher,
  UploadResource,
  ListEnrolled,
  ViewLearnerResources,
  TakeSurvey,
  TakeQuiz,
};

// The full allow/deny matrix. AddUser is further narrowed by add_user():
// teachers may only add students.
bool permits(Role role, Operation op) noexcept;

struct UserAccount {
  Id individual;
  Role role;
  std::string userid;
  std::string name;
  std::optional<vark::LearningStyle> vark;
};

struct CourseRecord {
  Id cls;     // taxonomy class
  Id course;  // punned individual, "<cls>Course"
};

struct ResourceRecord {
  Id id;
  Id kind;  // LectureNotes | Video | Book | Audio | Exercise
  std::string path;
  std::string format;
  Id uploader;
  IdSet topics;
};

struct StudentSummary {
  Id id;
  std::string name;
  std::string userid;
};

// Login entries live outside the ontology. The catalog only creates and
// revokes them as users come and go.
class CredentialDirectory {
public:
  virtual ~CredentialDirectory() = default;
  virtual bool has_userid(const std::string& userid) const = 0;
  // Creates the entry and returns the one-time initial password.
  virtual std::string issue(const std::string& userid, Role role) = 0;
  virtual void revoke(const std::string& userid) = 0;
};

// Read helpers usable under any store hold.
UserAccount account_of(const OntologyStore& store, const Id& individual);
std::optional<UserAccount> find_account(const OntologyStore& store, const std::string& userid);
CourseRecord course_of(const OntologyStore& store, const Id& cls);
std::vector<CourseRecord> all_courses(const OntologyStore& store);
ResourceRecord resource_of(const OntologyStore& store, const Id& resource);
// Instances of ComputerScience that are not course individuals.
bool is_topic(const OntologyStore& store, const Id& individual);

// "XYZ Teacher" -> "xyzTeacher": first word lower-cased, later words
// capitalised, non-identifier characters dropped, a numeric suffix added on
// collision.
Id derive_individual_id(const OntologyStore& store, std::string_view name);

/// Role-aware use cases over the shared ontology.
///
/// Every mutating call runs under one writer hold on a scratch copy of the
/// store, so a rejected call (including a Forbidden one) changes nothing.
class Catalog {
public:
  Catalog(SharedStore& store, CredentialDirectory& credentials)
      : store_(store), credentials_(credentials) {}

  struct NewUser {
    UserAccount account;
    std::string initial_password;
  };

  NewUser add_user(const UserAccount& actor, Role role, const std::string& userid,
                   const std::string& name, std::optional<Id> id = std::nullopt);
  void delete_user(const UserAccount& actor, const Id& target);

  CourseRecord add_course(const UserAccount& actor, const Id& cls, const IdSet& parents);
  // Removes the course individual, then the class if nothing else uses it.
  void delete_course(const UserAccount& actor, const Id& cls);

  void enroll(const UserAccount& actor, const Id& cls);
  void assign_teacher(const UserAccount& actor, const Id& teacher, const Id& cls);

  ResourceRecord upload_resource(const UserAccount& actor, const Id& kind, const Id& id,
                                 const std::string& path, const std::string& format,
                                 const IdSet& topics);

  std::vector<StudentSummary> list_enrolled(const Id& cls) const;
  // Resources covering any topic of the course, style-matching first.
  std::vector<ResourceRecord> resources_for_learner(const Id& student, const Id& cls) const;

  // Stores the classified style and the score vector on the learner.
  void record_survey(const UserAccount& actor, const vark::VarkScores& scores);

  UserAccount account(const Id& individual) const;
  std::optional<UserAccount> find_by_userid(const std::string& userid) const;
  std::vector<CourseRecord> courses() const;

private:
  SharedStore& store_;
  CredentialDirectory& credentials_;
};

} // namespace olms

#include "olms/catalog.hpp"

#include "olms/assessment.hpp"
#include "olms/dl_query.hpp"
#include "olms/error.hpp"

#include <algorithm>
#include <cctype>

namespace olms {

namespace {

constexpr std::string_view kTaxonomyRoot = "ComputerScience";
constexpr std::string_view kCourseSuffix = "Course";
constexpr std::string_view kResourceKinds[] = {"LectureNotes", "Video", "Book", "Audio",
                                               "Exercise"};
constexpr Role kRoles[] = {Role::Admin, Role::Teacher, Role::Student, Role::Manager};

Id course_individual(const Id& cls) { return cls + std::string(kCourseSuffix); }

std::string data_or_empty(const OntologyStore& store, const Id& individual, const Id& property) {
  if (!store.has_data_property(property)) return {};
  return store.data_value(individual, property).value_or("");
}

void require(bool allowed, std::string_view what) {
  if (!allowed) {
    throw Error(Errc::Forbidden, std::string(what));
  }
}

bool is_course_individual(const OntologyStore& store, const Id& individual) {
  if (!individual.ends_with(kCourseSuffix)) return false;
  const Id cls = individual.substr(0, individual.size() - kCourseSuffix.size());
  return store.has_class(cls) && store.individuals().at(individual).types.contains(cls);
}

// isStudentOf holds exactly for students sharing a course with a teacher.
bool shares_course(const OntologyStore& store, const Id& student, const Id& teacher) {
  for (const auto& course : store.object_values(student, "isPursuing")) {
    if (store.holds("teaches", teacher, course)) return true;
  }
  return false;
}

} // namespace

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::Admin: return "Admin";
    case Role::Teacher: return "Teacher";
    case Role::Student: return "Student";
    case Role::Manager: return "Manager";
  }
  return "";
}

std::optional<Role> role_from_string(std::string_view text) noexcept {
  for (auto role : kRoles) {
    if (to_string(role) == text) return role;
  }
  return std::nullopt;
}

bool permits(Role role, Operation op) noexcept {
  switch (role) {
    case Role::Admin:
      // Enrolling, the survey and quizzes act on the caller's own learner
      // profile, which only a Student individual has.
      return op != Operation::Enroll && op != Operation::TakeSurvey && op != Operation::TakeQuiz;
    case Role::Teacher:
      return op == Operation::AddUser || op == Operation::AddCourse ||
             op == Operation::UploadResource || op == Operation::ListEnrolled ||
             op == Operation::ViewLearnerResources;
    case Role::Student:
      return op == Operation::Enroll || op == Operation::ViewLearnerResources ||
             op == Operation::TakeSurvey || op == Operation::TakeQuiz;
    case Role::Manager:
      return op == Operation::UploadResource || op == Operation::ListEnrolled ||
             op == Operation::ViewLearnerResources;
  }
  return false;
}

// ---------------------------------------------------------------------------
// read helpers

UserAccount account_of(const OntologyStore& store, const Id& individual) {
  if (!store.has_individual(individual) || !store.has_class("User") ||
      !store.is_instance_of(individual, "User")) {
    throw Error(Errc::UnknownUser, "no user '" + individual + "'");
  }
  for (auto role : kRoles) {
    const Id cls(to_string(role));
    if (store.has_class(cls) && store.is_instance_of(individual, cls)) {
      UserAccount account{individual, role, data_or_empty(store, individual, "userid"),
                          data_or_empty(store, individual, "name"), std::nullopt};
      if (role == Role::Student) {
        account.vark = learner_style(store, individual);
      }
      return account;
    }
  }
  throw Error(Errc::UnknownUser, "'" + individual + "' has no role");
}

std::optional<UserAccount> find_account(const OntologyStore& store, const std::string& userid) {
  if (!store.has_class("User") || !store.has_data_property("userid")) return std::nullopt;
  for (const auto& individual : store.instances_of("User", true)) {
    if (store.data_value(individual, "userid") == userid) {
      return account_of(store, individual);
    }
  }
  return std::nullopt;
}

CourseRecord course_of(const OntologyStore& store, const Id& cls) {
  const Id root(kTaxonomyRoot);
  const Id course = course_individual(cls);
  if (!store.has_class(cls) || !store.has_class(root) || !store.is_subclass_of(cls, root) ||
      !store.has_individual(course) || !store.individuals().at(course).types.contains(cls)) {
    throw Error(Errc::UnknownCourse, "no course '" + cls + "'");
  }
  return {cls, course};
}

std::vector<CourseRecord> all_courses(const OntologyStore& store) {
  std::vector<CourseRecord> out;
  const Id root(kTaxonomyRoot);
  if (!store.has_class(root)) return out;
  for (const auto& cls : store.subclasses_of(root)) {
    if (store.has_individual(course_individual(cls)) &&
        store.individuals().at(course_individual(cls)).types.contains(cls)) {
      out.push_back({cls, course_individual(cls)});
    }
  }
  return out;
}

bool is_topic(const OntologyStore& store, const Id& individual) {
  const Id root(kTaxonomyRoot);
  return store.has_individual(individual) && store.has_class(root) &&
         store.is_instance_of(individual, root) && !is_course_individual(store, individual);
}

ResourceRecord resource_of(const OntologyStore& store, const Id& resource) {
  if (!store.has_individual(resource) || !store.has_class("Resource") ||
      !store.is_instance_of(resource, "Resource")) {
    throw Error(Errc::UnknownEntity, "no resource '" + resource + "'");
  }
  ResourceRecord record;
  record.id = resource;
  for (auto kind : kResourceKinds) {
    const Id cls(kind);
    if (store.has_class(cls) && store.is_instance_of(resource, cls)) {
      record.kind = cls;
      break;
    }
  }
  record.path = data_or_empty(store, resource, "path");
  record.format = data_or_empty(store, resource, "format");
  if (store.has_object_property("uploadedBy")) {
    auto uploaders = store.object_values(resource, "uploadedBy");
    if (!uploaders.empty()) record.uploader = *uploaders.begin();
  }
  if (store.has_object_property("contains")) {
    record.topics = store.object_values(resource, "contains");
  }
  return record;
}

Id derive_individual_id(const OntologyStore& store, std::string_view name) {
  Id base;
  bool first_word = true;
  bool word_start = true;
  for (char c : name) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      if (!base.empty()) {
        first_word = false;
      }
      word_start = true;
      continue;
    }
    if (!std::isalnum(uc) && c != '_') {
      continue;
    }
    if (first_word) {
      base += static_cast<char>(std::tolower(uc));
    } else if (word_start) {
      base += static_cast<char>(std::toupper(uc));
    } else {
      base += c;
    }
    word_start = false;
  }
  if (base.empty() || std::isdigit(static_cast<unsigned char>(base.front()))) {
    base = "user" + base;
  }
  Id candidate = base;
  for (int n = 2; store.kind_of(candidate); ++n) {
    candidate = base + std::to_string(n);
  }
  return candidate;
}

// ---------------------------------------------------------------------------
// use cases

Catalog::NewUser Catalog::add_user(const UserAccount& actor, Role role, const std::string& userid,
                                   const std::string& name, std::optional<Id> id) {
  require(permits(actor.role, Operation::AddUser), "this role cannot add users");
  require(actor.role == Role::Admin || role == Role::Student, "teachers may only add students");
  if (userid.empty() || userid.find_first_of(" \t\r\n") != std::string::npos) {
    throw Error(Errc::InvalidArgument, "userid must be non-empty and contain no whitespace");
  }
  return store_.write([&](OntologyStore& store) {
    if (credentials_.has_userid(userid) || find_account(store, userid)) {
      throw Error(Errc::DuplicateUserid, "userid '" + userid + "' is taken");
    }
    Id individual = id ? *id : derive_individual_id(store, name);
    if (store.kind_of(individual)) {
      throw Error(Errc::DuplicateId, "'" + individual + "' already exists");
    }
    store.add_individual(individual, Id(to_string(role)));
    store.assert_data("userid", individual, userid);
    store.assert_data("name", individual, name);
    std::string password = credentials_.issue(userid, role);
    return NewUser{UserAccount{individual, role, userid, name, std::nullopt}, std::move(password)};
  });
}

void Catalog::delete_user(const UserAccount& actor, const Id& target) {
  require(permits(actor.role, Operation::DeleteUser), "only administrators can delete users");
  store_.write([&](OntologyStore& store) {
    const UserAccount victim = account_of(store, target);
    if (target == actor.individual) {
      throw Error(Errc::SelfDeletion, "administrators cannot delete themselves");
    }
    store.remove_individual(target);
    if (!victim.userid.empty() && credentials_.has_userid(victim.userid)) {
      credentials_.revoke(victim.userid);
    }
  });
}

CourseRecord Catalog::add_course(const UserAccount& actor, const Id& cls, const IdSet& parents) {
  require(permits(actor.role, Operation::AddCourse), "this role cannot add courses");
  return store_.write([&](OntologyStore& store) {
    const Id root(kTaxonomyRoot);
    if (parents.empty()) {
      throw Error(Errc::ParentOutsideTaxonomy, "a course needs a parent under " + root);
    }
    for (const auto& parent : parents) {
      if (!store.has_class(parent)) {
        throw Error(Errc::UnknownClass, "no class '" + parent + "'");
      }
      if (!store.has_class(root) || !store.is_subclass_of(parent, root)) {
        throw Error(Errc::ParentOutsideTaxonomy, "'" + parent + "' is not under " + root);
      }
    }
    const Id course = course_individual(cls);
    if (store.kind_of(course)) {
      throw Error(Errc::DuplicateId, "'" + course + "' already exists");
    }
    store.declare_class(cls, parents);
    store.add_individual(course, cls);
    return CourseRecord{cls, course};
  });
}

void Catalog::delete_course(const UserAccount& actor, const Id& cls) {
  require(permits(actor.role, Operation::DeleteCourse), "only administrators can delete courses");
  store_.write([&](OntologyStore& store) {
    const CourseRecord record = course_of(store, cls);
    // Teacher/student pairs that only existed through this course go away.
    const IdSet teachers = store.object_values(record.course, "taughtBy");
    const IdSet students = store.object_values(record.course, "enrolledAt");
    store.remove_individual(record.course);
    for (const auto& t : teachers) {
      for (const auto& s : students) {
        if (store.holds("isTeacherOf", t, s) && !shares_course(store, s, t)) {
          store.retract_object("isTeacherOf", t, s);
        }
      }
    }
    // The taxonomy node stays while topics or subclasses still hang off it.
    if (store.subclasses_of(cls).size() == 1 && store.instances_of(cls, false).empty()) {
      store.remove_class(cls);
    }
  });
}

void Catalog::enroll(const UserAccount& actor, const Id& cls) {
  require(permits(actor.role, Operation::Enroll), "only students can enroll");
  store_.write([&](OntologyStore& store) {
    const CourseRecord record = course_of(store, cls);
    if (account_of(store, actor.individual).role != Role::Student) {
      throw Error(Errc::Forbidden, "only students can enroll");
    }
    if (store.holds("isPursuing", actor.individual, record.course)) {
      throw Error(Errc::AlreadyEnrolled, "'" + actor.individual + "' already pursues " + cls);
    }
    store.assert_object("isPursuing", actor.individual, record.course);
    for (const auto& teacher : store.object_values(record.course, "taughtBy")) {
      store.assert_object("isTeacherOf", teacher, actor.individual);
    }
  });
}

void Catalog::assign_teacher(const UserAccount& actor, const Id& teacher, const Id& cls) {
  require(permits(actor.role, Operation::AssignTeacher), "only administrators assign teachers");
  store_.write([&](OntologyStore& store) {
    const CourseRecord record = course_of(store, cls);
    if (!store.has_individual(teacher) || account_of(store, teacher).role != Role::Teacher) {
      throw Error(Errc::UnknownUser, "'" + teacher + "' is not a teacher");
    }
    store.assert_object("teaches", teacher, record.course);
    for (const auto& student : store.object_values(record.course, "enrolledAt")) {
      store.assert_object("isTeacherOf", teacher, student);
    }
  });
}

ResourceRecord Catalog::upload_resource(const UserAccount& actor, const Id& kind, const Id& id,
                                        const std::string& path, const std::string& format,
                                        const IdSet& topics) {
  require(permits(actor.role, Operation::UploadResource), "this role cannot upload resources");
  if (std::find(std::begin(kResourceKinds), std::end(kResourceKinds), kind) ==
      std::end(kResourceKinds)) {
    throw Error(Errc::InvalidArgument, "'" + kind + "' is not a resource kind");
  }
  if (!is_format_token(format)) {
    throw Error(Errc::BadFormatToken, "'" + format + "' is not a resource format");
  }
  if (path.empty()) {
    throw Error(Errc::InvalidArgument, "a resource needs a path");
  }
  if (topics.empty()) {
    throw Error(Errc::InvalidArgument, "a resource must cover at least one topic");
  }
  return store_.write([&](OntologyStore& store) {
    for (const auto& topic : topics) {
      if (!is_topic(store, topic)) {
        throw Error(Errc::UnknownTopic, "no topic '" + topic + "'");
      }
    }
    if (store.kind_of(id)) {
      throw Error(Errc::DuplicateId, "'" + id + "' already exists");
    }
    store.add_individual(id, kind);
    store.assert_data("path", id, path);
    store.assert_data("format", id, format);
    for (const auto& topic : topics) {
      store.assert_object("contains", id, topic);
    }
    store.assert_object("uploadedBy", id, actor.individual);
    return resource_of(store, id);
  });
}

std::vector<StudentSummary> Catalog::list_enrolled(const Id& cls) const {
  return store_.read([&](const OntologyStore& store) {
    const CourseRecord record = course_of(store, cls);
    std::vector<StudentSummary> out;
    for (const auto& s : dl::evaluate(*dl::value("isPursuing", record.course), store)) {
      out.push_back({s, data_or_empty(store, s, "name"), data_or_empty(store, s, "userid")});
    }
    return out;
  });
}

std::vector<ResourceRecord> Catalog::resources_for_learner(const Id& student,
                                                           const Id& cls) const {
  return store_.read([&](const OntologyStore& store) {
    const CourseRecord record = course_of(store, cls);
    if (!store.has_individual(student) || !store.holds("isPursuing", student, record.course)) {
      throw Error(Errc::NotEnrolled, "'" + student + "' is not enrolled in " + cls);
    }
    IdSet resources;
    for (const auto& topic : store.instances_of(cls, true)) {
      if (!is_topic(store, topic)) continue;
      auto covering = store.object_subjects("contains", topic);
      resources.insert(covering.begin(), covering.end());
    }
    std::vector<ResourceRecord> out;
    for (const auto& id : rank_resources(store, resources, learner_style(store, student))) {
      out.push_back(resource_of(store, id));
    }
    return out;
  });
}

void Catalog::record_survey(const UserAccount& actor, const vark::VarkScores& scores) {
  require(permits(actor.role, Operation::TakeSurvey), "only students take the survey");
  const auto style = vark::classify(scores);
  store_.write([&](OntologyStore& store) {
    if (account_of(store, actor.individual).role != Role::Student) {
      throw Error(Errc::Forbidden, "only students take the survey");
    }
    store.assert_data("VARK", actor.individual, std::string(vark::to_string(style)));
    store.assert_data("varkScores", actor.individual, vark::to_string(scores));
  });
}

UserAccount Catalog::account(const Id& individual) const {
  return store_.read([&](const OntologyStore& store) { return account_of(store, individual); });
}

std::optional<UserAccount> Catalog::find_by_userid(const std::string& userid) const {
  return store_.read([&](const OntologyStore& store) { return find_account(store, userid); });
}

std::vector<CourseRecord> Catalog::courses() const {
  return store_.read([](const OntologyStore& store) { return all_courses(store); });
}

} // namespace olms

#include "olms/service.hpp"

#include "olms/dl_query.hpp"
#include "olms/error.hpp"
#include "olms/persistence.hpp"

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace olms {

using json = nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, const Error& e) {
  json body{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    body["offset"] = pe->offset();
  }
  reply(res, status_for(e.code()), body);
}

// Runs a handler body, turning every failure into the JSON error envelope.
template <class F>
void guarded(httplib::Response& res, F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    reply_error(res, e);
  } catch (const json::exception& e) {
    reply_error(res, Error(Errc::InvalidArgument, std::string("malformed request body: ") + e.what()));
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    reply(res, 500, {{"error", "Internal"}, {"detail", "internal server error"}});
  }
}

json body_of(const httplib::Request& req) {
  auto body = json::parse(req.body);
  if (!body.is_object()) {
    throw Error(Errc::InvalidArgument, "request body must be a JSON object");
  }
  return body;
}

template <class T>
T field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) {
    throw Error(Errc::InvalidArgument, std::string("missing field '") + key + "'");
  }
  return it->get<T>();
}

std::string bearer(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  constexpr std::string_view prefix = "Bearer ";
  if (!header.starts_with(prefix)) {
    return {};
  }
  return header.substr(prefix.size());
}

json outcome_json(const quiz::Outcome& outcome) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, quiz::Correct>) {
          return {{"outcome", "correct"}};
        } else if constexpr (std::is_same_v<T, quiz::Hint>) {
          return {{"outcome", "hint"}, {"hint", o.text}};
        } else {
          return {{"outcome", "recommendation"}, {"resource", o.resource}, {"path", o.path}};
        }
      },
      outcome);
}

json resource_json(const ResourceRecord& r) {
  return {{"id", r.id},         {"kind", r.kind},         {"path", r.path},
          {"format", r.format}, {"uploader", r.uploader}, {"topics", r.topics}};
}

constexpr std::initializer_list<Role> kAnyRole = {Role::Admin, Role::Teacher, Role::Student,
                                                  Role::Manager};

} // namespace

int status_for(Errc code) noexcept {
  switch (code) {
    case Errc::Unauthorized:
    case Errc::InvalidCredentials:
      return 401;
    case Errc::Forbidden:
    case Errc::SelfDeletion:
      return 403;
    case Errc::UnknownClass:
    case Errc::UnknownParent:
    case Errc::UnknownEntity:
    case Errc::UnknownName:
    case Errc::UnknownLearner:
    case Errc::UnknownTopic:
    case Errc::UnknownQuestion:
    case Errc::UnknownUser:
    case Errc::UnknownCourse:
    case Errc::NoResourceForTopic:
    case Errc::AssertionNotFound:
      return 404;
    case Errc::DuplicateId:
    case Errc::DuplicateUserid:
    case Errc::AlreadyEnrolled:
    case Errc::AlreadyResolved:
    case Errc::InverseAlreadyBound:
    case Errc::IdCollidesWithClass:
    case Errc::ClassInUse:
    case Errc::NotEnrolled:
    case Errc::MissingStyle:
      return 409;
    default:
      return 400;
  }
}

auth::AuthToken login(const auth::CredentialStore& credentials, auth::TokenRegistry& tokens,
                      const std::string& userid, const std::string& password) {
  const Role role = credentials.verify(userid, password);
  return tokens.issue(userid, role);
}

UserAccount authorize(auth::TokenRegistry& tokens, const SharedStore& store,
                      const std::string& token, std::initializer_list<Role> required,
                      std::int64_t now) {
  const auto resolved = tokens.resolve(token, now);
  auto account = store.read(
      [&](const OntologyStore& s) { return find_account(s, resolved.userid); });
  if (!account) {
    // The login outlived its user.
    throw Error(Errc::Unauthorized, "token owner no longer exists");
  }
  if (account->role != Role::Admin &&
      std::find(required.begin(), required.end(), account->role) == required.end()) {
    throw Error(Errc::Forbidden,
                "role " + std::string(to_string(account->role)) + " may not call this endpoint");
  }
  return *account;
}

// ---------------------------------------------------------------------------

Service::Service(ServiceConfig config)
    : config_(std::move(config)),
      store_(load_ontology_file(config_.ontology)),
      credentials_(auth::CredentialStore::load(config_.credentials, config_.password_iterations)),
      tokens_(config_.token_ttl_seconds),
      catalog_(store_, credentials_),
      questionnaire_(vark::load_questionnaire(config_.questionnaire
                                                  ? read_file(*config_.questionnaire)
                                                  : std::string(vark::default_questionnaire()))),
      quiz_bank_(quiz::load_quiz_bank(config_.quiz_bank ? read_file(*config_.quiz_bank)
                                                        : std::string(quiz::default_quiz_bank()))),
      server_(std::make_unique<httplib::Server>()) {
  install_routes();
  spdlog::info("loaded {} axioms from {}",
               store_.read([](const OntologyStore& s) { return axiom_count(s); }),
               config_.ontology.string());
}

Service::~Service() = default;

int Service::bind() {
  int port = config_.port == 0 ? server_->bind_to_any_port(config_.host)
                               : (server_->bind_to_port(config_.host, config_.port)
                                      ? config_.port
                                      : -1);
  if (port < 0) {
    throw Error(Errc::InvalidArgument,
                "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  spdlog::info("listening on {}:{}", config_.host, port);
  return port;
}

void Service::run() { server_->listen_after_bind(); }

void Service::stop() { server_->stop(); }

void Service::persist() {
  save_ontology_file(store_.snapshot(), config_.ontology);
  credentials_.save(config_.credentials);
  spdlog::info("saved ontology to {}", config_.ontology.string());
}

std::shared_ptr<Service::SessionEntry> Service::session(const std::string& id,
                                                        const UserAccount& owner) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  // Another learner's session is reported as missing.
  if (it == sessions_.end() || it->second->session.learner() != owner.individual) {
    throw Error(Errc::UnknownEntity, "no quiz session '" + id + "'");
  }
  return it->second;
}

void Service::install_routes() {
  auto& svr = *server_;

  svr.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto axioms = store_.read([](const OntologyStore& s) { return axiom_count(s); });
      reply(res, 200, {{"status", "ok"}, {"axioms", axioms}});
    });
  });

  svr.Post("/login", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = body_of(req);
      auto token = login(credentials_, tokens_, field<std::string>(body, "userid"),
                         field<std::string>(body, "password"));
      auto account = catalog_.find_by_userid(token.userid);
      reply(res, 200,
            {{"token", token.token},
             {"role", std::string(to_string(token.role))},
             {"id", account ? account->individual : ""},
             {"expiry", token.expiry}});
    });
  });

  // -- users ---------------------------------------------------------------

  svr.Post("/users", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Admin, Role::Teacher});
      auto body = body_of(req);
      auto role = role_from_string(field<std::string>(body, "role"));
      if (!role) {
        throw Error(Errc::InvalidArgument, "unknown role");
      }
      std::optional<Id> id;
      if (body.contains("id")) id = body["id"].get<std::string>();
      auto created = catalog_.add_user(actor, *role, field<std::string>(body, "userid"),
                                       field<std::string>(body, "name"), id);
      reply(res, 201,
            {{"id", created.account.individual}, {"initialPassword", created.initial_password}});
    });
  });

  svr.Delete(R"(/users/([A-Za-z_][A-Za-z0-9_]*))",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 auto actor = authorize(tokens_, store_, bearer(req), {Role::Admin});
                 const Id target = req.matches[1];
                 auto victim = catalog_.account(target);
                 catalog_.delete_user(actor, target);
                 tokens_.revoke_user(victim.userid);
                 reply(res, 200, {{"deleted", target}});
               });
             });

  // -- courses -------------------------------------------------------------

  svr.Get("/courses", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      authorize(tokens_, store_, bearer(req), kAnyRole);
      json list = json::array();
      for (const auto& c : catalog_.courses()) {
        list.push_back({{"id", c.cls}, {"course", c.course}});
      }
      reply(res, 200, {{"courses", list}});
    });
  });

  svr.Post("/courses", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Admin, Role::Teacher});
      auto body = body_of(req);
      auto parents = field<std::vector<std::string>>(body, "parents");
      auto record = catalog_.add_course(actor, field<std::string>(body, "id"),
                                        IdSet(parents.begin(), parents.end()));
      reply(res, 201, {{"id", record.cls}, {"course", record.course}});
    });
  });

  svr.Delete(R"(/courses/([A-Za-z_][A-Za-z0-9_]*))",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 auto actor = authorize(tokens_, store_, bearer(req), {Role::Admin});
                 catalog_.delete_course(actor, req.matches[1]);
                 reply(res, 200, {{"deleted", std::string(req.matches[1])}});
               });
             });

  svr.Post(R"(/courses/([A-Za-z_][A-Za-z0-9_]*)/enroll)",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               auto actor = authorize(tokens_, store_, bearer(req), {Role::Student});
               catalog_.enroll(actor, req.matches[1]);
               reply(res, 200, {{"enrolled", actor.individual},
                                {"course", std::string(req.matches[1])}});
             });
           });

  svr.Post(R"(/courses/([A-Za-z_][A-Za-z0-9_]*)/teacher)",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               auto actor = authorize(tokens_, store_, bearer(req), {Role::Admin});
               auto body = body_of(req);
               auto teacher = field<std::string>(body, "teacher");
               catalog_.assign_teacher(actor, teacher, req.matches[1]);
               reply(res, 200, {{"teacher", teacher}, {"course", std::string(req.matches[1])}});
             });
           });

  svr.Get(R"(/courses/([A-Za-z_][A-Za-z0-9_]*)/students)",
          [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              authorize(tokens_, store_, bearer(req), {Role::Teacher, Role::Manager});
              json list = json::array();
              for (const auto& s : catalog_.list_enrolled(req.matches[1])) {
                list.push_back({{"id", s.id}, {"name", s.name}, {"userid", s.userid}});
              }
              reply(res, 200, {{"students", list}});
            });
          });

  // -- resources -----------------------------------------------------------

  svr.Post("/resources", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor =
          authorize(tokens_, store_, bearer(req), {Role::Teacher, Role::Manager});
      auto body = body_of(req);
      auto topics = field<std::vector<std::string>>(body, "topics");
      auto record = catalog_.upload_resource(
          actor, field<std::string>(body, "kind"), field<std::string>(body, "id"),
          field<std::string>(body, "path"), field<std::string>(body, "format"),
          IdSet(topics.begin(), topics.end()));
      reply(res, 201, resource_json(record));
    });
  });

  svr.Get(R"(/learners/([A-Za-z_][A-Za-z0-9_]*)/resources)",
          [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              auto actor = authorize(tokens_, store_, bearer(req),
                                     {Role::Student, Role::Teacher, Role::Manager});
              const Id learner = req.matches[1];
              if (actor.role == Role::Student && actor.individual != learner) {
                throw Error(Errc::Forbidden, "students can only view their own resources");
              }
              if (!req.has_param("course")) {
                throw Error(Errc::InvalidArgument, "missing query parameter 'course'");
              }
              json list = json::array();
              for (const auto& r :
                   catalog_.resources_for_learner(learner, req.get_param_value("course"))) {
                list.push_back(resource_json(r));
              }
              reply(res, 200, {{"resources", list}});
            });
          });

  // -- survey --------------------------------------------------------------

  svr.Get("/survey", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      authorize(tokens_, store_, bearer(req), kAnyRole);
      json list = json::array();
      for (const auto& q : questionnaire_) {
        list.push_back({{"id", q.id}, {"prompt", q.prompt}, {"options", q.options}});
      }
      reply(res, 200, {{"questions", list}});
    });
  });

  svr.Post("/survey", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Student});
      auto body = body_of(req);
      auto answers = field<std::vector<int>>(body, "answers");
      auto scores = vark::score_survey(questionnaire_, answers);
      catalog_.record_survey(actor, scores);
      reply(res, 200,
            {{"scores", {{"v", scores.v}, {"a", scores.a}, {"r", scores.r}, {"k", scores.k}}},
             {"style", std::string(vark::to_string(vark::classify(scores)))}});
    });
  });

  // -- quiz ----------------------------------------------------------------

  svr.Get("/quiz", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      authorize(tokens_, store_, bearer(req), kAnyRole);
      json list = json::array();
      for (const auto& q : quiz_bank_) {
        list.push_back(
            {{"id", q.id}, {"topic", q.topic}, {"prompt", q.prompt}, {"options", q.options}});
      }
      reply(res, 200, {{"questions", list}});
    });
  });

  svr.Post("/quiz", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Student});
      if (!permits(actor.role, Operation::TakeQuiz)) {
        throw Error(Errc::Forbidden, "only students take quizzes");
      }
      auto body = body_of(req);
      std::vector<quiz::QuizQuestion> picked;
      for (const auto& id : field<std::vector<std::string>>(body, "questions")) {
        auto it = std::find_if(quiz_bank_.begin(), quiz_bank_.end(),
                               [&](const auto& q) { return q.id == id; });
        if (it == quiz_bank_.end()) {
          throw Error(Errc::UnknownQuestion, "no question '" + id + "' in the quiz bank");
        }
        picked.push_back(*it);
      }
      auto session_id = auth::random_hex(16);
      auto session = store_.read([&](const OntologyStore& s) {
        return quiz::start_session(session_id, s, actor.individual, std::move(picked));
      });
      {
        std::lock_guard lock(sessions_mutex_);
        sessions_.emplace(session_id, std::make_shared<SessionEntry>(std::move(session)));
      }
      reply(res, 201, {{"sessionId", session_id}});
    });
  });

  svr.Post(R"(/quiz/([0-9a-f]+)/answer)", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Student});
      auto entry = session(req.matches[1], actor);
      auto body = body_of(req);
      auto question = field<std::string>(body, "question");
      auto answer = field<int>(body, "answer");
      std::lock_guard lock(entry->mutex);
      auto outcome = store_.read([&](const OntologyStore& s) {
        return entry->session.submit_answer(s, question, answer);
      });
      reply(res, 200, outcome_json(outcome));
    });
  });

  svr.Get(R"(/quiz/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto actor = authorize(tokens_, store_, bearer(req), {Role::Student});
      auto entry = session(req.matches[1], actor);
      std::lock_guard lock(entry->mutex);
      auto report = entry->session.report();
      json questions = json::array();
      for (const auto& q : report.questions) {
        json outcomes = json::array();
        for (const auto& o : q.outcomes) outcomes.push_back(outcome_json(o));
        questions.push_back({{"question", q.question},
                             {"state", std::string(quiz::to_string(q.state))},
                             {"outcomes", outcomes}});
      }
      reply(res, 200,
            {{"questions", questions},
             {"firstTry", report.first_try},
             {"afterHint", report.after_hint},
             {"recommended", report.recommended}});
    });
  });

  // -- read-only ontology access -------------------------------------------

  svr.Get("/query", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!config_.public_read) {
        authorize(tokens_, store_, bearer(req), kAnyRole);
      }
      if (!req.has_param("dl")) {
        throw Error(Errc::InvalidArgument, "missing query parameter 'dl'");
      }
      auto expr = dl::parse_query(req.get_param_value("dl"));
      auto result = store_.read([&](const OntologyStore& s) { return dl::evaluate(*expr, s); });
      reply(res, 200, {{"individuals", result}});
    });
  });

  svr.Get("/export", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!config_.public_read) {
        authorize(tokens_, store_, bearer(req), kAnyRole);
      }
      res.status = 200;
      res.set_content(store_.read([](const OntologyStore& s) { return serialize(s); }),
                      "text/plain; charset=utf-8");
    });
  });
}

} // namespace olms

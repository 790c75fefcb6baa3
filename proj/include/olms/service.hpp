#pragma once

#include "olms/assessment.hpp"
#include "olms/auth.hpp"
#include "olms/catalog.hpp"
#include "olms/error.hpp"
#include "olms/shared_store.hpp"
#include "olms/vark.hpp"

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace olms {

struct ServiceConfig {
  std::filesystem::path ontology;
  std::filesystem::path credentials;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // GET /query and GET /export answer without a token.
  bool public_read = false;
  std::optional<std::filesystem::path> questionnaire;  // default: built-in
  std::optional<std::filesystem::path> quiz_bank;      // default: built-in
  std::int64_t token_ttl_seconds = 3600;
  int password_iterations = auth::kDefaultIterations;
};

// Exchanges a userid/password pair for a fresh token.
auth::AuthToken login(const auth::CredentialStore& credentials, auth::TokenRegistry& tokens,
                      const std::string& userid, const std::string& password);

// Resolves a bearer token to the account behind it. Admin passes every role
// check. Throws Error(Unauthorized) or Error(Forbidden).
UserAccount authorize(auth::TokenRegistry& tokens, const SharedStore& store,
                      const std::string& token, std::initializer_list<Role> required,
                      std::int64_t now = auth::now_seconds());

// HTTP status for an engine error code.
int status_for(Errc code) noexcept;

/// The single-node application server: loads the ontology and credential
/// files once, serves the REST surface, and writes both files back on
/// shutdown.
class Service {
public:
  // Loads every input file; throws olms::Error on the first failure.
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the listening socket and returns the bound port.
  int bind();
  // Serves until stop() is called. bind() must have succeeded.
  void run();
  void stop();
  // Writes the ontology and credential files.
  void persist();

  SharedStore& store() noexcept { return store_; }
  const ServiceConfig& config() const noexcept { return config_; }

private:
  struct SessionEntry {
    std::mutex mutex;
    quiz::QuizSession session;
    explicit SessionEntry(quiz::QuizSession s) : session(std::move(s)) {}
  };

  void install_routes();
  std::shared_ptr<SessionEntry> session(const std::string& id, const UserAccount& owner);

  ServiceConfig config_;
  SharedStore store_;
  auth::CredentialStore credentials_;
  auth::TokenRegistry tokens_;
  Catalog catalog_;
  std::vector<vark::SurveyQuestion> questionnaire_;
  std::vector<quiz::QuizQuestion> quiz_bank_;

  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;

  std::unique_ptr<httplib::Server> server_;
};

} // namespace olms

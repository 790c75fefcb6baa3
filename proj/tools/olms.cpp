// Command-line front end: run the server, query or rewrite an ontology file,
// write the seed fixtures.
#include "olms/auth.hpp"
#include "olms/dl_query.hpp"
#include "olms/error.hpp"
#include "olms/persistence.hpp"
#include "olms/service.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <pthread.h>

#include <csignal>
#include <filesystem>
#include <iostream>
#include <thread>

namespace {

std::string describe(const olms::Error& e) {
  std::string text = std::string(olms::to_string(e.code())) + ": " + e.detail();
  if (const auto* de = dynamic_cast<const olms::DocumentError*>(&e); de && de->line() > 0) {
    text += " (line " + std::to_string(de->line()) + ")";
  }
  return text;
}

void require_file(const std::filesystem::path& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw olms::Error(olms::Errc::InvalidArgument,
                      std::string(what) + " file not found: " + path.string());
  }
}

int serve(const olms::ServiceConfig& config) {
  require_file(config.ontology, "ontology");
  require_file(config.credentials, "credential");
  olms::Service service(config);
  service.bind();

  // Signals are taken synchronously by a dedicated thread; every other
  // thread, including the server's workers, inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigaddset(&signals, SIGUSR1);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    if (sig != SIGUSR1) spdlog::info("signal {} received, shutting down", sig);
    service.stop();
  });

  service.run();
  // run() can also return on its own; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGUSR1);
  waiter.join();
  service.persist();
  return 0;
}

int query(const std::filesystem::path& ontology, const std::string& text) {
  require_file(ontology, "ontology");
  auto store = olms::load_ontology_file(ontology);
  for (const auto& id : olms::dl::evaluate(text, store)) {
    std::cout << id << '\n';
  }
  return 0;
}

int rewrite(const std::filesystem::path& ontology, const std::optional<std::filesystem::path>& out) {
  require_file(ontology, "ontology");
  auto store = olms::load_ontology_file(ontology);
  olms::save_ontology_file(store, out.value_or(ontology));
  return 0;
}

int seed(const std::filesystem::path& out, const std::optional<std::filesystem::path>& creds,
         int iterations) {
  olms::save_ontology_file(olms::load_seed(), out);
  if (creds) {
    olms::auth::seed_credentials(iterations).save(*creds);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-backed learning management engine"};
  app.require_subcommand(1);

  olms::ServiceConfig config;
  std::string log_level = "info";
  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--ontology", config.ontology, "Ontology file")->required();
  serve_cmd->add_option("--credentials", config.credentials, "Credential file")->required();
  serve_cmd->add_option("--host", config.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", config.port, "Listen port, 0 for any")->capture_default_str();
  serve_cmd->add_flag("--public-read", config.public_read,
                      "Serve /query and /export without a token");
  serve_cmd->add_option("--questionnaire", config.questionnaire, "VARK questionnaire file");
  serve_cmd->add_option("--quiz-bank", config.quiz_bank, "Quiz bank file");
  serve_cmd->add_option("--token-ttl", config.token_ttl_seconds, "Token lifetime in seconds")
      ->capture_default_str();
  serve_cmd->add_option("--log-level", log_level, "trace|debug|info|warn|error")
      ->capture_default_str();

  std::filesystem::path ontology;
  std::string dl_text;
  auto* query_cmd = app.add_subcommand("query", "Evaluate a DL query and print the individuals");
  query_cmd->add_option("--ontology", ontology, "Ontology file")->required();
  query_cmd->add_option("query", dl_text, "DL query text")->required();

  std::optional<std::filesystem::path> out;
  auto* save_cmd = app.add_subcommand("save", "Rewrite an ontology file in canonical form");
  save_cmd->add_option("--ontology", ontology, "Ontology file")->required();
  save_cmd->add_option("--out", out, "Destination (default: rewrite in place)");

  std::filesystem::path seed_out;
  std::optional<std::filesystem::path> creds_out;
  int iterations = olms::auth::kDefaultIterations;
  auto* seed_cmd = app.add_subcommand("seed", "Write the seed ontology and logins");
  seed_cmd->add_option("--out", seed_out, "Ontology destination")->required();
  seed_cmd->add_option("--credentials-out", creds_out, "Credential destination");
  seed_cmd->add_option("--iterations", iterations, "PBKDF2 iterations")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) {
      spdlog::set_level(spdlog::level::from_str(log_level));
      return serve(config);
    }
    if (*query_cmd) return query(ontology, dl_text);
    if (*save_cmd) return rewrite(ontology, out);
    if (*seed_cmd) return seed(seed_out, creds_out, iterations);
  } catch (const olms::ParseError& e) {
    std::cerr << "olms: parse error at offset " << e.offset() << ": expected " << e.expected()
              << '\n';
    return 2;
  } catch (const olms::Error& e) {
    std::cerr << "olms: " << describe(e) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "olms: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

#include "olms/auth.hpp"
#include "olms/error.hpp"
#include "olms/persistence.hpp"
#include "olms/service.hpp"
#include "support/live_service.hpp"

#include <doctest.h>

using namespace olms;
using namespace olms::auth;

namespace {

constexpr int kIter = olms::testing::kFastIterations;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an olms::Error");
  return Errc::InvalidArgument;
}

} // namespace

TEST_CASE("password hashes are salted and verifiable") {
  auto a = hash_password("secret", kIter);
  auto b = hash_password("secret", kIter);
  CHECK(a != b);
  CHECK(a.starts_with("pbkdf2-sha256$1000$"));
  CHECK(a.find("secret") == std::string::npos);
  CHECK(verify_password("secret", a));
  CHECK_FALSE(verify_password("Secret", a));
  CHECK_FALSE(verify_password("secret", "pbkdf2-sha256$1000$zz$00"));
  CHECK_FALSE(verify_password("secret", "md5$abc"));
  CHECK_FALSE(verify_password("secret", ""));
}

TEST_CASE("random_hex has the requested width and does not repeat") {
  auto a = random_hex(16);
  CHECK(a.size() == 32);
  CHECK(a.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(random_hex(16) != a);
}

TEST_CASE("credential store") {
  auto store = seed_credentials(kIter);
  CHECK(store.verify("abc05@gmail.com", "abc-pass") == Role::Student);
  CHECK(store.verify("admin@thesis-mlearning.local", "admin-pass") == Role::Admin);

  Error wrong(Errc::InvalidArgument, ""), unknown(Errc::InvalidArgument, "");
  try {
    store.verify("abc05@gmail.com", "nope");
  } catch (const Error& e) {
    wrong = e;
  }
  try {
    store.verify("ghost@x.org", "nope");
  } catch (const Error& e) {
    unknown = e;
  }
  CHECK(wrong.code() == Errc::InvalidCredentials);
  CHECK(unknown.code() == Errc::InvalidCredentials);
  CHECK(wrong.detail() == unknown.detail());

  CHECK(code_of([&] { store.add("abc05@gmail.com", Role::Student, "x"); }) ==
        Errc::DuplicateUserid);
  auto pw = store.issue("new@x.org", Role::Manager);
  CHECK(pw.size() == 24);
  CHECK(store.verify("new@x.org", pw) == Role::Manager);
  store.revoke("new@x.org");
  CHECK_FALSE(store.has_userid("new@x.org"));
}

TEST_CASE("credential file round-trip keeps hashes only") {
  olms::testing::TempDir dir;
  auto path = dir.path() / "creds.txt";
  seed_credentials(kIter).save(path);
  auto perms = std::filesystem::status(path).permissions();
  CHECK((perms & std::filesystem::perms::others_read) == std::filesystem::perms::none);

  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (const auto& login : seed_logins()) CHECK(text.find(login.password) == std::string::npos);

  auto loaded = CredentialStore::load(path, kIter);
  CHECK(loaded.entries().size() == 3);
  CHECK(loaded.verify("xyz05@gmail.com", "xyz-pass") == Role::Teacher);
  CHECK(loaded.serialize() == text);
}

TEST_CASE("credential file errors") {
  auto line_of = [](std::string_view doc) -> std::size_t {
    try {
      CredentialStore::parse(doc);
    } catch (const DocumentError& e) {
      return e.line();
    }
    FAIL("accepted");
    return 0;
  };
  CHECK(line_of("# c\nuser Admin\n") == 2);
  CHECK(line_of("user Wizard pbkdf2-sha256$1$00$00\n") == 1);
  CHECK(line_of("user Admin plain\n") == 1);
  CHECK(line_of("u Admin a$b$c$d\nu Student a$b$c$d\n") == 2);
  CHECK(CredentialStore::parse("\n# nothing\n").entries().empty());
}

TEST_CASE("tokens expire and can be revoked") {
  TokenRegistry tokens(60);
  auto t = tokens.issue("abc05@gmail.com", Role::Student, 1000);
  CHECK(t.token.size() == 64);
  CHECK(t.expiry == 1060);
  CHECK(tokens.resolve(t.token, 1059).userid == "abc05@gmail.com");
  CHECK(code_of([&] { tokens.resolve(t.token, 1060); }) == Errc::Unauthorized);
  // Dropped on sight: now unknown even for an earlier clock.
  CHECK(code_of([&] { tokens.resolve(t.token, 1000); }) == Errc::Unauthorized);
  CHECK(code_of([&] { tokens.resolve("forged", 1000); }) == Errc::Unauthorized);

  auto u = tokens.issue("abc05@gmail.com", Role::Student, 1000);
  tokens.revoke_user("abc05@gmail.com");
  CHECK(code_of([&] { tokens.resolve(u.token, 1001); }) == Errc::Unauthorized);
}

TEST_CASE("login and authorize") {
  auto creds = seed_credentials(kIter);
  TokenRegistry tokens(3600);
  SharedStore store(load_seed());

  auto admin = login(creds, tokens, "admin@thesis-mlearning.local", "admin-pass");
  auto student = login(creds, tokens, "abc05@gmail.com", "abc-pass");
  CHECK(student.role == Role::Student);
  CHECK(code_of([&] { login(creds, tokens, "abc05@gmail.com", "bad"); }) ==
        Errc::InvalidCredentials);

  CHECK(authorize(tokens, store, admin.token, {Role::Teacher}).individual == "adminUser");
  CHECK(code_of([&] { authorize(tokens, store, student.token, {Role::Admin}); }) ==
        Errc::Forbidden);
  CHECK(authorize(tokens, store, student.token, {Role::Student}).individual == "abcStudent");
  CHECK(code_of([&] {
          authorize(tokens, store, student.token, {Role::Student}, student.expiry + 1);
        }) == Errc::Unauthorized);
  CHECK(code_of([&] { authorize(tokens, store, "", {Role::Student}); }) == Errc::Unauthorized);
}

TEST_CASE("error codes map to HTTP status classes") {
  CHECK(status_for(Errc::ParseError) == 400);
  CHECK(status_for(Errc::BadFormatToken) == 400);
  CHECK(status_for(Errc::Unauthorized) == 401);
  CHECK(status_for(Errc::InvalidCredentials) == 401);
  CHECK(status_for(Errc::Forbidden) == 403);
  CHECK(status_for(Errc::UnknownCourse) == 404);
  CHECK(status_for(Errc::UnknownUser) == 404);
  CHECK(status_for(Errc::DuplicateUserid) == 409);
  CHECK(status_for(Errc::AlreadyEnrolled) == 409);
  CHECK(status_for(Errc::AlreadyResolved) == 409);
}

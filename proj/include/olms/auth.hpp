#pragma once

#include "olms/catalog.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace olms::auth {

inline constexpr int kDefaultIterations = 100'000;

// Hex string of `bytes` bytes from the OpenSSL CSPRNG.
std::string random_hex(std::size_t bytes);

// "pbkdf2-sha256$<iterations>$<salt hex>$<digest hex>"
std::string hash_password(std::string_view password, int iterations = kDefaultIterations);
// Constant-time digest comparison; false for malformed encodings.
bool verify_password(std::string_view password, std::string_view encoded);

struct Credential {
  std::string userid;
  std::string password_hash;
  Role role;
};

// Salted-hash login store. File format, one entry per line:
//   <userid> <Role> <password hash>
// with '#' comments and blank lines ignored.
class CredentialStore final : public CredentialDirectory {
public:
  explicit CredentialStore(int iterations = kDefaultIterations) : iterations_(iterations) {}
  CredentialStore(CredentialStore&& other) noexcept;
  CredentialStore& operator=(CredentialStore&& other) noexcept;

  static CredentialStore parse(std::string_view document, int iterations = kDefaultIterations);
  static CredentialStore load(const std::filesystem::path& path,
                              int iterations = kDefaultIterations);
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  void add(const std::string& userid, Role role, std::string_view password);
  // Role of the matching entry; Error(InvalidCredentials) for an unknown
  // userid and a wrong password alike.
  Role verify(const std::string& userid, std::string_view password) const;
  std::vector<Credential> entries() const;

  bool has_userid(const std::string& userid) const override;
  std::string issue(const std::string& userid, Role role) override;
  void revoke(const std::string& userid) override;

private:
  int iterations_;
  mutable std::mutex mutex_;
  std::map<std::string, Credential> entries_;
};

struct AuthToken {
  std::string token;
  std::string userid;
  Role role;
  std::int64_t expiry;  // seconds since epoch
};

std::int64_t now_seconds();

class TokenRegistry {
public:
  explicit TokenRegistry(std::int64_t ttl_seconds = 3600) : ttl_(ttl_seconds) {}

  AuthToken issue(const std::string& userid, Role role, std::int64_t now = now_seconds());
  // Error(Unauthorized) for unknown or expired tokens. Expired tokens are
  // dropped on sight.
  AuthToken resolve(const std::string& token, std::int64_t now = now_seconds());
  void revoke_user(const std::string& userid);

private:
  std::int64_t ttl_;
  std::mutex mutex_;
  std::map<std::string, AuthToken> tokens_;
};

struct SeedLogin {
  std::string userid;
  Role role;
  std::string password;
};

// Fixture passwords for the users of the seed ontology.
std::vector<SeedLogin> seed_logins();
CredentialStore seed_credentials(int iterations = kDefaultIterations);

} // namespace olms::auth

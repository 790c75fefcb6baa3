#include "olms/auth.hpp"

#include "olms/error.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

namespace olms::auth {

namespace {

constexpr std::size_t kSaltBytes = 16;
constexpr std::size_t kDigestBytes = 32;
constexpr std::string_view kScheme = "pbkdf2-sha256";

std::string to_hex(const unsigned char* data, std::size_t n) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(n * 2, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = digits[data[i] >> 4];
    out[2 * i + 1] = digits[data[i] & 0x0f];
  }
  return out;
}

bool from_hex(std::string_view hex, std::vector<unsigned char>& out) {
  if (hex.size() % 2 != 0) return false;
  out.resize(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [ptr, ec] = std::from_chars(hex.data() + 2 * i, hex.data() + 2 * i + 2, out[i], 16);
    if (ec != std::errc{} || ptr != hex.data() + 2 * i + 2) return false;
  }
  return true;
}

std::vector<unsigned char> derive(std::string_view password, const std::vector<unsigned char>& salt,
                                  int iterations) {
  std::vector<unsigned char> digest(kDigestBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), iterations, EVP_sha256(),
                        static_cast<int>(digest.size()), digest.data()) != 1) {
    throw std::runtime_error("PBKDF2 failed");
  }
  return digest;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? at : at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

} // namespace

std::string random_hex(std::size_t bytes) {
  std::vector<unsigned char> buf(bytes);
  if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  return to_hex(buf.data(), buf.size());
}

std::string hash_password(std::string_view password, int iterations) {
  std::vector<unsigned char> salt(kSaltBytes);
  if (RAND_bytes(salt.data(), static_cast<int>(salt.size())) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  auto digest = derive(password, salt, iterations);
  return std::string(kScheme) + "$" + std::to_string(iterations) + "$" +
         to_hex(salt.data(), salt.size()) + "$" + to_hex(digest.data(), digest.size());
}

bool verify_password(std::string_view password, std::string_view encoded) {
  auto parts = split(encoded, '$');
  if (parts.size() != 4 || parts[0] != kScheme) return false;
  int iterations = 0;
  auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), iterations);
  if (ec != std::errc{} || iterations <= 0) return false;
  std::vector<unsigned char> salt;
  std::vector<unsigned char> expected;
  if (!from_hex(parts[2], salt) || !from_hex(parts[3], expected) ||
      expected.size() != kDigestBytes) {
    return false;
  }
  auto actual = derive(password, salt, iterations);
  return CRYPTO_memcmp(actual.data(), expected.data(), kDigestBytes) == 0;
}

// ---------------------------------------------------------------------------

CredentialStore::CredentialStore(CredentialStore&& other) noexcept
    : iterations_(other.iterations_) {
  std::lock_guard lock(other.mutex_);
  entries_ = std::move(other.entries_);
}

CredentialStore& CredentialStore::operator=(CredentialStore&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    iterations_ = other.iterations_;
    entries_ = std::move(other.entries_);
  }
  return *this;
}

CredentialStore CredentialStore::parse(std::string_view document, int iterations) {
  CredentialStore store(iterations);
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view text = document.substr(pos, eol - pos);
    pos = eol + 1;
    ++line;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (text.empty() || text.front() == '#') continue;

    auto fields = split(text, ' ');
    if (fields.size() != 3 || fields[0].empty()) {
      throw DocumentError(Errc::SyntaxError, line, "expected '<userid> <role> <hash>'");
    }
    auto role = role_from_string(fields[1]);
    if (!role) {
      throw DocumentError(Errc::SyntaxError, line, "unknown role '" + std::string(fields[1]) + "'");
    }
    if (split(fields[2], '$').size() != 4) {
      throw DocumentError(Errc::SyntaxError, line, "malformed password hash");
    }
    std::string userid(fields[0]);
    if (store.entries_.contains(userid)) {
      throw DocumentError(Errc::DuplicateUserid, line, "userid '" + userid + "' listed twice");
    }
    store.entries_.emplace(userid, Credential{userid, std::string(fields[2]), *role});
  }
  return store;
}

CredentialStore CredentialStore::load(const std::filesystem::path& path, int iterations) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::InvalidArgument, "cannot open credential file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), iterations);
}

std::string CredentialStore::serialize() const {
  std::lock_guard lock(mutex_);
  std::string out = "# userid role password-hash\n";
  for (const auto& [userid, c] : entries_) {
    out += userid + " " + std::string(to_string(c.role)) + " " + c.password_hash + "\n";
  }
  return out;
}

void CredentialStore::save(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(Errc::InvalidArgument, "cannot write credential file " + tmp.string());
    }
    out << serialize();
  }
  std::filesystem::permissions(tmp, std::filesystem::perms::owner_read |
                                        std::filesystem::perms::owner_write);
  std::filesystem::rename(tmp, path);
}

void CredentialStore::add(const std::string& userid, Role role, std::string_view password) {
  auto hash = hash_password(password, iterations_);
  std::lock_guard lock(mutex_);
  if (!entries_.emplace(userid, Credential{userid, std::move(hash), role}).second) {
    throw Error(Errc::DuplicateUserid, "userid '" + userid + "' already has a login");
  }
}

Role CredentialStore::verify(const std::string& userid, std::string_view password) const {
  std::string hash;
  std::optional<Role> role;
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(userid); it != entries_.end()) {
      hash = it->second.password_hash;
      role = it->second.role;
    }
  }
  if (!role) {
    // Spend the same PBKDF2 work as for a real account.
    (void)hash_password(password, iterations_);
    throw Error(Errc::InvalidCredentials, "invalid userid or password");
  }
  if (!verify_password(password, hash)) {
    throw Error(Errc::InvalidCredentials, "invalid userid or password");
  }
  return *role;
}

std::vector<Credential> CredentialStore::entries() const {
  std::lock_guard lock(mutex_);
  std::vector<Credential> out;
  for (const auto& [userid, c] : entries_) out.push_back(c);
  return out;
}

bool CredentialStore::has_userid(const std::string& userid) const {
  std::lock_guard lock(mutex_);
  return entries_.contains(userid);
}

std::string CredentialStore::issue(const std::string& userid, Role role) {
  std::string password = random_hex(12);
  add(userid, role, password);
  return password;
}

void CredentialStore::revoke(const std::string& userid) {
  std::lock_guard lock(mutex_);
  entries_.erase(userid);
}

// ---------------------------------------------------------------------------

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

AuthToken TokenRegistry::issue(const std::string& userid, Role role, std::int64_t now) {
  AuthToken token{random_hex(32), userid, role, now + ttl_};
  std::lock_guard lock(mutex_);
  tokens_[token.token] = token;
  return token;
}

AuthToken TokenRegistry::resolve(const std::string& token, std::int64_t now) {
  std::lock_guard lock(mutex_);
  auto it = tokens_.find(token);
  if (it == tokens_.end()) {
    throw Error(Errc::Unauthorized, "missing or unknown token");
  }
  if (it->second.expiry <= now) {
    tokens_.erase(it);
    throw Error(Errc::Unauthorized, "token expired");
  }
  return it->second;
}

void TokenRegistry::revoke_user(const std::string& userid) {
  std::lock_guard lock(mutex_);
  std::erase_if(tokens_, [&](const auto& entry) { return entry.second.userid == userid; });
}

std::vector<SeedLogin> seed_logins() {
  return {
      {"admin@thesis-mlearning.local", Role::Admin, "admin-pass"},
      {"abc05@gmail.com", Role::Student, "abc-pass"},
      {"xyz05@gmail.com", Role::Teacher, "xyz-pass"},
  };
}

CredentialStore seed_credentials(int iterations) {
  CredentialStore store(iterations);
  for (const auto& login : seed_logins()) {
    store.add(login.userid, login.role, login.password);
  }
  return store;
}

} // namespace olms::auth

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "logitmeta/error.hpp"
#include "logitmeta/game.hpp"

namespace experiments {

// Configuration problem reported with the offending path, e.g. "op.n: expected an integer".
class ConfigError : public logitmeta::InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Typed, path-addressed access to a JSON object of parameters.
class Params {
 public:
  Params(nlohmann::json object, std::string path);

  const std::string& path() const { return path_; }
  const nlohmann::json& raw() const { return j_; }
  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double fallback) const;
  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::string text(const std::string& key) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  std::vector<std::int64_t> integers(const std::string& key, std::vector<std::int64_t> fallback) const;

  Params child(const std::string& key) const;

  // Game from {"family","n","beta","a","b","c","d"} at this level, with defaults.
  logitmeta::GameSpec game(const std::string& family, int n, double beta,
                           logitmeta::RingPayoffs payoffs = {}) const;

  // Throws for any key not in `allowed`.
  void only(const std::set<std::string>& allowed) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  const nlohmann::json* find(const std::string& key) const;

  nlohmann::json j_;
  std::string path_;
};

std::string join_path(const std::string& path, const std::string& key);

}  // namespace experiments

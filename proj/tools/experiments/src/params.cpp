#include "experiments/params.hpp"

#include <cmath>
#include <limits>

namespace experiments {

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

Params::Params(nlohmann::json object, std::string path) : j_(std::move(object)), path_(std::move(path)) {
  if (j_.is_null()) j_ = nlohmann::json::object();
  if (!j_.is_object()) throw ConfigError((path_.empty() ? std::string("config") : path_) + ": expected an object");
}

void Params::fail(const std::string& key, const std::string& message) const {
  throw ConfigError(join_path(path_, key) + ": " + message);
}

const nlohmann::json* Params::find(const std::string& key) const {
  const auto it = j_.find(key);
  return it == j_.end() || it->is_null() ? nullptr : &*it;
}

double Params::number(const std::string& key, double fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_number()) fail(key, "expected a number");
  const double d = v->get<double>();
  if (!std::isfinite(d)) fail(key, "expected a finite number");
  return d;
}

double Params::number(const std::string& key) const {
  if (!find(key)) fail(key, "required number is missing");
  return number(key, 0.0);
}

std::int64_t Params::integer(const std::string& key, std::int64_t fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (v->is_number_integer()) return v->get<std::int64_t>();
  if (v->is_number_float()) {
    // Allow 1e6 style literals as long as they are integral.
    const double d = v->get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e18) return static_cast<std::int64_t>(d);
  }
  fail(key, "expected an integer");
}

std::int64_t Params::integer(const std::string& key) const {
  if (!find(key)) fail(key, "required integer is missing");
  return integer(key, 0);
}

std::uint64_t Params::count(const std::string& key, std::uint64_t fallback) const {
  if (!find(key)) return fallback;
  const auto v = integer(key, 0);
  if (v < 0) fail(key, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::string Params::text(const std::string& key, const std::string& fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) fail(key, "expected a string");
  return v->get<std::string>();
}

std::string Params::text(const std::string& key) const {
  if (!find(key)) fail(key, "required string is missing");
  return text(key, "");
}

bool Params::flag(const std::string& key, bool fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(key, "expected true or false");
  return v->get<bool>();
}

std::vector<double> Params::numbers(const std::string& key, std::vector<double> fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (v->is_number()) return {number(key, 0.0)};
  if (!v->is_array()) fail(key, "expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) fail(key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back((*v)[i].get<double>());
  }
  return out;
}

std::vector<std::int64_t> Params::integers(const std::string& key, std::vector<std::int64_t> fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  if (v->is_number()) return {integer(key, 0)};
  if (!v->is_array()) fail(key, "expected an integer or an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const Params item(nlohmann::json{{"v", (*v)[i]}}, join_path(path_, key + "[" + std::to_string(i) + "]"));
    out.push_back(item.integer("v"));
  }
  return out;
}

Params Params::child(const std::string& key) const {
  const auto* v = find(key);
  return Params(v ? *v : nlohmann::json::object(), join_path(path_, key));
}

logitmeta::GameSpec Params::game(const std::string& family, int n, double beta, logitmeta::RingPayoffs payoffs) const {
  nlohmann::json j;
  j["family"] = text("family", family);
  j["n"] = integer("n", n);
  j["beta"] = number("beta", beta);
  j["a"] = number("a", payoffs.a);
  j["b"] = number("b", payoffs.b);
  j["c"] = number("c", payoffs.c);
  j["d"] = number("d", payoffs.d);
  try {
    return logitmeta::GameSpec::from_json(j);
  } catch (const logitmeta::InvalidArgument& e) {
    throw ConfigError((path_.empty() ? std::string("config") : path_) + ": " + e.what());
  }
}

void Params::only(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : j_.items()) {
    if (!allowed.count(key)) fail(key, "unknown parameter");
  }
}

}  // namespace experiments

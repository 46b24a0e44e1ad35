#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace lampqi {

using Json = nlohmann::ordered_json;

/// Outcome of an exhaustive verifier. Mathematical quantities inside the JSON
/// fields are strings so that big integers survive serialization.
struct VerifyReport {
  Json params = Json::object();
  Json search_space = Json::object();
  std::uint64_t count_checked = 0;
  Json violations = Json::array();  // at most `violation_cap` entries
  std::uint64_t violation_count = 0;
  bool vacuous = false;
  Json extra = Json::object();
  std::optional<double> elapsed_ms;

  bool ok() const { return violation_count == 0; }
};

inline constexpr std::size_t violation_cap = 64;

/// Field order: params, search_space, count_checked, violation_count,
/// violations, vacuous, then `extra` keys, then elapsed_ms (null unless
/// timing was requested).
Json to_json(const VerifyReport& r);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lampqi

#include "lampqi/report.hpp"

namespace lampqi {

Json to_json(const VerifyReport& r) {
  Json j;
  j["params"] = r.params;
  j["search_space"] = r.search_space;
  j["count_checked"] = r.count_checked;
  j["violation_count"] = r.violation_count;
  j["violations"] = r.violations;
  j["vacuous"] = r.vacuous;
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  j["elapsed_ms"] = r.elapsed_ms ? Json(*r.elapsed_ms) : Json(nullptr);
  return j;
}

}  // namespace lampqi

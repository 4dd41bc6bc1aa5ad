#include "idglow/schedules.hpp"

#include <algorithm>

namespace idglow {

const char* schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::zero: return "zero";
    case ScheduleKind::anneal: return "anneal";
    case ScheduleKind::gate: return "gate";
  }
  return "constant";
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
  if (name == "constant") return ScheduleKind::constant;
  if (name == "zero") return ScheduleKind::zero;
  if (name == "anneal") return ScheduleKind::anneal;
  if (name == "gate") return ScheduleKind::gate;
  throw Error(ErrorKind::invalid_schedule,
              "schedules: unknown schedule kind '" + name + "'");
}

ScheduleSpec validate_schedule(const ScheduleSpec& spec) {
  switch (spec.kind) {
    case ScheduleKind::constant:
    case ScheduleKind::zero:
      break;
    case ScheduleKind::anneal:
      if (!(spec.tau >= 0.0 && spec.tau < 1.0)) {
        throw Error(ErrorKind::invalid_schedule,
                    "schedules: anneal requires tau in [0, 1), got " +
                        std::to_string(spec.tau));
      }
      break;
    case ScheduleKind::gate:
      if (!(spec.lo >= 0.0 && spec.hi <= 1.0 && spec.lo < spec.hi)) {
        throw Error(ErrorKind::invalid_schedule,
                    "schedules: gate requires 0 <= lo < hi <= 1, got lo=" +
                        std::to_string(spec.lo) + " hi=" +
                        std::to_string(spec.hi));
      }
      break;
  }
  return spec;
}

double eval_schedule(const ScheduleSpec& spec, Timestep t) {
  switch (spec.kind) {
    case ScheduleKind::constant:
      return 1.0;
    case ScheduleKind::zero:
      return 0.0;
    case ScheduleKind::anneal:
      return std::max(0.0, (t.value - spec.tau) / (1.0 - spec.tau));
    case ScheduleKind::gate:
      return (t.value >= spec.lo && t.value <= spec.hi) ? 1.0 : 0.0;
  }
  return 0.0;
}

ScheduleSpec schedule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorKind::invalid_schedule,
                "schedules: schedule config must be an object with a 'kind'");
  }
  ScheduleSpec spec;
  spec.kind = schedule_kind_from_name(j.at("kind").get<std::string>());
  if (spec.kind == ScheduleKind::anneal) {
    spec.tau = j.value("tau", 0.5);
  }
  if (spec.kind == ScheduleKind::gate) {
    spec.lo = j.value("lo", 0.3);
    spec.hi = j.value("hi", 0.6);
  }
  return validate_schedule(spec);
}

nlohmann::json schedule_to_json(const ScheduleSpec& spec) {
  nlohmann::json j;
  j["kind"] = schedule_kind_name(spec.kind);
  if (spec.kind == ScheduleKind::anneal) j["tau"] = spec.tau;
  if (spec.kind == ScheduleKind::gate) {
    j["lo"] = spec.lo;
    j["hi"] = spec.hi;
  }
  return j;
}

}  // namespace idglow

#pragma once

#include <string>

#include "idglow/errors.hpp"

#include "json.hpp"

namespace idglow {

// Timestep convention: t = 1 is pure noise, t = 0 is data; denoising
// integrates t from 1 down to 0.
struct Timestep {
  double value;

  explicit Timestep(double t) : value(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorKind::config,
                  "schedules: timestep " + std::to_string(t) +
                      " outside [0, 1]");
    }
  }
};

enum class ScheduleKind { constant, zero, anneal, gate };

// Temporal modulation operator applied to the identity-loss weight.
//   constant: 1 everywhere
//   zero:     0 everywhere (disables the identity term)
//   anneal:   max(0, (t - tau) / (1 - tau)), strong early (high t)
//   gate:     1 on the closed window [lo, hi], 0 outside
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::constant;
  double tau = 0.5;
  double lo = 0.3;
  double hi = 0.6;

  static ScheduleSpec constant() { return {ScheduleKind::constant, 0.0, 0.0, 0.0}; }
  static ScheduleSpec zero() { return {ScheduleKind::zero, 0.0, 0.0, 0.0}; }
  static ScheduleSpec anneal(double tau) { return {ScheduleKind::anneal, tau, 0.0, 0.0}; }
  static ScheduleSpec gate(double lo, double hi) { return {ScheduleKind::gate, 0.0, lo, hi}; }
};

const char* schedule_kind_name(ScheduleKind kind);
ScheduleKind schedule_kind_from_name(const std::string& name);

// Returns the spec unchanged when the parameter constraints hold, throws
// InvalidSchedule otherwise.
ScheduleSpec validate_schedule(const ScheduleSpec& spec);

double eval_schedule(const ScheduleSpec& spec, Timestep t);

// Config fragment: { "kind": "anneal"|"gate"|"constant"|"zero",
//                    "tau"?: float, "lo"?: float, "hi"?: float }
ScheduleSpec schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const ScheduleSpec& spec);

}  // namespace idglow

#pragma once

#include <stdexcept>
#include <string>

namespace idglow {

enum class ErrorKind {
  invalid_schedule,
  generation_failure,
  arity,
  degenerate_slot,
  dimension_mismatch,
  shape,
  too_large,
  empty_input,
  non_finite_loss,
  io,
  format,
  config,
  insufficient_pairs,
  wrong_task,
};

// Process exit codes used by the CLI: 0 success, 2 config, 3 I/O, 4 numerical.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::invalid_schedule: return "InvalidSchedule";
      case ErrorKind::generation_failure: return "GenerationFailure";
      case ErrorKind::arity: return "ArityError";
      case ErrorKind::degenerate_slot: return "DegenerateSlot";
      case ErrorKind::dimension_mismatch: return "DimensionMismatch";
      case ErrorKind::shape: return "ShapeError";
      case ErrorKind::too_large: return "TooLarge";
      case ErrorKind::empty_input: return "EmptyInput";
      case ErrorKind::non_finite_loss: return "NonFiniteLoss";
      case ErrorKind::io: return "IoError";
      case ErrorKind::format: return "FormatError";
      case ErrorKind::config: return "ConfigError";
      case ErrorKind::insufficient_pairs: return "InsufficientPairs";
      case ErrorKind::wrong_task: return "WrongTask";
    }
    return "Error";
  }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::config:
      case ErrorKind::invalid_schedule:
        return 2;
      case ErrorKind::io:
      case ErrorKind::format:
        return 3;
      default:
        return 4;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace idglow

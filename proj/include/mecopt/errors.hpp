#pragma once

#include <stdexcept>
#include <string>

namespace mecopt {

// Raised when no allocation can meet the deadline. Carries enough context to
// tell the user which bound is binding (e.g. the execution chain already
// exceeds the deadline before any transmission time is spent).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string bound, double required_s, double available_s)
      : std::runtime_error("infeasible: " + bound + " needs " +
                           std::to_string(required_s) + " s but only " +
                           std::to_string(available_s) + " s available"),
        bound_(std::move(bound)),
        required_s_(required_s),
        available_s_(available_s) {}

  const std::string& bound() const { return bound_; }
  double required_s() const { return required_s_; }
  double available_s() const { return available_s_; }

 private:
  std::string bound_;
  double required_s_;
  double available_s_;
};

}  // namespace mecopt

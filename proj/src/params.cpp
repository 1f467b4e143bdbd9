#include "gap/params.hpp"

#include <cmath>

#include "gap/error.hpp"

namespace gap {

PreferenceRule parse_preference_rule(std::string_view name) {
  if (name == "outgoing") return PreferenceRule::outgoing;
  if (name == "incoming") return PreferenceRule::incoming;
  throw UsageError("unknown preference rule '" + std::string(name) + "' (expected outgoing or incoming)");
}

std::string_view to_string(PreferenceRule rule) {
  return rule == PreferenceRule::outgoing ? "outgoing" : "incoming";
}

void GapParams::validate_message_passing() const {
  if (!(damping >= 0.5 && damping < 1.0)) {
    throw ParameterError("damping must lie in [0.5, 1), got " + std::to_string(damping));
  }
  if (max_iterations <= 0) throw ParameterError("max_iterations must be positive");
  if (convergence_window <= 0) throw ParameterError("convergence_window must be positive");
  if (threads <= 0) throw ParameterError("threads must be positive");
}

void GapParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be positive, got " + std::to_string(sigma));
  }
  if (!(alpha < 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be negative, got " + std::to_string(alpha));
  }
  validate_message_passing();
}

std::vector<std::string> GapParams::warnings() const {
  std::vector<std::string> out;
  if (std::abs(alpha) <= sigma) {
    out.push_back("|alpha| = " + std::to_string(std::abs(alpha)) + " is not larger than sigma = " +
                  std::to_string(sigma) + "; larger magnitudes usually work better");
  }
  return out;
}

}  // namespace gap

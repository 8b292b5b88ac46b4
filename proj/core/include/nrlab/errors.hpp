#pragma once
#include <stdexcept>
#include <string>

namespace nrlab {

// Numerical guard tripped (boundary leakage, CFL violation, unresolved
// quadrature). CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace nrlab

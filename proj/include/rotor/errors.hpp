#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

// Argument errors use std::invalid_argument. The two types below mark
// violated preconditions and failed closed-form checks.

class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

class FormulaMismatch : public std::runtime_error {
 public:
  explicit FormulaMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotor

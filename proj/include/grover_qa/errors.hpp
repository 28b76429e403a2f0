#pragma once

#include <stdexcept>
#include <string>

namespace grover_qa {

/// A caller violated an operation's precondition (bad s, tau, size, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its target (quadrature, bracketing,
/// step-halving). `achieved` carries the best tolerance actually reached.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace grover_qa

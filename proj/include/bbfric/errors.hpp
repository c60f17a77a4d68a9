#pragma once

#include <stdexcept>
#include <string>

namespace bbfric {

/// A constructor or operation received a value outside its domain.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Pointwise evaluation of a distribution-valued polarizability, or a smooth-only
/// evaluator handed a delta-resonance model.
class UnsupportedEvaluation : public std::logic_error {
 public:
  explicit UnsupportedEvaluation(const std::string& what) : std::logic_error(what) {}
};

/// A numerical sub-step (quadrature, time step) failed to meet its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bbfric

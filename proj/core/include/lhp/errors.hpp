#pragma once

#include <stdexcept>
#include <string>

namespace lhp {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Valid input for which the requested quantity is not defined by the model
/// (e.g. an intrinsic radius for horospheres).
class UnsupportedError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A numerical procedure (quadrature, inversion) did not reach its target
/// accuracy. Carries the accuracy it did reach.
class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

  private:
    double achieved_;
};

}  // namespace lhp

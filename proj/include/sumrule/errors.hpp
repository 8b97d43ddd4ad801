#ifndef SUMRULE_ERRORS_HPP
#define SUMRULE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sumrule {

// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public error {
public:
  using error::error;
};

// Input object violates a structural invariant (mass, positivity, ...).
class validation_error : public error {
public:
  using error::error;
};

// Iterative procedure broke down or failed to converge.
class numeric_error : public error {
public:
  using error::error;
};

// Quadrature did not reach the requested accuracy; carries the residual.
class accuracy_error : public error {
public:
  accuracy_error(const std::string& what, double residual)
      : error(what), residual(residual) {}
  double residual;
};

}  // namespace sumrule

#endif

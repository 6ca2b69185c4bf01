#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logsplit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (bad cutoff, out-of-range index, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A non-finite value appeared in a field.
class NonFiniteError : public Error {
public:
  NonFiniteError(const std::string &what, std::size_t node)
      : Error(what + " (node " + std::to_string(node) + ")"), node_(node) {}

  std::size_t node() const noexcept { return node_; }

private:
  std::size_t node_;
};

/// Solver abort during time stepping.
class NumericalAbort : public Error {
public:
  NumericalAbort(const std::string &what, long step, std::size_t node)
      : Error(what + " at step " + std::to_string(step) + ", node " +
              std::to_string(node)),
        step_(step), node_(node) {}

  long step() const noexcept { return step_; }
  std::size_t node() const noexcept { return node_; }

private:
  long step_;
  std::size_t node_;
};

/// Quadrature did not reach its tolerance.
class QuadratureError : public Error {
public:
  QuadratureError(const std::string &what, double achieved)
      : Error(what + " (achieved relative error " + std::to_string(achieved) +
              ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// Malformed or unreadable artifact on disk.
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace logsplit

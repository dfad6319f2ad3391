#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latinhib {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (parse failures, matrix validation).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class FileError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Synthetic data generation could not satisfy its constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// The activity-transfer process hit its iteration cap with interacting
/// neurons still alive.
class NonconvergenceError : public Error {
 public:
  NonconvergenceError(std::size_t iterations, std::size_t live)
      : Error("dynamics did not terminate after " + std::to_string(iterations) +
              " iterations (" + std::to_string(live) + " neurons still active)"),
        iterations_(iterations),
        live_(live) {}

  std::size_t iterations() const noexcept { return iterations_; }
  std::size_t live_neurons() const noexcept { return live_; }

 private:
  std::size_t iterations_;
  std::size_t live_;
};

}  // namespace latinhib

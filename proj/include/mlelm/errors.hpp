#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlelm {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions do not conform.
class shape_error : public error {
  public:
    using error::error;
};

/// A Gram matrix could not be factored (singular, ill-conditioned or not positive definite).
class singularity_error : public error {
  public:
    using error::error;
};

/// Caller supplied an argument outside the operation's domain.
class input_error : public error {
  public:
    using error::error;
};

/// Malformed text input. Carries the 1-based line (or row) where parsing stopped.
class parse_error : public error {
  public:
    parse_error(const std::string &what, std::size_t line) :
        error{ what + " (line " + std::to_string(line) + ")" },
        line_{ line } {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed input whose content violates a format rule (e.g. a label outside {0,1}).
class format_error : public error {
  public:
    using error::error;
};

/// Threshold calibration needs at least one positive and one negative cell.
class calibration_error : public error {
  public:
    using error::error;
};

}  // namespace mlelm

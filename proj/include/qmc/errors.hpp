#pragma once

#include <stdexcept>
#include <string>

namespace qmc {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A square matrix has no inverse (its determinant is not a unit).
class NotInvertibleError : public Error {
  public:
    explicit NotInvertibleError(const std::string& msg) : Error(msg) {}
};

/// An enumeration grew past its configured cap.
class CapExceededError : public Error {
  public:
    CapExceededError(const std::string& msg, std::size_t reached)
        : Error(msg + " (reached " + std::to_string(reached) + ")"), reached_(reached) {}
    std::size_t reached() const { return reached_; }

  private:
    std::size_t reached_;
};

/// A closed-form identity disagreed with direct enumeration; the weight
/// table it was evaluated against is not homogeneous.
class LemmaViolationError : public Error {
  public:
    explicit LemmaViolationError(const std::string& msg) : Error(msg) {}
};

/// An explicit coefficient was placed outside the line-graph pattern.
class PatternViolationError : public Error {
  public:
    explicit PatternViolationError(const std::string& msg) : Error(msg) {}
};

/// The requested node is not a sink of the network.
class NotASinkError : public Error {
  public:
    explicit NotASinkError(const std::string& msg) : Error(msg) {}
};

/// Operation requires a code with at least two codewords.
class DegenerateCodeError : public Error {
  public:
    explicit DegenerateCodeError(const std::string& msg) : Error(msg) {}
};

/// Argument outside the mathematically valid range.
class OutOfRangeError : public Error {
  public:
    explicit OutOfRangeError(const std::string& msg) : Error(msg) {}
};

/// A formula's hypothesis does not hold for the given parameters.
class NotApplicableError : public Error {
  public:
    explicit NotApplicableError(const std::string& msg) : Error(msg) {}
};

/// Malformed input file or descriptor string.
class FormatError : public Error {
  public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

}  // namespace qmc

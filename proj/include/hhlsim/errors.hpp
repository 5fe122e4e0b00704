#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhl {

/// Argument or state outside an operation's documented domain
/// (bad index, duplicate target, wrong dimension, ...).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input data violates a structural invariant (non-Hermitian matrix,
/// non-unitary gate, zero vector, non-normalized state).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested measurement outcome has (numerically) zero probability.
class ImpossibleOutcomeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Best-effort rounded clock encoding, attached to an EncodingError when the
/// exact encoding fails but a rounded one exists.
struct RoundedEncoding {
    double t = 0.0;
    std::vector<long> lambda_tilde;
    std::vector<double> relative_error;
};

/// The eigenvalues cannot be stored in the clock register as requested.
class EncodingError : public std::runtime_error {
  public:
    enum class Kind {
        Infeasible,  // no evolution time yields integers within the register
        Collision,   // two eigenvalues map to the same integer
        OutOfRange,  // an encoded value exceeds the register capacity
    };

    EncodingError(Kind kind, const std::string& message,
                  std::optional<RoundedEncoding> fallback = std::nullopt)
        : std::runtime_error(message), kind_(kind), fallback_(std::move(fallback)) {}

    Kind kind() const { return kind_; }
    const std::optional<RoundedEncoding>& rounded_fallback() const { return fallback_; }

  private:
    Kind kind_;
    std::optional<RoundedEncoding> fallback_;
};

/// The per-qubit ancilla rotation has no consistent angle assignment.
class DecompositionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The circuit cannot be expressed in the emitter's gate set.
class EmissionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Problem-file syntax error or missing field.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hhl

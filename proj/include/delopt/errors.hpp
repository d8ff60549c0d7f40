#pragma once

#include <stdexcept>

namespace delopt {

// Non-finite numeric input (NaN or infinity) where finite values are required.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Out-of-range or mutually inconsistent parameter values.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed delay schedule: delays below 1, empty pattern, bad text format.
class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Misuse of the round protocol: out-of-order delivery, stamped operations on
// an anonymous buffer, feedback that cannot be matched to a stored query.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Feedback payload of the wrong kind or arity for the receiving learner.
class FeedbackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query point that must stay feasible landed outside the domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to make progress.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace delopt

#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

// Base class for all errors thrown by this library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An argument is outside its domain (non-finite angle, non-positive rate, ...).
class invalid_input_error : public error {
public:
  using error::error;
};

// A quantum state failed validation (not normalized, non-finite amplitude).
class invalid_state_error : public error {
public:
  using error::error;
};

// A matrix handed to a projector routine is not a Hermitian +/-1 observable.
class invalid_observable_error : public error {
public:
  using error::error;
};

// A normalization was requested over an all-zero table (the excluded point
// where the modulated source emits nothing).
class degenerate_normalization_error : public error {
public:
  using error::error;
};

// Fixed-pairs sampling was requested with zero total observable rate.
class degenerate_sampling_error : public error {
public:
  using error::error;
};

// A counts file row could not be parsed; carries the 1-based line number.
class malformed_row_error : public error {
public:
  malformed_row_error(const std::string& msg, long line)
      : error(msg), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

// A tilde-style audit found no setting with all three pi-shifted partners.
class missing_partner_error : public error {
public:
  using error::error;
};

}  // namespace bellsim

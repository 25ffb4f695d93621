#pragma once

#include <stdexcept>
#include <string>

namespace vlasov1d {

// Bad argument values (non-finite coordinates, eps outside (0, 1/2), ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented preconditions.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Problem too large for the configured limits (e.g. W1 cost-matrix cap).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedKernel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An experiment configuration that cannot be run as requested.
class InvalidExperiment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace vlasov1d

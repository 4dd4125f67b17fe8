#pragma once

#include <stdexcept>
#include <string>

namespace ader {

// A stated precondition of an operation does not hold for the given inputs.
class PreconditionFailure : public std::runtime_error {
 public:
  explicit PreconditionFailure(const std::string& what) : std::runtime_error(what) {}
};

// The LP machinery failed to reach a conclusive verdict.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A support-reduction call asked for a cap below what a basic solution can reach.
class ReductionInfeasible : public std::runtime_error {
 public:
  explicit ReductionInfeasible(const std::string& what) : std::runtime_error(what) {}
};

// A certificate search found an empty contact set on one side of the chain.
class NoContacts : public std::runtime_error {
 public:
  explicit NoContacts(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ader

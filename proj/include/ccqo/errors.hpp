#pragma once

#include <stdexcept>
#include <string>

namespace ccqo {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A box-QP solve hit its iteration cap with the KKT residual above tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double residual, int iterations)
      : Error("box QP did not converge: kkt residual " + std::to_string(residual) +
              " after " + std::to_string(iterations) + " iterations"),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class EmptySupportError : public Error {
 public:
  EmptySupportError() : Error("support set is empty") {}
};

class NotBranchableError : public Error {
 public:
  using Error::Error;
};

class EmptyListError : public Error {
 public:
  EmptyListError() : Error("node list is empty") {}
};

class NoBranchableCoordinateError : public Error {
 public:
  NoBranchableCoordinateError() : Error("no coordinate with flag 1 to branch on") {}
};

class InfeasibleCandidateError : public Error {
 public:
  using Error::Error;
};

class DegenerateBoxError : public Error {
 public:
  DegenerateBoxError() : Error("all-zero reference point gives a degenerate box") {}
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class ZeroBestError : public Error {
 public:
  ZeroBestError() : Error("relative gap undefined: best value is zero") {}
};

class MissingCellError : public Error {
 public:
  using Error::Error;
};

class EmptySampleError : public Error {
 public:
  EmptySampleError() : Error("empty sample") {}
};

}  // namespace ccqo

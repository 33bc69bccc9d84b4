#pragma once

#include <stdexcept>
#include <string>

namespace iifs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parameter violates an operation precondition.
struct InvalidParameterError : Error {
  using Error::Error;
};

// A series or pressure sum diverges for the given exponent.
struct DivergenceError : Error {
  using Error::Error;
};

// Root bracketing failed: no certified sign change over the given interval.
struct BracketError : Error {
  using Error::Error;
};

// The digit expansion cannot be continued: the iterate sits on a branch
// boundary (or at the accumulation point 0) and no tie-break applies.
struct AmbiguousExpansionError : Error {
  using Error::Error;
};

// A Cantor construction produced an empty digit range at some index.
struct ConstructionError : Error {
  using Error::Error;
};

// A sequence violates the hypotheses of the dimension formula.
struct DegenerateSequenceError : Error {
  using Error::Error;
};

}  // namespace iifs

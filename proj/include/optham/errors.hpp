// errors.hpp: exception types for domain and certification failures.
#pragma once

#include <stdexcept>

namespace optham {

// Base of every library-specific failure; message carries the details.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Probability list does not carry unit mass within tolerance.
struct NonNormalized : Error {
  using Error::Error;
};

// Spectrum does not describe a mixed state (rank < 2 or p1 = 1).
struct NotMixed : Error {
  using Error::Error;
};

// Entropy of a declared spectrum cannot be certified finite.
struct InfiniteEntropy : Error {
  using Error::Error;
};

// Eigenvalue index exceeds the stored rank or head length.
struct IndexBeyondRank : Error {
  using Error::Error;
};

// Level construction hit a vanishing log-domain multiplier (beta <= 1e-14).
struct DegenerateBeta : Error {
  using Error::Error;
};

// No Gibbs state reaches the requested mean energy on an infinite domain.
struct NoGibbsState : Error {
  using Error::Error;
};

// A series evaluation has no usable convergence certificate.
struct NoConvergenceCertificate : Error {
  using Error::Error;
};

// Argument outside the documented domain of a bound evaluator.
struct OutOfRange : Error {
  using Error::Error;
};

// Feasible-point sampler exhausted its retry budget.
struct SamplingExhausted : Error {
  using Error::Error;
};

// Malformed descriptor, file, or command-line configuration.
struct BadConfig : Error {
  using Error::Error;
};

}  // namespace optham

#pragma once

#include <stdexcept>
#include <string>

namespace twolayer {

// Input outside the domain of an operation (non-positive wavenumber, a >= b, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Structurally invalid input: self-intersecting contour, unparseable file,
// inconsistent dispersion data.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computed quantity violated an invariant it must satisfy (D <= 0, disagreeing
// routes, Gauss-law residual). Always indicates a bug or a numerical breakdown.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A numerical procedure failed to converge or factorize.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twolayer

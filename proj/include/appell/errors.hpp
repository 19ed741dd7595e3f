#pragma once

#include <stdexcept>
#include <string>

namespace appell {

/// Input violates a documented precondition (g(0) = 0, x = 0, n < 0, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configuration the representations do not cover, e.g. a multiple pole
/// sitting exactly on the integration path.
class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method (quadrature, root finder, Newton) missed its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace appell

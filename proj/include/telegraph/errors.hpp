#pragma once

#include <stdexcept>
#include <string>

namespace telegraph {

// Invalid argument for a mathematical function (outside its domain).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Argument sits on a pole of the function (e.g. Gamma at a non-positive integer).
struct pole_error : domain_error {
  using domain_error::domain_error;
};

struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Quadrature or iteration failed to converge, or an integral is infinite.
struct divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Value outside the range of a map (e.g. inverse transform outside Phi(R)).
struct range_error : std::range_error {
  using std::range_error::range_error;
};

// nu in the excluded set {1/2, 1/3, 1/4, 1/5}.
struct singular_nu_error : domain_error {
  using domain_error::domain_error;
};

// nu outside the excluded set but hitting a Gamma pole in one of 1 - k nu, k = 1..5.
struct extended_singularity_error : domain_error {
  using domain_error::domain_error;
};

struct positivity_error : domain_error {
  using domain_error::domain_error;
};

// Too few effective bins for a goodness-of-fit test.
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A residual grid touches the cone boundary or leaves the admissible domain.
struct domain_violation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace telegraph

#pragma once

#include <vector>

#include "mutkit/moebius.hpp"
#include "mutkit/triangulation.hpp"

namespace mutkit {

struct NewtonOptions {
  int max_iter = 100;
  double tol = 1e-12;
};

struct ShapeSolution {
  std::vector<Complex> shapes;
  std::vector<double> edge_residuals;
  std::vector<double> cusp_residuals;
  double max_residual = 0.0;
  int iterations = 0;
  /// Some shape has im(z) <= 0; the volume is still the signed sum.
  bool flat_or_negative = false;
  double volume = 0.0;
};

/// Newton iteration on the logarithmic gluing equations: for each edge
/// class the logs of its shape parameters sum to 2 pi i, and each cusp
/// equation sums to 0. Starts from z = i with log branches tracked
/// continuously; steps are halved while the residual grows. The system is
/// solved in the least-squares sense, so redundant edge equations are fine.
///
/// Throws CheckFailure "NewtonDiverged" if the residual does not fall
/// below options.tol, and ValidationError if there are no cusp equations.
ShapeSolution solve_gluing_equations(const IdealTriangulation& tri, const NewtonOptions& options = {});

}  // namespace mutkit

#include "mutkit/gluing.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "mutkit/dilog.hpp"
#include "mutkit/errors.hpp"

namespace mutkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Shape parameters z, 1/(1-z), 1-1/z and their logarithmic derivatives.
std::array<Complex, 3> parameters(Complex z) {
  return {z, Complex(1) / (Complex(1) - z), Complex(1) - Complex(1) / z};
}

std::array<Complex, 3> log_derivatives(Complex z) {
  return {Complex(1) / z, Complex(1) / (Complex(1) - z), Complex(1) / (z * (z - Complex(1)))};
}

// Log of w on the branch nearest to `previous`.
Complex continued_log(Complex w, Complex previous) {
  Complex l = std::log(w);
  const double k = std::round((previous.imag() - l.imag()) / kTwoPi);
  return {l.real(), l.imag() + k * kTwoPi};
}

struct System {
  std::vector<std::vector<int>> rows;
  std::vector<Complex> targets;
  std::size_t edge_rows = 0;
};

struct State {
  std::vector<Complex> z;
  std::vector<std::array<Complex, 3>> logs;
  Eigen::VectorXcd residual;
  double norm = 0.0;
};

bool evaluate(const System& sys, State& s) {
  const std::size_t n = s.z.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex z = s.z[j];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z == Complex(0) || z == Complex(1)) return false;
  }
  s.residual.resize(static_cast<Eigen::Index>(sys.rows.size()));
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    Complex acc = -sys.targets[r];
    for (std::size_t j = 0; j < n; ++j) {
      for (int p = 0; p < 3; ++p) acc += static_cast<double>(sys.rows[r][3 * j + p]) * s.logs[j][p];
    }
    s.residual[static_cast<Eigen::Index>(r)] = acc;
  }
  s.norm = s.residual.size() ? s.residual.cwiseAbs().maxCoeff() : 0.0;
  return std::isfinite(s.norm);
}

State make_state(const System& sys, std::vector<Complex> z, const std::vector<std::array<Complex, 3>>* previous,
                 bool& ok) {
  State s;
  s.z = std::move(z);
  s.logs.resize(s.z.size());
  for (std::size_t j = 0; j < s.z.size(); ++j) {
    const auto params = parameters(s.z[j]);
    for (int p = 0; p < 3; ++p) {
      s.logs[j][p] = previous ? continued_log(params[p], (*previous)[j][p]) : std::log(params[p]);
    }
  }
  ok = evaluate(sys, s);
  return s;
}

}  // namespace

ShapeSolution solve_gluing_equations(const IdealTriangulation& tri, const NewtonOptions& options) {
  const auto comb = require_valid(tri);
  if (tri.cusp_equations.empty()) throw ValidationError("gluing equations need at least one cusp equation");
  const std::size_t n = tri.tetrahedra.size();

  System sys;
  sys.rows = comb.edge_equations();
  sys.edge_rows = sys.rows.size();
  sys.targets.assign(sys.edge_rows, Complex(0, kTwoPi));
  for (const auto& row : tri.cusp_equations) {
    sys.rows.push_back(row);
    sys.targets.emplace_back(0.0);
  }

  bool ok = false;
  State state = make_state(sys, std::vector<Complex>(n, Complex(0, 1)), nullptr, ok);
  int iter = 0;
  for (; iter < options.max_iter && state.norm >= options.tol; ++iter) {
    Eigen::MatrixXcd jac(static_cast<Eigen::Index>(sys.rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      const auto d = log_derivatives(state.z[j]);
      for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Complex acc = 0;
        for (int p = 0; p < 3; ++p) acc += static_cast<double>(sys.rows[r][3 * j + p]) * d[p];
        jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = acc;
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    const Eigen::VectorXcd step = svd.solve(-state.residual);

    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
      std::vector<Complex> z = state.z;
      for (std::size_t j = 0; j < n; ++j) z[j] += scale * step[static_cast<Eigen::Index>(j)];
      bool finite = false;
      State trial = make_state(sys, std::move(z), &state.logs, finite);
      if (finite && trial.norm < state.norm) {
        state = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  if (!(state.norm < options.tol)) {
    throw CheckFailure("NewtonDiverged: gluing-equation residual " + std::to_string(state.norm) + " after " +
                       std::to_string(iter) + " iterations");
  }

  ShapeSolution sol;
  sol.shapes = state.z;
  sol.iterations = iter;
  sol.max_residual = state.norm;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    const double v = std::abs(state.residual[static_cast<Eigen::Index>(r)]);
    (r < sys.edge_rows ? sol.edge_residuals : sol.cusp_residuals).push_back(v);
  }
  std::vector<double> terms;
  for (const auto& z : sol.shapes) {
    if (z.imag() <= 0.0) sol.flat_or_negative = true;
    terms.push_back(bloch_wigner(z));
  }
  double total = 0.0;
  for (double t : terms) total += t;
  sol.volume = total;
  return sol;
}

}  // namespace mutkit

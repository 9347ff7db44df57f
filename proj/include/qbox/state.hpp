#pragma once

#include "qbox/grid.hpp"
#include "qbox/model.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qbox {

// A complex wavefunction sample together with its spatial derivatives under
// the differencing scheme that matches its wall condition.  `dpsi_dt` is
// filled in by the evolution machinery when the state comes from a spectral
// expansion, where the time derivative is known exactly.
struct WaveState {
  Boundary bc = Boundary::Dirichlet;
  Eigen::VectorXcd psi;
  Eigen::VectorXcd dpsi;
  Eigen::VectorXcd d2psi;
  std::optional<Eigen::VectorXcd> dpsi_dt;
};

// Differentiate full-grid samples with the operator family matching the
// wall condition: wrapped stencils for periodic states (the duplicated wrap
// value is restored afterwards), plain one-sided closures otherwise.
inline Eigen::VectorXcd differentiate(const Grid& g, Boundary bc,
                                      const Eigen::VectorXcd& f, int deriv) {
  const int n = g.n_points;
  if (f.size() != n) throw std::invalid_argument("sample count does not match the grid");
  if (bc == Boundary::Periodic) {
    const DiffOperator op = diff_matrix_periodic(g, deriv);
    Eigen::VectorXcd out(n);
    out.head(n - 1) = op.apply(f.head(n - 1).eval());
    out[n - 1] = out[0];
    return out;
  }
  return diff_matrix(g, deriv).apply(f);
}

inline Eigen::VectorXd differentiate(const Grid& g, Boundary bc,
                                     const Eigen::VectorXd& f, int deriv) {
  const int n = g.n_points;
  if (f.size() != n) throw std::invalid_argument("sample count does not match the grid");
  if (bc == Boundary::Periodic) {
    const DiffOperator op = diff_matrix_periodic(g, deriv);
    Eigen::VectorXd out(n);
    out.head(n - 1) = op.apply(f.head(n - 1).eval());
    out[n - 1] = out[0];
    return out;
  }
  return diff_matrix(g, deriv).apply(f);
}

inline WaveState make_wave_state(const Grid& g, Boundary bc, Eigen::VectorXcd psi) {
  const int n = g.n_points;
  if (psi.size() != n) throw std::invalid_argument("sample count does not match the grid");
  if (bc == Boundary::Periodic) {
    const double scale = 1.0 + psi.cwiseAbs().maxCoeff();
    if (std::abs(psi[0] - psi[n - 1]) > 1e-9 * scale)
      throw std::invalid_argument("periodic state must repeat its wrap value");
  }
  WaveState ws;
  ws.bc = bc;
  ws.dpsi = differentiate(g, bc, psi, 1);
  ws.d2psi = differentiate(g, bc, psi, 2);
  ws.psi = std::move(psi);
  return ws;
}

inline WaveState make_wave_state(const Grid& g, Boundary bc, const Eigen::VectorXd& psi) {
  return make_wave_state(g, bc, Eigen::VectorXcd(psi.cast<std::complex<double>>()));
}

}  // namespace qbox

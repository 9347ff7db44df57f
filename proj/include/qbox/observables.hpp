#pragma once

#include "qbox/grid.hpp"
#include "qbox/model.hpp"
#include "qbox/state.hpp"

#include <cmath>
#include <complex>

namespace qbox {

// Inner product (1/2) ∫ a* b dxi, the normalization under which every state
// in the library has unit norm.
inline std::complex<double> inner(const Grid& g, const Eigen::VectorXcd& a,
                                  const Eigen::VectorXcd& b) {
  return 0.5 * integrate(g, Eigen::VectorXcd(a.conjugate().cwiseProduct(b)));
}

inline double norm_squared(const Grid& g, const Eigen::VectorXcd& psi) {
  return 0.5 * integrate(g, Eigen::VectorXd(psi.cwiseAbs2()));
}

inline double mean_position(const Grid& g, const WaveState& ws) {
  return 0.5 * integrate(g, Eigen::VectorXd(g.points.cwiseProduct(ws.psi.cwiseAbs2())));
}

// <p> with p = (1/i) d/dxi.  Genuinely complex: its imaginary part is a
// wall effect, -(1/4) * [|psi|^2 difference across the walls].
inline std::complex<double> mean_momentum(const Grid& g, const WaveState& ws) {
  return inner(g, ws.psi, Eigen::VectorXcd(std::complex<double>(0, -1) * ws.dpsi));
}

inline Eigen::VectorXcd hamiltonian_apply(const WaveState& ws, const Eigen::VectorXd& V) {
  return -ws.d2psi + V.cast<std::complex<double>>().cwiseProduct(ws.psi);
}

inline std::complex<double> mean_energy(const Grid& g, const WaveState& ws,
                                        const Eigen::VectorXd& V) {
  return inner(g, ws.psi, hamiltonian_apply(ws, V));
}

// How far the energy operator is from moving freely across the inner
// product: <Hf, g> - <f, Hg>.  Zero for hermitian boundary conditions,
// a pure wall bracket otherwise.
inline std::complex<double> energy_hermiticity_defect(const Grid& g,
                                                      const Eigen::VectorXd& V,
                                                      const WaveState& f,
                                                      const WaveState& h) {
  return inner(g, hamiltonian_apply(f, V), h.psi) -
         inner(g, f.psi, hamiltonian_apply(h, V));
}

// Same failure measure for the momentum operator: <pf, g> - <f, pg>.
inline std::complex<double> momentum_hermiticity_defect(const Grid& g, const WaveState& f,
                                                        const WaveState& h) {
  const std::complex<double> mi(0, -1);
  return inner(g, Eigen::VectorXcd(mi * f.dpsi), h.psi) -
         inner(g, f.psi, Eigen::VectorXcd(mi * h.dpsi));
}

// Rate of change of the squared norm implied by the wall leakage:
// d/dt (1/2)∫|psi|^2 = Re[ i (<H psi, psi> - <psi, H psi>) ].
inline double norm_decay_rate(const Grid& g, const Eigen::VectorXd& V, const WaveState& ws) {
  return std::real(std::complex<double>(0, 1) * energy_hermiticity_defect(g, V, ws, ws));
}

// Wall correction to the position law  d<x>/dt = 2 <p> + (this term):
// (i/2) { [xi (psi* psi' - psi*' psi)] across walls + [|psi|^2] across walls }.
inline std::complex<double> boundary_term_position(const WaveState& ws) {
  const auto wronskian = [&](Eigen::Index i) {
    return std::conj(ws.psi[i]) * ws.dpsi[i] - std::conj(ws.dpsi[i]) * ws.psi[i];
  };
  const Eigen::Index l = 0, r = ws.psi.size() - 1;
  const std::complex<double> bracket = wronskian(r) + wronskian(l);  // [xi W], xi = ±1
  const double jump = std::norm(ws.psi[r]) - std::norm(ws.psi[l]);
  return std::complex<double>(0, 0.5) * (bracket + jump);
}

// Wall correction to the momentum law  d<p>/dt = <-V'> + (this term):
// (1/2) [psi* psi'' - |psi'|^2] across the walls.
inline std::complex<double> boundary_term_momentum(const WaveState& ws) {
  const auto bracket = [&](Eigen::Index i) {
    return std::conj(ws.psi[i]) * ws.d2psi[i] - std::norm(ws.dpsi[i]);
  };
  return 0.5 * (bracket(ws.psi.size() - 1) - bracket(0));
}

// Expectation of the classical force -V'.
inline double mean_force(const Grid& g, const WaveState& ws, const Potential& pot) {
  const Eigen::VectorXd dV = differentiate(g, ws.bc, pot.sample(g), 1);
  return -0.5 * integrate(g, Eigen::VectorXd(dV.cwiseProduct(ws.psi.cwiseAbs2())));
}

// Momentum-law audit of a stationary state: for an eigenstate the true
// d<p>/dt vanishes, so `residual` measures how well the classical force
// plus sigma times the wall term cancels.  sigma = 1 is the corrected law,
// sigma = 0 the textbook one.
struct EhrenfestReport {
  double mean_x = 0.0;
  std::complex<double> mean_p;
  double force = 0.0;      // <-V'>
  double wall_term = 0.0;  // Re of the momentum boundary term
  double sigma = 1.0;
  double dpdt = 0.0;       // force + sigma * wall_term
  double residual = 0.0;   // |dpdt - 0|
};

inline EhrenfestReport stationary_report(const Grid& g, const WaveState& ws,
                                         const Potential& pot, double sigma) {
  EhrenfestReport r;
  r.mean_x = mean_position(g, ws);
  r.mean_p = mean_momentum(g, ws);
  r.force = mean_force(g, ws, pot);
  r.wall_term = std::real(boundary_term_momentum(ws));
  r.sigma = sigma;
  r.dpdt = r.force + sigma * r.wall_term;
  r.residual = std::abs(r.dpdt);
  return r;
}

}  // namespace qbox

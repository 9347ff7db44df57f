#pragma once

#include "qbox/model.hpp"
#include "qbox/observables.hpp"
#include "qbox/state.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>

namespace qbox {

// A local conservation statement: d/dt density + d/dxi flux = production,
// sampled on the grid.  `residual` is the pointwise defect of that
// statement; it needs the state's time derivative, so the state must come
// from the evolution machinery.
struct BalanceField {
  Eigen::VectorXd density;
  Eigen::VectorXcd flux;
  Eigen::VectorXcd production;
  Eigen::VectorXcd residual;
  double residual_sup = 0.0;
};

namespace detail {

inline void require_rate(const WaveState& ws) {
  if (!ws.dpsi_dt)
    throw std::invalid_argument(
        "balance residuals need the state's time derivative; build the state "
        "from a spectral expansion");
}

inline void finish(const Grid& g, BalanceField& b, const Eigen::VectorXcd& ddt_density) {
  // The flux is differentiated with the plain closures: every field here is
  // smooth on the closed interval even when its periodic extension is not.
  const Eigen::VectorXcd dflux = differentiate(g, Boundary::Dirichlet, b.flux, 1);
  b.residual = ddt_density + dflux - b.production;
  b.residual_sup = b.residual.cwiseAbs().maxCoeff();
}

}  // namespace detail

// density (1/2)|psi|^2, flux Im(psi* psi'), no production.
inline BalanceField probability_balance(const Grid& g, const WaveState& ws) {
  detail::require_rate(ws);
  BalanceField b;
  b.density = 0.5 * ws.psi.cwiseAbs2();
  b.flux = (ws.psi.conjugate().cwiseProduct(ws.dpsi)).imag().cast<std::complex<double>>();
  b.production = Eigen::VectorXcd::Zero(g.n_points);
  const Eigen::VectorXcd ddt =
      (ws.psi.conjugate().cwiseProduct(*ws.dpsi_dt)).real().cast<std::complex<double>>();
  detail::finish(g, b, ddt);
  return b;
}

// Momentum carried per unit length, complex bookkeeping kept: density is
// the real part of -(i/2) psi* psi', flux (1/2)(|psi'|^2 - psi* psi''),
// production -V' (1/2)|psi|^2.  The residual closes in both real and
// imaginary parts.
inline BalanceField momentum_balance_plain(const Grid& g, const WaveState& ws,
                                           const Potential& pot) {
  detail::require_rate(ws);
  const Eigen::VectorXd V = pot.sample(g);
  const Eigen::VectorXd dV = differentiate(g, ws.bc, V, 1);

  BalanceField b;
  b.density = 0.5 * (ws.psi.conjugate().cwiseProduct(ws.dpsi)).imag();
  b.flux = 0.5 * (ws.dpsi.cwiseAbs2().cast<std::complex<double>>() -
                  ws.psi.conjugate().cwiseProduct(ws.d2psi));
  b.production =
      (-0.5 * dV.cwiseProduct(ws.psi.cwiseAbs2())).cast<std::complex<double>>();

  const Eigen::VectorXcd dpsi_dt_x = differentiate(g, ws.bc, *ws.dpsi_dt, 1);
  const Eigen::VectorXcd ddt =
      std::complex<double>(0, -0.5) *
      (ws.dpsi_dt->conjugate().cwiseProduct(ws.dpsi) +
       ws.psi.conjugate().cwiseProduct(dpsi_dt_x));
  detail::finish(g, b, ddt);
  return b;
}

// Same statement with the flux symmetrized down to its real part:
// density (1/2) Im(psi* psi'), flux (1/2)|psi'|^2 - (1/2) Re(psi* psi''),
// production -V' (1/2)|psi|^2.
inline BalanceField momentum_balance(const Grid& g, const WaveState& ws,
                                     const Potential& pot) {
  detail::require_rate(ws);
  const Eigen::VectorXd V = pot.sample(g);
  const Eigen::VectorXd dV = differentiate(g, ws.bc, V, 1);

  BalanceField b;
  b.density = 0.5 * (ws.psi.conjugate().cwiseProduct(ws.dpsi)).imag();
  b.flux = (0.5 * ws.dpsi.cwiseAbs2() -
            0.5 * (ws.psi.conjugate().cwiseProduct(ws.d2psi)).real())
               .cast<std::complex<double>>();
  b.production =
      (-0.5 * dV.cwiseProduct(ws.psi.cwiseAbs2())).cast<std::complex<double>>();

  const Eigen::VectorXcd dpsi_dt_x = differentiate(g, ws.bc, *ws.dpsi_dt, 1);
  const Eigen::VectorXcd ddt =
      (0.5 * ((ws.dpsi_dt->conjugate().cwiseProduct(ws.dpsi)) +
              (ws.psi.conjugate().cwiseProduct(dpsi_dt_x)))
                 .imag())
          .cast<std::complex<double>>();
  detail::finish(g, b, ddt);
  return b;
}

// density (1/4) xi |psi|^2, flux (1/2) xi Im(psi* psi') - (i/4)|psi|^2,
// production -(i/2) psi* psi'.  The production integrates to the mean
// momentum, imaginary wall bookkeeping included.
inline BalanceField position_moment_balance(const Grid& g, const WaveState& ws) {
  detail::require_rate(ws);
  BalanceField b;
  const Eigen::VectorXd abs2 = ws.psi.cwiseAbs2();
  const Eigen::VectorXd current = (ws.psi.conjugate().cwiseProduct(ws.dpsi)).imag();
  b.density = 0.25 * g.points.cwiseProduct(abs2);
  b.flux = (0.5 * g.points.cwiseProduct(current)).cast<std::complex<double>>() -
           std::complex<double>(0, 0.25) * abs2.cast<std::complex<double>>();
  b.production =
      std::complex<double>(0, -0.5) * ws.psi.conjugate().cwiseProduct(ws.dpsi);
  const Eigen::VectorXcd ddt =
      (0.5 * g.points.cwiseProduct(
                 (ws.psi.conjugate().cwiseProduct(*ws.dpsi_dt)).real()))
          .cast<std::complex<double>>();
  detail::finish(g, b, ddt);
  return b;
}

// Largest residual away from the walls: the one-sided closure rows, and the
// rows whose stencils read them, carry larger constants than the bulk, so
// convergence-order measurements use this restriction.
inline double interior_residual_sup(const Grid& g, const BalanceField& b) {
  const int skip = g.fd_order;
  double m = 0.0;
  for (int i = skip; i < g.n_points - skip; ++i)
    m = std::max(m, std::abs(b.residual[i]));
  return m;
}

// Flux field attached to the moment of an operator: given the sampled
// product (Omega psi), returns (1/2i)[psi* (Omega psi)' - (Omega psi) psi*'].
// With Omega = 1 this is the probability flux.
inline Eigen::VectorXcd generalized_flux(const Grid& g, const WaveState& ws,
                                         const Eigen::VectorXcd& omega_psi) {
  const Eigen::VectorXcd d_omega_psi = differentiate(g, Boundary::Dirichlet, omega_psi, 1);
  return std::complex<double>(0, -0.5) *
         (ws.psi.conjugate().cwiseProduct(d_omega_psi) -
          omega_psi.cwiseProduct(ws.dpsi.conjugate()));
}

// Wall-to-wall jump of that flux against the hermiticity defect it must
// equal: [S_Omega] = (1/i) (<H psi, Omega psi> - <psi, H(Omega psi)>).
struct ExchangeCheck {
  std::complex<double> flux_jump, defect_over_i;
  double residual = 0.0;
};

inline ExchangeCheck exchange_identity(const Grid& g, const Eigen::VectorXd& V,
                                       const WaveState& ws,
                                       const Eigen::VectorXcd& omega_psi) {
  const Eigen::VectorXcd S = generalized_flux(g, ws, omega_psi);
  const WaveState wo = make_wave_state(g, Boundary::Dirichlet, omega_psi);
  ExchangeCheck c;
  c.flux_jump = S[g.n_points - 1] - S[0];
  c.defect_over_i =
      energy_hermiticity_defect(g, V, ws, wo) / std::complex<double>(0, 1);
  c.residual = std::abs(c.flux_jump - c.defect_over_i);
  return c;
}

}  // namespace qbox

#pragma once

#include "qbox/eigensolver.hpp"
#include "qbox/observables.hpp"
#include "qbox/state.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace qbox {

// A wavefunction written in the stationary basis.  Time evolution is then
// exact: each coefficient just turns with its phase e^{-i beta t}.
struct SpectralExpansion {
  Boundary bc = Boundary::Dirichlet;
  std::vector<double> beta;
  std::vector<Eigen::VectorXd> mode;  // full-grid eigenfunctions
  Eigen::VectorXcd coeff;             // c_r = (1/2) ∫ psi_r* f
};

inline SpectralExpansion project(const Grid& g, const StationarySolution& sol,
                                 const Eigen::VectorXcd& f) {
  SpectralExpansion e;
  e.bc = sol.bc;
  e.coeff.resize(static_cast<Eigen::Index>(sol.states.size()));
  for (std::size_t r = 0; r < sol.states.size(); ++r) {
    e.beta.push_back(sol.states[r].beta);
    e.mode.push_back(sol.states[r].psi);
    e.coeff[static_cast<Eigen::Index>(r)] =
        inner(g, sol.states[r].psi.cast<std::complex<double>>(), f);
  }
  return e;
}

// Expansion with prescribed coefficients over an already-solved basis.
inline SpectralExpansion make_expansion(const StationarySolution& sol,
                                        const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() > static_cast<Eigen::Index>(sol.states.size()))
    throw std::invalid_argument("more coefficients than solved states");
  SpectralExpansion e;
  e.bc = sol.bc;
  e.coeff = coeffs;
  for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
    e.beta.push_back(sol.states[static_cast<std::size_t>(r)].beta);
    e.mode.push_back(sol.states[static_cast<std::size_t>(r)].psi);
  }
  return e;
}

inline Eigen::VectorXcd reconstruct(const SpectralExpansion& e, double t) {
  if (e.mode.empty()) throw std::invalid_argument("empty expansion");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(e.mode.front().size());
  for (std::size_t r = 0; r < e.mode.size(); ++r) {
    const std::complex<double> a =
        e.coeff[static_cast<Eigen::Index>(r)] * std::polar(1.0, -e.beta[r] * t);
    out += a * e.mode[r].cast<std::complex<double>>();
  }
  return out;
}

// L2 distance between a profile and its truncated expansion.
inline double reconstruction_error(const Grid& g, const SpectralExpansion& e,
                                   const Eigen::VectorXcd& f) {
  return std::sqrt(norm_squared(g, Eigen::VectorXcd(f - reconstruct(e, 0.0))));
}

// State at time t with the exact spectral time derivative attached.
inline WaveState evolved_state(const Grid& g, const SpectralExpansion& e, double t) {
  WaveState ws = make_wave_state(g, e.bc, reconstruct(e, t));
  Eigen::VectorXcd dt = Eigen::VectorXcd::Zero(g.n_points);
  for (std::size_t r = 0; r < e.mode.size(); ++r) {
    const std::complex<double> a = std::complex<double>(0, -e.beta[r]) *
                                   e.coeff[static_cast<Eigen::Index>(r)] *
                                   std::polar(1.0, -e.beta[r] * t);
    dt += a * e.mode[r].cast<std::complex<double>>();
  }
  ws.dpsi_dt = std::move(dt);
  return ws;
}

// Both sides of the two corrected laws along a trajectory.  "direct" rates
// come from differentiating the spectral phases exactly; "law" rates are
// the instantaneous right-hand sides evaluated from the state, with the
// wall terms scaled by sigma.
struct LawAudit {
  double t = 0.0;
  double mean_x = 0.0;
  std::complex<double> mean_p;
  double dxdt_direct = 0.0, dxdt_law = 0.0;
  double dpdt_direct = 0.0, dpdt_law = 0.0;
  double sigma = 1.0;
};

class Evolution {
 public:
  Evolution(const Grid& g, SpectralExpansion e) : grid_(&g), exp_(std::move(e)) {
    const auto R = static_cast<Eigen::Index>(exp_.mode.size());
    X_.resize(R, R);
    P_.resize(R, R);
    for (Eigen::Index r = 0; r < R; ++r) {
      const WaveState wr = make_wave_state(g, exp_.bc, exp_.mode[r]);
      for (Eigen::Index s = 0; s < R; ++s) {
        const Eigen::VectorXcd ps = exp_.mode[s].cast<std::complex<double>>();
        X_(s, r) = std::real(
            inner(g, ps, Eigen::VectorXcd(g.points.cast<std::complex<double>>()
                                              .cwiseProduct(wr.psi))));
        P_(s, r) = inner(g, ps, Eigen::VectorXcd(std::complex<double>(0, -1) * wr.dpsi));
      }
    }
  }

  const SpectralExpansion& expansion() const { return exp_; }

  WaveState state_at(double t) const { return evolved_state(*grid_, exp_, t); }

  LawAudit audit_at(double t, const Potential& pot, double sigma) const {
    const auto R = static_cast<Eigen::Index>(exp_.mode.size());
    Eigen::VectorXcd a(R);
    for (Eigen::Index r = 0; r < R; ++r)
      a[r] = exp_.coeff[r] * std::polar(1.0, -exp_.beta[r] * t);

    LawAudit out;
    out.t = t;
    out.sigma = sigma;
    std::complex<double> x(0), p(0), dx(0), dp(0);
    for (Eigen::Index s = 0; s < R; ++s)
      for (Eigen::Index r = 0; r < R; ++r) {
        const std::complex<double> w = std::conj(a[s]) * a[r];
        const std::complex<double> rot(0, exp_.beta[s] - exp_.beta[r]);
        x += w * X_(s, r);
        p += w * P_(s, r);
        dx += w * rot * X_(s, r);
        dp += w * rot * P_(s, r);
      }
    out.mean_x = std::real(x);
    out.mean_p = p;
    out.dxdt_direct = std::real(dx);
    out.dpdt_direct = std::real(dp);

    const WaveState ws = state_at(t);
    out.dxdt_law =
        std::real(2.0 * mean_momentum(*grid_, ws) + sigma * boundary_term_position(ws));
    out.dpdt_law =
        mean_force(*grid_, ws, pot) + sigma * std::real(boundary_term_momentum(ws));
    return out;
  }

 private:
  const Grid* grid_;
  SpectralExpansion exp_;
  Eigen::MatrixXd X_;
  Eigen::MatrixXcd P_;
};

// Matrix-element identities between two stationary states.  Both follow
// from moving the energy operator across the inner product and keeping the
// wall brackets; `residual` is |lhs - rhs|.
struct IdentityCheck {
  std::complex<double> lhs, rhs;
  double residual = 0.0;
};

// i (beta_s - beta_r) <psi_s, xi psi_r>
//   = 2 <psi_s, (1/i) psi_r'> + i [<H psi_s, xi psi_r> - <psi_s, H(xi psi_r)>]
// The product xi psi_r is smooth on the closed interval but not periodic,
// so it is differentiated with the plain (non-wrapped) closures.
inline IdentityCheck position_element_identity(const Grid& g, const Potential& pot,
                                               Boundary bc, const Eigenstate& r,
                                               const Eigenstate& s) {
  const Eigen::VectorXd V = pot.sample(g);
  const WaveState wr = make_wave_state(g, bc, r.psi);
  const WaveState wss = make_wave_state(g, bc, s.psi);
  const Eigen::VectorXcd xpsi =
      g.points.cast<std::complex<double>>().cwiseProduct(wr.psi);
  const WaveState wx = make_wave_state(g, Boundary::Dirichlet, xpsi);

  IdentityCheck c;
  c.lhs = std::complex<double>(0, s.beta - r.beta) * inner(g, wss.psi, xpsi);
  const std::complex<double> P =
      inner(g, wss.psi, Eigen::VectorXcd(std::complex<double>(0, -1) * wr.dpsi));
  const std::complex<double> I = energy_hermiticity_defect(g, V, wss, wx);
  c.rhs = 2.0 * P + std::complex<double>(0, 1) * I;
  c.residual = std::abs(c.lhs - c.rhs);
  return c;
}

// <psi_s, (-V') psi_r>
//   = (beta_s - beta_r) <psi_s, psi_r'>
//     + (1/2)[psi_s' psi_r'] across walls
//     + (1/2)[(beta_r - V) psi_s psi_r] across walls
inline IdentityCheck force_element_identity(const Grid& g, const Potential& pot,
                                            Boundary bc, const Eigenstate& r,
                                            const Eigenstate& s) {
  const Eigen::VectorXd V = pot.sample(g);
  const Eigen::VectorXd dV = differentiate(g, bc, V, 1);
  const WaveState wr = make_wave_state(g, bc, r.psi);
  const WaveState wss = make_wave_state(g, bc, s.psi);

  IdentityCheck c;
  c.lhs = inner(g, wss.psi, Eigen::VectorXcd(-dV.cast<std::complex<double>>()
                                                  .cwiseProduct(wr.psi)));
  const int last = g.n_points - 1;
  const auto wall = [&](int i) {
    return std::real(std::conj(wss.dpsi[i]) * wr.dpsi[i]) +
           (r.beta - V[i]) * std::real(std::conj(wss.psi[i]) * wr.psi[i]);
  };
  c.rhs = (s.beta - r.beta) * inner(g, wss.psi, wr.dpsi) +
          0.5 * (wall(last) - wall(0));
  c.residual = std::abs(c.lhs - c.rhs);
  return c;
}

}  // namespace qbox

#include "qbox/observables.hpp"

#include "qbox/eigensolver.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qbox;
using Catch::Approx;
using cplx = std::complex<double>;

TEST_CASE("inner product and norms on analytic states") {
  const Grid g = build_grid(501, 8);
  const auto [p1, b1] = analytic_box_state(g, 1);
  const auto [p2, b2] = analytic_box_state(g, 2);
  const Eigen::VectorXcd c1 = p1.cast<cplx>(), c2 = p2.cast<cplx>();
  CHECK(std::abs(inner(g, c1, c2)) < 1e-12);
  CHECK(std::real(inner(g, c1, c1)) == Approx(1.0).epsilon(1e-12));
  CHECK(norm_squared(g, c1) == Approx(1.0).epsilon(1e-12));
  // antilinear in the first slot
  const cplx phase = std::polar(1.0, 0.7);
  CHECK(std::abs(inner(g, Eigen::VectorXcd(phase * c1), c1) -
                 std::conj(phase) * inner(g, c1, c1)) < 1e-12);
}

TEST_CASE("hermiticity defects of a synthetic boundary-violating profile") {
  // psi = 1 + xi + i xi^2 is polynomial, so differentiation and quadrature
  // are exact and the wall brackets can be checked against hand values.
  const Grid g = build_grid(201, 8);
  Eigen::VectorXcd psi(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.points[i];
    psi[i] = cplx(1.0 + x, x * x);
  }
  const WaveState ws = make_wave_state(g, Boundary::Dirichlet, psi);
  const Eigen::VectorXd V0 = Eigen::VectorXd::Zero(g.n_points);

  const cplx dH = energy_hermiticity_defect(g, V0, ws, ws);
  CHECK(std::abs(dH - cplx(0.0, 4.0)) < 1e-11);
  // a constant shift is hermitian and cannot change the defect
  const Eigen::VectorXd V2 = Eigen::VectorXd::Constant(g.n_points, 2.5);
  CHECK(std::abs(energy_hermiticity_defect(g, V2, ws, ws) - dH) < 1e-11);

  const cplx dp = momentum_hermiticity_defect(g, ws, ws);
  CHECK(std::abs(dp - cplx(0.0, 2.0)) < 1e-12);

  // norm leakage implied by the energy defect: Re(i * 4i) = -4
  CHECK(norm_decay_rate(g, V0, ws) == Approx(-4.0).margin(1e-11));
}

TEST_CASE("hard-wall eigenstates have hermitian operators") {
  const Grid g = build_grid(1001, 8);
  const Potential pot = Potential::linear_field(10.0);
  const auto sol = solve_stationary(g, pot, Boundary::Dirichlet, 2);
  const Eigen::VectorXd V = pot.sample(g);
  const WaveState w1 = make_wave_state(g, Boundary::Dirichlet, sol.states[0].psi);
  const WaveState w2 = make_wave_state(g, Boundary::Dirichlet, sol.states[1].psi);
  CHECK(std::abs(energy_hermiticity_defect(g, V, w1, w2)) < 1e-8);
  CHECK(std::abs(momentum_hermiticity_defect(g, w1, w2)) < 1e-10);
  CHECK(std::abs(norm_decay_rate(g, V, w1)) < 1e-9);
  CHECK(std::real(mean_energy(g, w1, V)) ==
        Approx(sol.states[0].beta).margin(1e-9));
  CHECK(std::abs(std::imag(mean_energy(g, w1, V))) < 1e-12);
  CHECK(std::abs(boundary_term_position(w1)) < 1e-10);
}

TEST_CASE("travelling plane wave on a ring") {
  const Grid g = build_grid(257, 8);
  Eigen::VectorXcd psi(g.n_points);
  for (int i = 0; i < g.n_points; ++i)
    psi[i] = std::polar(1.0, M_PI * g.points[i]);
  const WaveState ws = make_wave_state(g, Boundary::Periodic, psi);

  const cplx p = mean_momentum(g, ws);
  CHECK(std::real(p) == Approx(M_PI).epsilon(1e-10));
  CHECK(std::abs(std::imag(p)) < 1e-12);
  CHECK(std::abs(mean_position(g, ws)) < 1e-12);

  // the wrap correction exactly cancels the momentum drift: d<x>/dt = 0
  const cplx btx = boundary_term_position(ws);
  CHECK(std::real(btx) == Approx(-2.0 * M_PI).epsilon(1e-9));
  CHECK(std::abs(std::imag(btx)) < 1e-12);
  CHECK(std::abs(2.0 * std::real(p) + std::real(btx)) < 1e-9);

  // identical wall brackets: momentum sees no wall at all
  CHECK(std::abs(boundary_term_momentum(ws)) < 1e-12);
}

TEST_CASE("zero-slope superposition carries an imaginary momentum") {
  const Grid g = build_grid(1001, 8);
  Eigen::VectorXcd psi(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.points[i];
    psi[i] = (1.0 + std::sqrt(2.0) * std::cos(0.5 * M_PI * (x + 1.0))) / std::sqrt(2.0);
  }
  const WaveState ws = make_wave_state(g, Boundary::Neumann, psi);
  CHECK(norm_squared(g, ws.psi) == Approx(1.0).epsilon(1e-12));

  const cplx p = mean_momentum(g, ws);
  CHECK(std::abs(std::real(p)) < 1e-12);
  CHECK(std::imag(p) == Approx(std::sqrt(2.0) / 2.0).epsilon(1e-10));

  const cplx btx = boundary_term_position(ws);
  CHECK(std::abs(std::real(btx)) < 1e-10);
  CHECK(std::imag(btx) == Approx(-std::sqrt(2.0)).epsilon(1e-10));

  // the full position law stays real: Im(2<p> + wall term) = 0
  CHECK(std::abs(std::imag(2.0 * p + btx)) < 1e-10);
}

TEST_CASE("stationary momentum audit: corrected law holds, textbook law fails") {
  const Grid g = build_grid(1001, 8);

  const Potential pc = Potential::linear_field(10.0);
  const auto solc = solve_stationary(g, pc, Boundary::Dirichlet, 1);
  const WaveState wc = make_wave_state(g, Boundary::Dirichlet, solc.states[0].psi);
  const EhrenfestReport on = stationary_report(g, wc, pc, 1.0);
  CHECK(on.force == Approx(10.0).epsilon(1e-9));
  CHECK(on.wall_term == Approx(-10.0).epsilon(1e-5));
  CHECK(on.residual < 2e-5);
  const EhrenfestReport off = stationary_report(g, wc, pc, 0.0);
  CHECK(off.residual == Approx(10.0).epsilon(1e-6));

  const auto solv = solve_stationary(g, pc, Boundary::Neumann, 1);
  const WaveState wv = make_wave_state(g, Boundary::Neumann, solv.states[0].psi);
  const EhrenfestReport von = stationary_report(g, wv, pc, 1.0);
  CHECK(von.residual < 1e-5);
  CHECK(stationary_report(g, wv, pc, 0.0).residual == Approx(10.0).epsilon(1e-6));
}

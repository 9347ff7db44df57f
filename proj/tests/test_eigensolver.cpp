#include "qbox/eigensolver.hpp"

#include "oracle_shooting.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qbox;

namespace {

// Reference values frozen from the shooting oracle (Richardson-extrapolated
// RK4; step-halving drift at or below 2.5e-14).
constexpr double kBetaC10[3] = {0.88771280757344584, 10.225264095935406,
                               22.510629100770018};
constexpr double kMeanXiC10 = 0.28825324922020501;
constexpr double kSlopesC10[2] = {0.65040225380375649, -4.5191838966513567};
constexpr double kBetaC100[2] = {-49.627002858674764, -11.927798338636981};
constexpr double kMeanXiC100 = 0.66418001908618762;
constexpr double kBetaV10[2] = {-5.272112421417078, 4.7466500939376184};
constexpr double kMeanXiV10 = 0.68431960813050774;

double mean_xi(const Grid& g, const Eigen::VectorXd& psi) {
  return 0.5 * integrate(g, g.points.cwiseProduct(psi.cwiseProduct(psi)).eval());
}

double sup_diff_up_to_sign(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("reference solver reproduces its frozen values") {
  for (int k = 1; k <= 3; ++k)
    CHECK(oracle::solve(10.0, k - 1, true).beta ==
          Catch::Approx(kBetaC10[k - 1]).margin(1e-11));
  const auto s100 = oracle::solve(100.0, 0, true);
  CHECK(s100.beta == Catch::Approx(kBetaC100[0]).margin(1e-10));
  CHECK(s100.mean_xi == Catch::Approx(kMeanXiC100).margin(1e-11));
  const auto v10 = oracle::solve(10.0, 0, false);
  CHECK(v10.beta == Catch::Approx(kBetaV10[0]).margin(1e-11));
}

TEST_CASE("hard-wall field-free levels match the exact spectrum") {
  const Grid g = build_grid(1001, 8);
  const auto sol = solve_stationary(g, Potential::constant(0.0), Boundary::Dirichlet, 5);
  REQUIRE(sol.states.size() == 5);
  for (int k = 1; k <= 5; ++k) {
    const auto& st = sol.states[k - 1];
    const double exact = 0.25 * k * k * M_PI * M_PI;
    CHECK(st.beta == Catch::Approx(exact).epsilon(1e-9));
    CHECK(st.bc_residual == 0.0);
    CHECK(st.residual < 1e-6);
    const auto [psi_ref, beta_ref] = analytic_box_state(g, k);
    CHECK((st.psi - psi_ref).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK(sol.orthonormality_defect < 1e-10);
}

TEST_CASE("hard-wall in-field levels match the reference solver") {
  const Grid g = build_grid(1001, 8);
  const auto sol = solve_stationary(g, Potential::linear_field(10.0), Boundary::Dirichlet, 3);
  for (int k = 0; k < 3; ++k)
    CHECK(sol.states[k].beta ==
          Catch::Approx(kBetaC10[k]).margin(1e-8 * (1.0 + std::abs(kBetaC10[k]))));
  CHECK(mean_xi(g, sol.states[0].psi) == Catch::Approx(kMeanXiC10).margin(1e-8));

  const DiffOperator d1 = diff_matrix(g, 1);
  const Eigen::VectorXd dpsi = d1.apply(sol.states[0].psi);
  CHECK(dpsi[0] == Catch::Approx(kSlopesC10[0]).margin(1e-6));
  CHECK(dpsi[g.n_points - 1] == Catch::Approx(kSlopesC10[1]).margin(1e-6));
  // stationary wall-pressure balance: half the difference of squared wall
  // slopes equals the applied field strength
  const double balance =
      0.5 * (dpsi[g.n_points - 1] * dpsi[g.n_points - 1] - dpsi[0] * dpsi[0]);
  CHECK(std::abs(balance - 10.0) / 10.0 < 1e-6);
}

TEST_CASE("hard-wall strong-field levels match the reference solver") {
  const Grid g = build_grid(1001, 8);
  const auto sol = solve_stationary(g, Potential::linear_field(100.0), Boundary::Dirichlet, 2);
  CHECK(sol.states[0].beta == Catch::Approx(kBetaC100[0]).margin(1e-7));
  CHECK(sol.states[1].beta == Catch::Approx(kBetaC100[1]).margin(1e-7));
  CHECK(mean_xi(g, sol.states[0].psi) == Catch::Approx(kMeanXiC100).margin(1e-8));
  const DiffOperator d1 = diff_matrix(g, 1);
  const Eigen::VectorXd dpsi = d1.apply(sol.states[0].psi);
  const double balance =
      0.5 * (dpsi[g.n_points - 1] * dpsi[g.n_points - 1] - dpsi[0] * dpsi[0]);
  CHECK(std::abs(balance - 100.0) / 100.0 < 1e-6);
}

TEST_CASE("zero-slope walls reproduce the cosine spectrum") {
  const Grid g = build_grid(501, 8);
  const auto sol = solve_stationary(g, Potential::constant(0.0), Boundary::Neumann, 4);
  for (int k = 0; k < 4; ++k) {
    const double exact = 0.25 * k * k * M_PI * M_PI;
    CHECK(sol.states[k].beta == Catch::Approx(exact).margin(1e-8 * (1.0 + exact)));
    CHECK(sol.states[k].bc_residual < 1e-8);
    Eigen::VectorXd ref(g.n_points);
    for (int i = 0; i < g.n_points; ++i)
      ref[i] = (k == 0 ? 1.0
                       : std::sqrt(2.0) * std::cos(0.5 * k * M_PI * (g.points[i] + 1.0)));
    CHECK(sup_diff_up_to_sign(sol.states[k].psi, ref) < 1e-7);
  }
  CHECK(sol.orthonormality_defect < 1e-9);
}

TEST_CASE("zero-slope in-field levels match the reference solver") {
  const Grid g = build_grid(1001, 8);
  const auto sol = solve_stationary(g, Potential::linear_field(10.0), Boundary::Neumann, 2);
  CHECK(sol.states[0].beta == Catch::Approx(kBetaV10[0]).margin(1e-8 * 6.3));
  CHECK(sol.states[1].beta == Catch::Approx(kBetaV10[1]).margin(1e-8 * 5.7));
  CHECK(mean_xi(g, sol.states[0].psi) == Catch::Approx(kMeanXiV10).margin(1e-8));
  CHECK(sol.states[0].bc_residual < 1e-8);
}

TEST_CASE("periodic levels come in parity-resolved pairs") {
  const Grid g = build_grid(501, 8);
  const auto sol = solve_stationary(g, Potential::constant(0.0), Boundary::Periodic, 5);
  REQUIRE(sol.states.size() == 5);
  CHECK(std::abs(sol.states[0].beta) < 1e-9);
  for (int m = 1; m <= 2; ++m) {
    const double exact = m * m * M_PI * M_PI;
    CHECK(sol.states[2 * m - 1].beta == Catch::Approx(exact).epsilon(1e-9));
    CHECK(sol.states[2 * m].beta == Catch::Approx(exact).epsilon(1e-9));
    // even member first, odd second
    Eigen::VectorXd even(g.n_points), odd(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
      even[i] = std::sqrt(2.0) * std::cos(m * M_PI * g.points[i]);
      odd[i] = std::sqrt(2.0) * std::sin(m * M_PI * g.points[i]);
    }
    CHECK(sup_diff_up_to_sign(sol.states[2 * m - 1].psi, even) < 1e-7);
    CHECK(sup_diff_up_to_sign(sol.states[2 * m].psi, odd) < 1e-7);
    CHECK((reflect(sol.states[2 * m - 1].psi) - sol.states[2 * m - 1].psi)
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK((reflect(sol.states[2 * m].psi) + sol.states[2 * m].psi).cwiseAbs().maxCoeff() <
          1e-9);
  }
  // the wrap value is duplicated by construction
  for (const auto& st : sol.states) CHECK(st.psi[0] == st.psi[g.n_points - 1]);
  CHECK(sol.orthonormality_defect < 1e-9);

  // a cut through the middle of a pair keeps the even member
  const auto cut = solve_stationary(g, Potential::constant(0.0), Boundary::Periodic, 2);
  REQUIRE(cut.states.size() == 2);
  CHECK((reflect(cut.states[1].psi) - cut.states[1].psi).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("wrapped operators reject a potential that differs at the walls") {
  const Grid g = build_grid(101, 8);
  CHECK_THROWS_AS(
      solve_stationary(g, Potential::linear_field(1.0), Boundary::Periodic, 2),
      std::invalid_argument);
  CHECK_NOTHROW(solve_stationary(g, Potential::linear_field(0.0), Boundary::Periodic, 2));
}

TEST_CASE("reversing the field mirrors spectrum and states") {
  const Grid g = build_grid(501, 8);
  // assembled operators are exact mirrors
  const auto plus = detail::assemble(g, Potential::linear_field(10.0), Boundary::Dirichlet);
  const auto minus = detail::assemble(g, Potential::linear_field(-10.0), Boundary::Dirichlet);
  const int m = static_cast<int>(plus.H.rows());
  double max_diff = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      max_diff = std::max(max_diff,
                          std::abs(minus.H(i, j) - plus.H(m - 1 - i, m - 1 - j)));
  CHECK(max_diff == 0.0);

  const auto sp = solve_stationary(g, Potential::linear_field(10.0), Boundary::Dirichlet, 3);
  const auto sm = solve_stationary(g, Potential::linear_field(-10.0), Boundary::Dirichlet, 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(sm.states[k].beta ==
          Catch::Approx(sp.states[k].beta).margin(1e-9 * (1.0 + std::abs(sp.states[k].beta))));
    CHECK(sup_diff_up_to_sign(sm.states[k].psi, reflect(sp.states[k].psi)) < 1e-7);
  }
}

TEST_CASE("state-count validation") {
  const Grid g = build_grid(51, 8);
  CHECK_THROWS_AS(solve_stationary(g, Potential::constant(0.0), Boundary::Dirichlet, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_stationary(g, Potential::constant(0.0), Boundary::Dirichlet, 50),
                  std::invalid_argument);
}

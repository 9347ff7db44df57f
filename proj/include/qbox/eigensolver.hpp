#pragma once

#include "qbox/grid.hpp"
#include "qbox/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qbox {

struct Eigenstate {
  double beta = 0.0;
  Eigen::VectorXd psi;        // full grid, (1/2) ∫ psi^2 = 1, sign-fixed
  double residual = 0.0;      // ||(-D2 + V - beta) psi||_inf on equation rows
  double bc_residual = 0.0;   // how well the boundary condition is met
};

struct StationarySolution {
  std::vector<Eigenstate> states;
  Boundary bc = Boundary::Dirichlet;
  double orthonormality_defect = 0.0;  // max |(1/2)∫ psi_i psi_j - delta_ij|
};

namespace detail {

// Left/right ghost-elimination coefficients for zero-slope walls: the
// one-sided first-derivative rows pinned to zero are solved for the wall
// values, giving psi_wall as a combination of nearby interior samples.
struct WallElimination {
  Eigen::VectorXd left;   // psi[0]     = left  . psi[1..n-2]
  Eigen::VectorXd right;  // psi[n-1]   = right . psi[1..n-2]
};

inline WallElimination neumann_elimination(const Grid& g) {
  const Eigen::MatrixXd D1 = diff_matrix(g, 1).to_dense();
  const int n = g.n_points, m = n - 2;
  WallElimination w{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(m)};
  if (D1(0, 0) == 0.0 || D1(n - 1, n - 1) == 0.0)
    throw std::logic_error("wall derivative row has no diagonal weight");
  for (int j = 1; j <= n - 2; ++j) {
    if (D1(0, j) != 0.0) w.left[j - 1] = -D1(0, j) / D1(0, 0);
    if (D1(n - 1, j) != 0.0) w.right[j - 1] = -D1(n - 1, j) / D1(n - 1, n - 1);
  }
  return w;
}

// Reduced dense operator for the boundary family, plus the bookkeeping to
// map reduced vectors back onto the full grid.
struct ReducedProblem {
  Eigen::MatrixXd H;
  bool symmetric = false;
  int offset = 0;        // index of the first full-grid node carried
  int wrap = 0;          // 1 when the last grid node duplicates the first
  WallElimination elim;  // only used for zero-slope walls
  bool has_elim = false;
};

inline ReducedProblem assemble(const Grid& g, const Potential& pot, Boundary bc) {
  const int n = g.n_points;
  const Eigen::VectorXd V = pot.sample(g);
  ReducedProblem rp;
  switch (bc) {
    case Boundary::Dirichlet: {
      const Eigen::MatrixXd D2 = diff_matrix(g, 2).to_dense();
      const int m = n - 2;
      rp.H = -D2.block(1, 1, m, m);
      rp.H.diagonal() += V.segment(1, m);
      rp.offset = 1;
      return rp;
    }
    case Boundary::Periodic: {
      if (!pot.matches_at_endpoints(g))
        throw std::invalid_argument(
            "periodic boundary identifies xi = -1 with xi = +1, so the "
            "potential must take the same value at both walls");
      const Eigen::MatrixXd D2 = diff_matrix_periodic(g, 2).to_dense();
      const int N = n - 1;
      rp.H = -D2;
      rp.H.diagonal() += V.head(N);
      rp.symmetric = true;
      rp.wrap = 1;
      return rp;
    }
    case Boundary::Neumann: {
      const Eigen::MatrixXd D2 = diff_matrix(g, 2).to_dense();
      const int m = n - 2;
      rp.elim = neumann_elimination(g);
      rp.has_elim = true;
      Eigen::MatrixXd Hfull = -D2;
      Hfull.diagonal() += V;
      rp.H = Hfull.block(1, 1, m, m);
      rp.H.noalias() += Hfull.block(1, 0, m, 1) * rp.elim.left.transpose();
      rp.H.noalias() += Hfull.block(1, n - 1, m, 1) * rp.elim.right.transpose();
      rp.offset = 1;
      return rp;
    }
  }
  throw std::logic_error("unreachable");
}

// Reduced vector -> full-grid vector (walls restored, wrap duplicated).
inline Eigen::VectorXd expand(const ReducedProblem& rp, const Grid& g,
                              const Eigen::VectorXd& x) {
  const int n = g.n_points;
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  if (rp.wrap) {
    psi.head(n - 1) = x;
    psi[n - 1] = x[0];
  } else {
    psi.segment(rp.offset, x.size()) = x;
    if (rp.has_elim) {
      psi[0] = rp.elim.left.dot(x);
      psi[n - 1] = rp.elim.right.dot(x);
    }
  }
  return psi;
}

}  // namespace detail

// Lowest eigenpairs of  -psi'' + V psi = beta psi  under the given wall
// condition.  Degenerate periodic levels are rotated onto definite-parity
// members (even first); every state is normalized against the grid
// quadrature and sign-fixed, so repeated runs are bit-identical.
inline StationarySolution solve_stationary(const Grid& g, const Potential& pot,
                                           Boundary bc, int n_states,
                                           int refine_steps = 2) {
  if (n_states < 1) throw std::invalid_argument("need at least one state");
  detail::ReducedProblem rp = detail::assemble(g, pot, bc);
  const int m = static_cast<int>(rp.H.rows());
  if (n_states > m) throw std::invalid_argument("more states requested than the grid supports");

  // Raw spectrum.
  std::vector<std::pair<double, Eigen::VectorXd>> raw;
  if (rp.symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rp.H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    // Carry one extra state when the cut would split a degenerate level, so
    // the parity rotation below always sees whole pairs; trimmed afterwards.
    int take = n_states;
    if (take < m && std::abs(es.eigenvalues()[take] - es.eigenvalues()[take - 1]) <=
                        1e-6 * (1.0 + std::abs(es.eigenvalues()[take - 1])))
      ++take;
    for (int k = 0; k < take; ++k)
      raw.emplace_back(es.eigenvalues()[k], es.eigenvectors().col(k));
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(rp.H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    std::vector<int> idx;
    for (int k = 0; k < m; ++k) {
      const std::complex<double> lam = es.eigenvalues()[k];
      if (std::abs(lam.imag()) <= 1e-8 * (1.0 + std::abs(lam.real())))
        idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return es.eigenvalues()[a].real() < es.eigenvalues()[b].real();
    });
    if (static_cast<int>(idx.size()) < n_states)
      throw std::runtime_error("spectrum has too few real eigenvalues");
    for (int t = 0; t < n_states; ++t) {
      const int k = idx[t];
      // Rotate the eigenvector onto the real axis before discarding the
      // imaginary part.
      Eigen::VectorXcd v = es.eigenvectors().col(k);
      int big = 0;
      v.cwiseAbs().maxCoeff(&big);
      v *= std::conj(v[big]) / std::abs(v[big]);
      raw.emplace_back(es.eigenvalues()[k].real(), v.real());
    }
  }

  // Polish each pair: inverse iteration against a fixed shift sharpens the
  // vector, a Rayleigh quotient then re-derives the value.
  for (auto& [beta, x] : raw) {
    x.normalize();
    if (refine_steps > 0 && !rp.symmetric) {
      Eigen::MatrixXd shifted = rp.H;
      shifted.diagonal().array() -= beta;
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
      for (int it = 0; it < refine_steps; ++it) {
        x = lu.solve(x);
        x.normalize();
      }
      beta = x.dot(rp.H * x);
    }
  }

  // Rotate members of a degenerate level onto definite parity under
  // xi -> -xi so the basis is unique; order the even member first.
  if (rp.wrap) {
    const int N = m;
    const auto reflect_wrapped = [N](const Eigen::VectorXd& v) {
      Eigen::VectorXd r(N);
      for (int i = 0; i < N; ++i) r[i] = v[(N - i) % N];
      return r;
    };
    int k = 0;
    while (k < static_cast<int>(raw.size())) {
      int j = k + 1;
      while (j < static_cast<int>(raw.size()) &&
             std::abs(raw[j].first - raw[k].first) <= 1e-6 * (1.0 + std::abs(raw[k].first)))
        ++j;
      if (j - k == 2) {
        const Eigen::VectorXd a = raw[k].second, b = raw[j - 1].second;
        Eigen::Matrix2d M;
        M(0, 0) = a.dot(reflect_wrapped(a));
        M(0, 1) = a.dot(reflect_wrapped(b));
        M(1, 0) = M(0, 1);
        M(1, 1) = b.dot(reflect_wrapped(b));
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> rot(M);
        // columns ordered by parity eigenvalue: -1 (odd) then +1 (even)
        Eigen::VectorXd odd = rot.eigenvectors()(0, 0) * a + rot.eigenvectors()(1, 0) * b;
        Eigen::VectorXd even = rot.eigenvectors()(0, 1) * a + rot.eigenvectors()(1, 1) * b;
        raw[k].second = even;
        raw[j - 1].second = odd;
      }
      k = j;
    }
  }

  if (static_cast<int>(raw.size()) > n_states) raw.resize(n_states);

  // Expand onto the full grid, normalize against the quadrature, fix signs,
  // and collect diagnostics.
  const Eigen::MatrixXd D2 = (rp.wrap ? diff_matrix_periodic(g, 2) : diff_matrix(g, 2)).to_dense();
  const Eigen::MatrixXd D1 = diff_matrix(g, 1).to_dense();
  const Eigen::VectorXd V = pot.sample(g);
  StationarySolution sol;
  sol.bc = bc;
  for (auto& [beta, x] : raw) {
    Eigenstate st;
    st.beta = beta;
    st.psi = detail::expand(rp, g, x);
    const double nrm = std::sqrt(0.5 * integrate(g, st.psi.cwiseProduct(st.psi).eval()));
    st.psi /= nrm;
    // sign convention
    if (bc == Boundary::Dirichlet) {
      if (D1.row(0).dot(st.psi) < 0.0) st.psi = -st.psi;
    } else {
      for (int i = 0; i < g.n_points; ++i) {
        if (std::abs(st.psi[i]) > 1e-6) {
          if (st.psi[i] < 0.0) st.psi = -st.psi;
          break;
        }
      }
    }
    // residual of the differential equation on the rows that carry it
    if (rp.wrap) {
      const int N = g.n_points - 1;
      const Eigen::VectorXd r =
          -D2 * st.psi.head(N) + V.head(N).cwiseProduct(st.psi.head(N)) - beta * st.psi.head(N);
      st.residual = r.cwiseAbs().maxCoeff() / (1.0 + std::abs(beta));
      st.bc_residual = 0.0;  // wrap value duplicated by construction
    } else {
      const Eigen::VectorXd r = -D2 * st.psi + V.cwiseProduct(st.psi) - beta * st.psi;
      st.residual = r.segment(1, g.n_points - 2).cwiseAbs().maxCoeff() / (1.0 + std::abs(beta));
      if (bc == Boundary::Dirichlet)
        st.bc_residual = std::max(std::abs(st.psi[0]), std::abs(st.psi[g.n_points - 1]));
      else
        st.bc_residual = std::max(std::abs(D1.row(0).dot(st.psi)),
                                  std::abs(D1.row(g.n_points - 1).dot(st.psi)));
    }
    sol.states.push_back(std::move(st));
  }

  for (std::size_t i = 0; i < sol.states.size(); ++i)
    for (std::size_t j = i; j < sol.states.size(); ++j) {
      const double ip =
          0.5 * integrate(g, sol.states[i].psi.cwiseProduct(sol.states[j].psi).eval());
      sol.orthonormality_defect =
          std::max(sol.orthonormality_defect, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  return sol;
}

}  // namespace qbox

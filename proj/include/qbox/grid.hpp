#pragma once
// Uniform grid on [-1, 1]: high-order differentiation matrices and an
// end-corrected trapezoid (Gregory) quadrature of matching order.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qbox/stencils.hpp"

namespace qbox {

using cplx = std::complex<double>;

// Compensated dot product (Ogita-Rump-Oishi "Dot2" with FMA).
inline double dot2(const double* a, const double* b, std::size_t n) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = a[i] * b[i];
    const double pe = std::fma(a[i], b[i], -p);
    const double t = s + p;
    const double z = t - s;
    const double se = (s - (t - z)) + (p - z);
    s = t;
    comp += pe + se;
  }
  return s + comp;
}

// Same, with the weights held as hi+lo double-double pairs.  Stencil weights
// are exact rationals; a single double representation leaves ~1 ulp per weight
// which, after the h^-d row scale, is the dominant noise floor (~1e-9 for
// second derivatives at n ~ 1000).  Carrying the residual `lo` part removes it.
inline double dot2pair(const double* ahi, const double* alo, const double* b, std::size_t n) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = ahi[i] * b[i];
    const double pe = std::fma(ahi[i], b[i], -p);
    const double t = s + p;
    const double z = t - s;
    const double se = (s - (t - z)) + (p - z);
    s = t;
    comp += pe + se + alo[i] * b[i];
  }
  return s + comp;
}

struct Grid {
  int n_points = 0;
  int fd_order = 0;
  double spacing = 0.0;
  Eigen::VectorXd points;   // points[0] = -1, points[n-1] = +1, midpoint 0, all exact
  Eigen::VectorXd weights;  // quadrature weights; sum = 2
};

inline Grid build_grid(int n_points, int fd_order = 8) {
  if (fd_order < 2 || fd_order % 2 != 0)
    throw std::invalid_argument("build_grid: fd_order must be even and >= 2");
  if (n_points % 2 == 0)
    throw std::invalid_argument("build_grid: n_points must be odd (symmetric end corrections)");
  if (n_points < fd_order + 3)
    throw std::invalid_argument("build_grid: n_points must be at least fd_order + 3");

  Grid g;
  g.n_points = n_points;
  g.fd_order = fd_order;
  g.spacing = 2.0 / (n_points - 1);
  const int mid = (n_points - 1) / 2;
  g.points.resize(n_points);
  for (int i = 0; i < n_points; ++i)
    g.points[i] = static_cast<double>(i - mid) / mid;

  // Gregory rule: trapezoid plus Euler-Maclaurin boundary corrections for
  // k = 1 .. p/2-1, with the odd end derivatives replaced by one-sided
  // stencils over the first p-1 nodes (the classical Gregory cluster).  Every
  // correction-stencil error and the first neglected Euler-Maclaurin term then
  // line up at O(h^p), matching the differentiation order; a wider cluster
  // would push the observed rate to p+1 and a narrower one would fall short.
  const double h = g.spacing;
  std::vector<long double> w(n_points, static_cast<long double>(h));
  w[0] = w[n_points - 1] = 0.5L * h;
  static const long double bernoulli[] = {1.0L / 6.0L,  -1.0L / 30.0L,     1.0L / 42.0L,
                                          -1.0L / 30.0L, 5.0L / 66.0L,     -691.0L / 2730.0L,
                                          7.0L / 6.0L};
  const int cluster = fd_order - 1;
  std::vector<int> offs(std::max(cluster, 1));
  for (int j = 0; j < std::max(cluster, 1); ++j) offs[j] = j;
  for (int k = 1; k <= fd_order / 2 - 1; ++k) {
    long double fact = 1.0L;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    const long double coeff = bernoulli[k - 1] / fact;
    const std::vector<long double> a = stencil_weights_exact(offs, 0, 2 * k - 1);
    for (int j = 0; j < cluster; ++j) {
      // both ends get the same correction: the right-end stencil mirrors with
      // parity (-1)^(2k-1) and the bracket sign flips with it
      w[j] += h * coeff * a[j];
      w[n_points - 1 - j] += h * coeff * a[j];
    }
  }
  g.weights.resize(n_points);
  for (int i = 0; i < n_points; ++i) g.weights[i] = static_cast<double>(w[i]);

  if (fd_order <= 8) {
    for (int i = 0; i < n_points; ++i)
      if (!(g.weights[i] > 0.0))
        throw std::logic_error("build_grid: non-positive quadrature weight");
  }
  return g;
}

// Differentiation matrix in stencil form.  Interior rows share one central
// stencil; the first and last p/2 rows carry one-sided stencils of the same
// accuracy order over the boundary cluster (mirrored at the right end with
// parity (-1)^d).  Weights are stored in grid units as double-double pairs and
// each row result is scaled by h^-d once, so a row application is accurate to
// a few ulps of its exact value.  The periodic variant wraps the central
// stencil and acts on vectors of length n-1 (the last grid point being
// identified with the first).
struct DiffOperator {
  int size = 0;  // length of vectors this operator acts on
  int deriv = 0;
  int fd_order = 0;
  double spacing = 0.0;
  double hscale = 0.0;  // spacing^-deriv
  bool periodic = false;
  std::vector<double> central_hi, central_lo;            // offsets -p/2 .. p/2
  std::vector<std::vector<double>> edge_hi, edge_lo;     // rows 0 .. p/2-1
  int edge_width = 0;

  Eigen::VectorXd apply(const Eigen::VectorXd& f) const {
    if (static_cast<int>(f.size()) != size)
      throw std::invalid_argument("DiffOperator::apply: length mismatch");
    Eigen::VectorXd out(size);
    const int half = fd_order / 2;
    const int width = fd_order + 1;
    if (periodic) {
      std::vector<double> buf(width);
      for (int i = 0; i < size; ++i) {
        for (int o = -half; o <= half; ++o) {
          int j = (i + o) % size;
          if (j < 0) j += size;
          buf[o + half] = f[j];
        }
        out[i] = hscale * dot2pair(central_hi.data(), central_lo.data(), buf.data(), width);
      }
      return out;
    }
    const double sign = (deriv % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> buf(edge_width);
    for (int i = 0; i < half; ++i)
      out[i] = hscale * dot2pair(edge_hi[i].data(), edge_lo[i].data(), f.data(), edge_width);
    for (int i = half; i < size - half; ++i)
      out[i] =
          hscale * dot2pair(central_hi.data(), central_lo.data(), f.data() + (i - half), width);
    for (int i = 0; i < half; ++i) {
      for (int j = 0; j < edge_width; ++j) buf[j] = f[size - 1 - j];
      out[size - 1 - i] =
          sign * hscale * dot2pair(edge_hi[i].data(), edge_lo[i].data(), buf.data(), edge_width);
    }
    return out;
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const {
    const Eigen::VectorXd re = f.real(), im = f.imag();
    const Eigen::VectorXd dre = apply(re), dim = apply(im);
    Eigen::VectorXcd out(size);
    out.real() = dre;
    out.imag() = dim;
    return out;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
    const int half = fd_order / 2;
    if (periodic) {
      for (int i = 0; i < size; ++i)
        for (int o = -half; o <= half; ++o) {
          int j = (i + o) % size;
          if (j < 0) j += size;
          M(i, j) += hscale * (central_hi[o + half] + central_lo[o + half]);
        }
      return M;
    }
    const double sign = (deriv % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < half; ++i)
      for (int j = 0; j < edge_width; ++j) {
        M(i, j) = hscale * (edge_hi[i][j] + edge_lo[i][j]);
        M(size - 1 - i, size - 1 - j) = sign * M(i, j);
      }
    for (int i = half; i < size - half; ++i)
      for (int o = -half; o <= half; ++o)
        M(i, i + o) = hscale * (central_hi[o + half] + central_lo[o + half]);
    return M;
  }
};

namespace detail {
inline void split_weights(const std::vector<long double>& w, std::vector<double>& hi,
                          std::vector<double>& lo) {
  hi.resize(w.size());
  lo.resize(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    hi[j] = static_cast<double>(w[j]);
    lo[j] = static_cast<double>(w[j] - static_cast<long double>(hi[j]));
  }
}
}  // namespace detail

inline DiffOperator diff_matrix(const Grid& g, int order_of_derivative) {
  if (order_of_derivative < 1 || order_of_derivative > 2)
    throw std::invalid_argument("diff_matrix: derivative order must be 1 or 2");
  const int p = g.fd_order, d = order_of_derivative;
  DiffOperator D;
  D.size = g.n_points;
  D.deriv = d;
  D.fd_order = p;
  D.spacing = g.spacing;
  D.hscale = std::pow(g.spacing, -d);

  std::vector<int> offs(p + 1);
  for (int j = 0; j <= p; ++j) offs[j] = j - p / 2;
  detail::split_weights(stencil_weights_exact(offs, 0, d), D.central_hi, D.central_lo);

  // one-sided rows need d extra nodes to reach the same accuracy order
  D.edge_width = p + d;
  offs.resize(D.edge_width);
  for (int j = 0; j < D.edge_width; ++j) offs[j] = j;
  D.edge_hi.resize(p / 2);
  D.edge_lo.resize(p / 2);
  for (int i = 0; i < p / 2; ++i)
    detail::split_weights(stencil_weights_exact(offs, i, d), D.edge_hi[i], D.edge_lo[i]);
  return D;
}

inline DiffOperator diff_matrix_periodic(const Grid& g, int order_of_derivative) {
  DiffOperator D = diff_matrix(g, order_of_derivative);
  D.periodic = true;
  D.size = g.n_points - 1;
  D.edge_hi.clear();
  D.edge_lo.clear();
  D.edge_width = 0;
  return D;
}

inline double integrate(const Grid& g, const Eigen::VectorXd& samples) {
  if (samples.size() != g.points.size())
    throw std::invalid_argument("integrate: sample length does not match grid");
  return dot2(g.weights.data(), samples.data(), static_cast<std::size_t>(g.n_points));
}

inline cplx integrate(const Grid& g, const Eigen::VectorXcd& samples) {
  if (samples.size() != g.points.size())
    throw std::invalid_argument("integrate: sample length does not match grid");
  const Eigen::VectorXd re = samples.real(), im = samples.imag();
  return {dot2(g.weights.data(), re.data(), static_cast<std::size_t>(g.n_points)),
          dot2(g.weights.data(), im.data(), static_cast<std::size_t>(g.n_points))};
}

}  // namespace qbox

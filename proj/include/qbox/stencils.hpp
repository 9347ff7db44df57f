#pragma once
// Finite-difference stencil weights on uniform grids.
//
// A stencil over integer node offsets {o_j} approximating the d-th derivative
// at integer position `at` is defined by the local Vandermonde moment system
//     sum_j w_j (o_j - at)^m = d! * [m == d],   m = 0 .. (#nodes - 1).
// We produce its solution through the Lagrange basis: w_j = L_j^(d)(at) where
// L_j is the Lagrange polynomial of node j.  With integer offsets every
// intermediate of the expansion is an exact integer well inside the long
// double mantissa for the orders used here, so each weight suffers a single
// rounding.  Direct elimination on the Vandermonde matrix would lose ~9
// digits at order 8; this path loses none.

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qbox {

inline std::vector<long double> stencil_weights_exact(const std::vector<int>& offsets, int at,
                                                      int deriv) {
  const int m = static_cast<int>(offsets.size());
  if (m == 0) throw std::invalid_argument("stencil_weights: empty stencil");
  if (deriv < 0 || deriv >= m)
    throw std::invalid_argument("stencil_weights: derivative order must be below node count");
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (offsets[a] == offsets[b])
        throw std::invalid_argument("stencil_weights: duplicate offset");

  std::vector<long double> w(m);
  std::vector<long double> c(m);
  for (int j = 0; j < m; ++j) {
    // numerator polynomial prod_{l != j} (x - o_l); coefficients stay exact
    std::fill(c.begin(), c.end(), 0.0L);
    c[0] = 1.0L;
    int deg = 0;
    long double denom = 1.0L;
    for (int l = 0; l < m; ++l) {
      if (l == j) continue;
      denom *= static_cast<long double>(offsets[j] - offsets[l]);
      const long double o = static_cast<long double>(offsets[l]);
      ++deg;
      for (int k = deg; k > 0; --k) c[k] = c[k - 1] - o * c[k];
      c[0] = -o * c[0];
    }
    // evaluate the deriv-th derivative of the numerator at `at` (Horner)
    long double v = 0.0L;
    for (int k = deg; k >= deriv; --k) {
      long double fall = 1.0L;
      for (int i = 0; i < deriv; ++i) fall *= static_cast<long double>(k - i);
      v = v * static_cast<long double>(at) + c[k] * fall;
    }
    w[j] = v / denom;
  }
  return w;
}

inline std::vector<double> stencil_weights(const std::vector<int>& offsets, int at, int deriv) {
  const std::vector<long double> ww = stencil_weights_exact(offsets, at, deriv);
  std::vector<double> w(ww.size());
  for (std::size_t j = 0; j < ww.size(); ++j) w[j] = static_cast<double>(ww[j]);
  return w;
}

}  // namespace qbox

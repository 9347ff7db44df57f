#pragma once

#include "qbox/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qbox {

// Condition imposed on the wavefunction at the walls xi = -1, +1.
enum class Boundary { Dirichlet, Periodic, Neumann };

inline Boundary boundary_from_code(char c) {
  switch (c) {
    case 'c': return Boundary::Dirichlet;
    case 'p': return Boundary::Periodic;
    case 'v': return Boundary::Neumann;
  }
  throw std::invalid_argument("boundary code must be one of c, p, v");
}

inline char boundary_code(Boundary b) {
  switch (b) {
    case Boundary::Dirichlet: return 'c';
    case Boundary::Periodic: return 'p';
    case Boundary::Neumann: return 'v';
  }
  throw std::logic_error("unreachable");
}

// Potential energy in reduced units.  A uniform external field of reduced
// strength alpha enters as V(xi) = -alpha * xi; arbitrary profiles can be
// supplied tabulated on the grid in use (never interpolated: a table made
// for a different grid is rejected).
class Potential {
 public:
  static Potential constant(double value) {
    Potential p;
    p.kind_ = Kind::Constant;
    p.value_ = value;
    return p;
  }

  static Potential linear_field(double alpha) {
    Potential p;
    p.kind_ = Kind::LinearField;
    p.alpha_ = alpha;
    return p;
  }

  static Potential tabulated(Eigen::VectorXd values) {
    Potential p;
    p.kind_ = Kind::Tabulated;
    p.table_ = std::move(values);
    return p;
  }

  // Load "xi,value" rows (optional header) and check the xi column against
  // the grid the caller intends to use.
  static Potential from_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential file: " + path);
    std::vector<double> xi, val;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string a, b;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
        throw std::runtime_error("potential file needs two columns: " + path);
      try {
        std::size_t ai = 0, bi = 0;
        const double x = std::stod(a, &ai);
        const double v = std::stod(b, &bi);
        xi.push_back(x);
        val.push_back(v);
      } catch (const std::exception&) {
        if (xi.empty()) continue;  // header line
        throw std::runtime_error("malformed row in potential file: " + line);
      }
    }
    if (static_cast<int>(xi.size()) != grid.n_points)
      throw std::runtime_error("potential file has " + std::to_string(xi.size()) +
                               " samples but the grid has " +
                               std::to_string(grid.n_points) + " points");
    Eigen::VectorXd v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      if (std::abs(xi[i] - grid.points[i]) > 1e-12)
        throw std::runtime_error("potential file was tabulated on a different grid "
                                 "(first mismatch at row " + std::to_string(i) + ")");
      v[i] = val[i];
    }
    return tabulated(std::move(v));
  }

  Eigen::VectorXd sample(const Grid& g) const {
    switch (kind_) {
      case Kind::Constant:
        return Eigen::VectorXd::Constant(g.n_points, value_);
      case Kind::LinearField:
        return -alpha_ * g.points;
      case Kind::Tabulated:
        if (table_.size() != g.n_points)
          throw std::invalid_argument("tabulated potential has " +
                                      std::to_string(table_.size()) +
                                      " samples but the grid has " +
                                      std::to_string(g.n_points) + " points");
        return table_;
    }
    throw std::logic_error("unreachable");
  }

  // Reduced field strength; zero for anything that is not a linear field.
  double alpha() const { return kind_ == Kind::LinearField ? alpha_ : 0.0; }

  bool is_linear_field() const { return kind_ == Kind::LinearField; }

  // Wrapped (periodic) operators identify xi = -1 with xi = +1, which only
  // makes sense when the potential agrees there.
  bool matches_at_endpoints(const Grid& g, double tol = 1e-12) const {
    const Eigen::VectorXd v = sample(g);
    return std::abs(v[0] - v[g.n_points - 1]) <= tol * (1.0 + std::abs(v[0]));
  }

 private:
  enum class Kind { Constant, LinearField, Tabulated };
  Kind kind_ = Kind::Constant;
  double value_ = 0.0;
  double alpha_ = 0.0;
  Eigen::VectorXd table_;
};

// Laboratory quantities behind the reduced variables.  The box spans
// [-half_width, +half_width]; `field` is a uniform external field coupling
// to `charge`.
struct PhysicalScales {
  double hbar = 1.0;
  double mass = 1.0;
  double half_width = 1.0;
  double charge = 0.0;
  double field = 0.0;
};

// Reduced field strength for a charged particle in a uniform field.
inline double dimensionless_field(const PhysicalScales& s) {
  return 2.0 * s.mass * s.charge * s.field * s.half_width * s.half_width *
         s.half_width / (s.hbar * s.hbar);
}

inline double dimensionless_energy(const PhysicalScales& s, double energy) {
  return 2.0 * s.mass * s.half_width * s.half_width * energy / (s.hbar * s.hbar);
}

inline double dimensional_energy(const PhysicalScales& s, double beta) {
  return beta * s.hbar * s.hbar / (2.0 * s.mass * s.half_width * s.half_width);
}

// Field-free hard-wall eigenpair, k = 1, 2, ...; normalized so that
// (1/2) ∫ |psi|^2 dxi = 1.
inline std::pair<Eigen::VectorXd, double> analytic_box_state(const Grid& g, int k) {
  if (k < 1) throw std::invalid_argument("state index starts at 1");
  Eigen::VectorXd psi(g.n_points);
  const double kh = 0.5 * k * M_PI;
  for (int i = 0; i < g.n_points; ++i)
    psi[i] = std::sqrt(2.0) * std::sin(kh * (g.points[i] + 1.0));
  return {std::move(psi), kh * kh};
}

// Mirror a sampled function through xi -> -xi (the grid is symmetric).
inline Eigen::VectorXd reflect(const Eigen::VectorXd& f) {
  return f.reverse();
}

}  // namespace qbox

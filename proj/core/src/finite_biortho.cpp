#include "ptg/finite_biortho.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ptg {
namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double max_norm(const MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_small_square(const MatrixXcd& H, const char* who) {
  if (H.rows() == 0 || H.rows() != H.cols()) {
    throw ShapeError(std::string(who) + " needs a nonempty square matrix, got " +
                     std::to_string(H.rows()) + "x" + std::to_string(H.cols()));
  }
  if (H.rows() > kMaxFiniteDim) {
    throw ShapeError(std::string(who) + " is capped at " + std::to_string(kMaxFiniteDim) +
                     "x" + std::to_string(kMaxFiniteDim));
  }
  if (!H.allFinite()) throw DomainError(std::string(who) + " requires finite entries");
}

// Monic characteristic polynomial det(zI - H) = sum_k c[k] z^k, c[n] = 1,
// via the Leverrier trace recursion. Exact apart from rounding; used only to
// seed the root iteration, so its conditioning never limits final accuracy.
std::vector<Complex> char_poly(const MatrixXcd& H) {
  const Index n = H.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = Complex(1.0, 0.0);
  MatrixXcd M = MatrixXcd::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    M = H * M + c[static_cast<std::size_t>(n - k + 1)] * MatrixXcd::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(H * M).trace() / static_cast<double>(k);
  }
  return c;
}

Complex eval_poly(const std::vector<Complex>& c, Complex z) {
  Complex p = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) p = p * z + c[k];
  return p;
}

Complex eval_poly_deriv(const std::vector<Complex>& c, Complex z) {
  Complex p(0.0, 0.0);
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    p = p * z + static_cast<double>(k) * c[k];
  }
  return p;
}

// Simultaneous Weierstrass iteration for all roots of a monic polynomial,
// followed by a few Newton steps per root. Good to ~1e-12 for the separated
// spectra this module admits; the matrix-side polish below does the rest.
std::vector<Complex> poly_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius += 1.0;

  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  Complex w(1.0, 0.0);
  for (auto& root : z) {
    w *= seed;
    root = radius * w;
  }

  for (int iter = 0; iter < 600; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex den(1.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      if (den == Complex(0.0, 0.0)) {
        z[i] += Complex(1e-8 * radius, 1e-8 * radius);
        worst = radius;
        continue;
      }
      const Complex dz = eval_poly(c, z[i]) / den;
      z[i] -= dz;
      worst = std::max(worst, std::abs(dz));
    }
    if (worst <= 1e-14 * radius) break;
  }

  for (auto& root : z) {
    for (int step = 0; step < 3; ++step) {
      const Complex d = eval_poly_deriv(c, root);
      if (d == Complex(0.0, 0.0)) break;
      root -= eval_poly(c, root) / d;
    }
  }
  return z;
}

void fix_phase(VectorXcd& v) {
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex a = v(imax);
  const double mag = std::abs(a);
  if (mag > 0.0) v *= std::conj(a) / mag;
}

struct EigPair {
  Complex lambda;
  VectorXcd vec;
};

// Inverse iteration with Rayleigh-quotient updates, started from the
// polynomial root and a deterministic pseudo-random direction. Converges in
// a couple of factorizations for simple eigenvalues.
EigPair refine_pair(const MatrixXcd& H, Complex lambda0, unsigned salt) {
  const Index n = H.rows();
  const double scale = std::max(1.0, H.norm());

  std::mt19937 rng(0x9e3779b9u + 0x85ebca6bu * salt);
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXcd x(n);
  for (Index i = 0; i < n; ++i) x(i) = Complex(gauss(rng), gauss(rng));
  x.normalize();

  Complex lambda = lambda0;
  double best_res = std::numeric_limits<double>::infinity();
  VectorXcd best = x;
  Complex best_lambda = lambda;

  for (int it = 0; it < 12; ++it) {
    const MatrixXcd shifted = H - lambda * MatrixXcd::Identity(n, n);
    const VectorXcd y = Eigen::PartialPivLU<MatrixXcd>(shifted).solve(x);
    if (!y.allFinite() || y.norm() == 0.0) {
      lambda += Complex(1e-14 * scale, 1e-14 * scale);
      continue;
    }
    x = y.normalized();
    const VectorXcd hx = H * x;
    const Complex rq = x.dot(hx);
    const double res = (hx - rq * x).norm();
    if (res < best_res) {
      best_res = res;
      best = x;
      best_lambda = rq;
    }
    if (res <= 1e-15 * scale) break;
    lambda = rq;
  }

  if (!(best_res <= 1e-10 * scale)) {
    throw NonDiagonalizable("eigenpair refinement stalled at residual " +
                            std::to_string(best_res) + "; matrix is too close to defective");
  }
  fix_phase(best);
  return {best_lambda, best};
}

std::vector<EigPair> eigen_2x2(const MatrixXcd& H) {
  const Complex a = H(0, 0), b = H(0, 1), c = H(1, 0), d = H(1, 1);
  const Complex mean = 0.5 * (a + d);
  const Complex root = std::sqrt(mean * mean - (a * d - b * c));
  const double scale = std::max(1.0, H.norm());

  std::vector<EigPair> out;
  for (const Complex lambda : {mean + root, mean - root}) {
    const Eigen::Vector2cd cand1(b, lambda - a);
    const Eigen::Vector2cd cand2(lambda - d, c);
    Eigen::Vector2cd v = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    if (v.norm() <= 1e-14 * scale) {
      // Diagonal matrix: pick the axis whose entry this eigenvalue matches.
      v = std::abs(lambda - a) <= std::abs(lambda - d) ? Eigen::Vector2cd(1.0, 0.0)
                                                       : Eigen::Vector2cd(0.0, 1.0);
    }
    VectorXcd vec = v.normalized();
    fix_phase(vec);
    out.push_back({lambda, std::move(vec)});
  }
  return out;
}

}  // namespace

FiniteBiorthoSystem build_system(const MatrixXcd& H) {
  require_small_square(H, "build_system");
  const Index n = H.rows();
  const double scale = std::max(H.norm(), std::numeric_limits<double>::min());

  std::vector<EigPair> pairs;
  if (n == 1) {
    VectorXcd v(1);
    v(0) = Complex(1.0, 0.0);
    pairs.push_back({H(0, 0), std::move(v)});
  } else if (n == 2) {
    pairs = eigen_2x2(H);
  } else {
    const std::vector<Complex> roots = poly_roots(char_poly(H));
    unsigned salt = 0;
    for (const Complex r : roots) pairs.push_back(refine_pair(H, r, salt++));
  }

  std::sort(pairs.begin(), pairs.end(), [](const EigPair& a, const EigPair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const double gap = std::abs(pairs[i].lambda - pairs[j].lambda);
      if (gap <= 1e-8 * scale) {
        throw NonDiagonalizable("eigenvalue gap " + std::to_string(gap) +
                                " is below 1e-8 * ||H||; dual frame would blow up");
      }
    }
  }

  FiniteBiorthoSystem sys;
  sys.H = H;
  sys.eigenvalues.resize(n);
  sys.phi.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    sys.eigenvalues(k) = pairs[static_cast<std::size_t>(k)].lambda;
    sys.phi.col(k) = pairs[static_cast<std::size_t>(k)].vec;
  }

  const MatrixXcd eye = MatrixXcd::Identity(n, n);
  const MatrixXcd phi_inv = Eigen::PartialPivLU<MatrixXcd>(sys.phi).solve(eye);
  if (!phi_inv.allFinite() || max_norm(sys.phi * phi_inv - eye) > 1e-6) {
    throw NonDiagonalizable("eigenvector matrix is numerically singular");
  }
  sys.psi = phi_inv.adjoint();
  sys.s_phi = sys.phi * sys.phi.adjoint();
  sys.s_psi = sys.psi * sys.psi.adjoint();
  sys.complex_spectrum = (sys.eigenvalues.imag().cwiseAbs().array() > 1e-10 * scale).any();
  return sys;
}

IntertwiningReport verify_intertwining(const FiniteBiorthoSystem& sys) {
  const double h = std::max(max_norm(sys.H), std::numeric_limits<double>::min());
  IntertwiningReport out;
  out.s_psi_residual = max_norm(sys.s_psi * sys.H - sys.H.adjoint() * sys.s_psi) /
                       (h * std::max(max_norm(sys.s_psi), std::numeric_limits<double>::min()));
  out.s_phi_residual = max_norm(sys.H * sys.s_phi - sys.s_phi * sys.H.adjoint()) /
                       (h * std::max(max_norm(sys.s_phi), std::numeric_limits<double>::min()));
  return out;
}

VectorXcd intertwine_map(const MatrixXcd& X, const MatrixXcd& H1, const MatrixXcd& H2,
                         const VectorXcd& phi, double tol) {
  if (H1.rows() != H1.cols() || H2.rows() != H2.cols() || H1.rows() == 0 || H2.rows() == 0) {
    throw ShapeError("intertwine_map needs square H1 and H2");
  }
  if (X.cols() != H1.rows() || X.rows() != H2.rows() || phi.size() != H1.rows()) {
    throw ShapeError("intertwine_map shape mismatch: X is " + std::to_string(X.rows()) + "x" +
                     std::to_string(X.cols()));
  }
  if (!X.allFinite() || !H1.allFinite() || !H2.allFinite() || !phi.allFinite()) {
    throw DomainError("intertwine_map requires finite inputs");
  }
  if (!(tol > 0.0)) throw DomainError("intertwine_map tolerance must be positive");

  const double hscale = std::max({1.0, max_norm(H1), max_norm(H2)});
  const double xscale = std::max(max_norm(X), std::numeric_limits<double>::min());

  const double rel = max_norm(X * H1 - H2 * X) / (xscale * hscale);
  if (rel > tol) {
    throw IntertwiningError("X H1 = H2 X fails: normalized residual " + std::to_string(rel));
  }

  const double pnorm = phi.norm();
  if (pnorm == 0.0) throw IntertwiningError("input vector is zero");
  const VectorXcd u = phi / pnorm;
  const Complex lambda = u.dot(H1 * u);
  const double eres = (H1 * u - lambda * u).norm() / hscale;
  if (eres > tol) {
    throw IntertwiningError("input is not an eigenvector of H1: normalized residual " +
                            std::to_string(eres));
  }

  const VectorXcd image = X * phi;
  if (image.norm() <= 1e-12 * xscale * pnorm) {
    throw IntertwiningError("eigenvector maps into the kernel of X");
  }

  const double ires = (H2 * image - lambda * image).norm() / (hscale * image.norm());
  if (ires > tol) {
    throw IntertwiningError("image misses the eigen-residual bound: " + std::to_string(ires));
  }
  return image;
}

}  // namespace ptg

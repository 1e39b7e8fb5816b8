#include "ptg/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ptg {
namespace {

constexpr double kDiracPointTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Strips IEEE signed zeros so the principal square root below is
// deterministic for arithmetically real inputs.
Complex canonical(Complex z) { return {z.real() + 0.0, z.imag() + 0.0}; }

Eigen::Vector2cd unit_phase_fixed(Eigen::Vector2cd v) {
  v.normalize();
  for (int i = 0; i < 2; ++i) {
    const double a = std::abs(v(i));
    if (a > 1e-14) {
      v *= std::conj(v(i)) / a;
      break;
    }
  }
  return v;
}

double sine_between(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  // Projection residual rather than sqrt(1 - cos^2), which loses half the
  // significant digits for nearly parallel vectors.
  const Eigen::Vector2cd ah = a / a.norm();
  const Eigen::Vector2cd rest = b - ah * Complex(ah.adjoint() * b);
  return rest.norm() / b.norm();
}

Eigen::Matrix2cd swap_conj(const Eigen::Matrix2cd& H) {
  Eigen::Matrix2cd P;
  P << 0, 1, 1, 0;
  return P * H.conjugate() * P;
}

Eigen::Vector2cd pt_of(const Eigen::Vector2cd& v) {
  return Eigen::Vector2cd(std::conj(v(1)), std::conj(v(0)));
}

}  // namespace

DimerParams::DimerParams(double g_, double V_) : g(g_), V(V_) {
  if (!finite(g) || !finite(V) || g < 0.0 || V < 0.0) {
    throw DomainError("dimer parameters must be finite and nonnegative");
  }
}

Eigen::Matrix2cd dimer_matrix(const DimerParams& p) {
  Eigen::Matrix2cd H;
  H << Complex(0.0, p.V), Complex(p.g, 0.0), Complex(p.g, 0.0), Complex(0.0, -p.V);
  return H;
}

DimerEigen dimer_eigen(const DimerParams& p) {
  DimerEigen out;
  const double scale = std::max(1.0, p.g + p.V);
  const bool at_ep = p.V > 0.0 && std::abs(p.g - p.V) <= 1e-12 * scale;

  if (at_ep) {
    out.region = RegionClass::Exceptional;
  } else if (p.g * p.g > p.V * p.V || p.V == 0.0) {
    out.region = RegionClass::Symmetric;
  } else {
    out.region = RegionClass::Broken;
  }

  const double disc = p.g * p.g - p.V * p.V;
  if (out.region == RegionClass::Exceptional) {
    out.E_plus = out.E_minus = Complex(0.0, 0.0);
  } else if (disc >= 0.0) {
    const double e = std::sqrt(disc);
    out.E_plus = Complex(e, 0.0);
    out.E_minus = Complex(-e, 0.0);
  } else {
    const double e = std::sqrt(-disc);
    out.E_plus = Complex(0.0, e);
    out.E_minus = Complex(0.0, -e);
  }

  if (p.g == 0.0) {
    // Diagonal matrix; the generic (g, E - iV) column degenerates.
    out.v_plus = Eigen::Vector2cd(1.0, 0.0);
    out.v_minus = Eigen::Vector2cd(0.0, 1.0);
    if (p.V == 0.0) out.E_plus = out.E_minus = Complex(0.0, 0.0);
    return out;
  }

  const Complex iv(0.0, p.V);
  out.v_plus = unit_phase_fixed(Eigen::Vector2cd(Complex(p.g, 0.0), out.E_plus - iv));
  if (out.region == RegionClass::Exceptional) {
    out.exceptional = true;
    out.v_minus = out.v_plus;
  } else {
    out.v_minus = unit_phase_fixed(Eigen::Vector2cd(Complex(p.g, 0.0), out.E_minus - iv));
  }
  return out;
}

DimerPTReport dimer_pt_check(const DimerParams& p) {
  const Eigen::Matrix2cd H = dimer_matrix(p);
  const DimerEigen eig = dimer_eigen(p);

  DimerPTReport out;
  out.region = eig.region;
  out.matrix_residual = (swap_conj(H) - H).cwiseAbs().maxCoeff();

  if (eig.region == RegionClass::Broken) {
    // PT maps each eigenvector to one at the conjugate eigenvalue.
    const double s1 = sine_between(pt_of(eig.v_plus), eig.v_minus);
    const double s2 = sine_between(pt_of(eig.v_minus), eig.v_plus);
    out.pairing_residual = std::max(s1, s2);
    return out;
  }

  // Real spectrum: each eigenvector admits a phase making it PT invariant.
  double worst = 0.0;
  for (const auto& v : {eig.v_plus, eig.v_minus}) {
    const Complex c = Complex(v.adjoint() * pt_of(v));
    const Complex phase = std::polar(1.0, 0.5 * std::arg(c));
    const Eigen::Vector2cd u = phase * v;
    worst = std::max(worst, (pt_of(u) - u).norm());
  }
  out.phase_residual = worst;
  return out;
}

Eigen::Vector2d dirac_K() {
  const double c = 2.0 * kPi / 3.0;
  return {c, c * std::sqrt(3.0)};
}

Eigen::Vector2d dirac_KPrime() {
  const double c = 2.0 * kPi / 3.0;
  return {-c, c * std::sqrt(3.0)};
}

BlochParams::BlochParams() : BlochParams(1.0, Complex(0.0, 0.0), Complex(0.0, 0.0)) {}

BlochParams::BlochParams(double t1_, Complex muA_, Complex muB_)
    : BlochParams(t1_, muA_, muB_, Eigen::Vector2d(-0.5, std::sqrt(3.0) / 2.0),
                  Eigen::Vector2d(0.5, std::sqrt(3.0) / 2.0)) {}

BlochParams::BlochParams(double t1_, Complex muA_, Complex muB_, Eigen::Vector2d a1_,
                         Eigen::Vector2d a2_)
    : t1(t1_), muA(muA_), muB(muB_), a1(std::move(a1_)), a2(std::move(a2_)) {
  if (!finite(t1) || !finite(muA) || !finite(muB) || !a1.allFinite() || !a2.allFinite()) {
    throw DomainError("Bloch parameters must be finite");
  }
  if (std::abs(a1.norm() - a2.norm()) > kDiracPointTol * std::max(1.0, a1.norm())) {
    throw DomainError("neighbor-cell vectors must have equal length");
  }
  for (const auto& k : {dirac_K(), dirac_KPrime()}) {
    if (std::abs(structure_factor(*this, k)) > kDiracPointTol) {
      throw DomainError("structure factor must vanish at the Brillouin-zone corners; "
                        "got |f| = " +
                        std::to_string(std::abs(structure_factor(*this, k))));
    }
  }
}

Complex structure_factor(const BlochParams& p, const Eigen::Vector2d& k) {
  return 1.0 + std::exp(Complex(0.0, k.dot(p.a1))) + std::exp(Complex(0.0, k.dot(p.a2)));
}

Eigen::Matrix2cd bloch_matrix(const BlochParams& p, const Eigen::Vector2d& k) {
  const Complex f = structure_factor(p, k);
  Eigen::Matrix2cd H;
  H << p.muA, p.t1 * f, p.t1 * std::conj(f), p.muB;
  return H;
}

std::pair<Complex, Complex> band_at(const BlochParams& p, const Eigen::Vector2d& k) {
  const Complex f = structure_factor(p, k);
  const Complex mean = 0.5 * (p.muA + p.muB);
  const Complex half = 0.5 * (p.muA - p.muB);
  const Complex disc = canonical(half * half + p.t1 * p.t1 * std::norm(f));
  const Complex root = std::sqrt(disc);
  return {mean + root, mean - root};
}

KGrid::KGrid(double kx_min_, double kx_max_, int nx_, double ky_min_, double ky_max_, int ny_)
    : kx_min(kx_min_), kx_max(kx_max_), nx(nx_), ky_min(ky_min_), ky_max(ky_max_), ny(ny_) {
  if (nx < 1 || ny < 1 || !finite(kx_min) || !finite(kx_max) || !finite(ky_min) ||
      !finite(ky_max)) {
    throw DomainError("k-grid needs finite bounds and at least one point per axis");
  }
}

std::vector<BandPoint> band_surface(const BlochParams& p, const KGrid& grid) {
  std::vector<BandPoint> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double kx =
        grid.nx == 1 ? grid.kx_min
                     : grid.kx_min + (grid.kx_max - grid.kx_min) * ix / (grid.nx - 1.0);
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double ky =
          grid.ny == 1 ? grid.ky_min
                       : grid.ky_min + (grid.ky_max - grid.ky_min) * iy / (grid.ny - 1.0);
      BandPoint pt;
      pt.k = Eigen::Vector2d(kx, ky);
      std::tie(pt.E_plus, pt.E_minus) = band_at(p, pt.k);
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace ptg

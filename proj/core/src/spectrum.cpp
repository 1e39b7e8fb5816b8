#include "ptg/spectrum.hpp"

#include <cmath>

namespace ptg {
namespace {

constexpr Complex kI(0.0, 1.0);

// Principal square root of (landau - V^2), kept exactly real or exactly
// imaginary so region boundaries are sharp.
Complex principal_root(int landau, double V) {
  const double x = static_cast<double>(landau) - V * V;
  if (x >= 0.0) return Complex(std::sqrt(x), 0.0);
  return Complex(0.0, std::sqrt(-x));
}

TruncationSpec bounds_for(std::initializer_list<FockIndex> indices) {
  int n1 = 0, n2 = 1;
  for (const auto& idx : indices) {
    n1 = std::max(n1, idx.n1);
    n2 = std::max(n2, idx.n2);
  }
  return TruncationSpec(n1, n2);
}

}  // namespace

std::string to_string(RegionClass r) {
  switch (r) {
    case RegionClass::Symmetric: return "symmetric";
    case RegionClass::Broken: return "broken";
    case RegionClass::Exceptional: return "exceptional";
  }
  return "?";
}

RegionClass classify(int landau, double V, double tol_ep) {
  if (landau < 0) throw DomainError("classify requires landau >= 0");
  const double gap = static_cast<double>(landau) - V * V;
  if (landau == 0) {
    // A coalescence at l = 0 is a plain degeneracy of one real level, not an
    // exceptional point; positive V lifts it into a single imaginary level.
    return V * V <= tol_ep ? RegionClass::Symmetric : RegionClass::Broken;
  }
  if (std::abs(gap) <= tol_ep) return RegionClass::Exceptional;
  return gap > 0.0 ? RegionClass::Symmetric : RegionClass::Broken;
}

std::pair<Complex, Complex> eigenvalues(int landau, double V, double epsilon) {
  if (landau < 1) throw DomainError("eigenvalues requires landau >= 1; the l = 0 sector is handled by zero_mode");
  const Complex s = principal_root(landau, V);
  return {epsilon * s, -epsilon * s};
}

SectorEigen sector_eigen(const DiracModel& m, int degeneracy, int landau, double tol_ep,
                         double tol_zero) {
  if (degeneracy < 0 || landau < 0) {
    throw DomainError("sector_eigen requires degeneracy >= 0 and landau >= 0");
  }

  SectorEigen out;
  out.degeneracy = degeneracy;
  out.landau = landau;
  out.region = classify(landau, m.V, tol_ep);

  const bool direct = is_direct(m);
  const Complex iev = kI * m.epsilon * m.V;

  if (landau == 0) {
    const FockIndex idx = sector_index(m, 0, degeneracy);
    const auto trunc = bounds_for({idx});
    Spinor vec(trunc);
    if (direct) {
      vec.set_amplitude(Component::Upper, idx, Complex(1.0, 0.0));
      out.E_plus = iev;
      out.E_minus = -iev;
    } else {
      vec.set_amplitude(Component::Lower, idx, Complex(-1.0, 0.0));
      out.E_plus = -iev;
      out.E_minus = iev;
    }
    out.phi_plus = vec;
    out.psi_minus = vec;
    out.degenerate_zero_limit = std::abs(m.V) <= tol_zero;
    return out;
  }

  // Within the coalescence tolerance the root is taken at its limit; a raw
  // root of a near-zero gap would scatter an O(sqrt(tol)) remnant into the
  // eigenvalues and keep the coalescing vectors artificially apart.
  const Complex s = out.region == RegionClass::Exceptional ? Complex(0.0, 0.0)
                                                           : principal_root(landau, m.V);
  const double root_l = std::sqrt(static_cast<double>(landau));
  const Complex iV(0.0, m.V);

  const Complex alpha_p = -kI * (s - iV) / root_l;
  const Complex alpha_m = kI * (s + iV) / root_l;
  const Complex beta_p = -kI * (s + iV) / root_l;
  const Complex beta_m = kI * (s - iV) / root_l;
  out.alpha_plus = alpha_p;
  out.alpha_minus = alpha_m;
  out.beta_plus = beta_p;
  out.beta_minus = beta_m;

  const Complex E = m.epsilon * s;
  out.E_plus = direct ? E : -E;
  out.E_minus = direct ? -E : E;

  const FockIndex top = sector_index(m, landau, degeneracy);
  const FockIndex bot = sector_index(m, landau - 1, degeneracy);
  const auto trunc = bounds_for({top, bot});

  const auto make_vector = [&](Complex coeff) {
    Spinor vec(trunc);
    const double n = std::sqrt(1.0 + std::norm(coeff));
    if (direct) {
      vec.set_amplitude(Component::Upper, top, Complex(1.0 / n, 0.0));
      vec.set_amplitude(Component::Lower, bot, coeff / n);
    } else {
      vec.set_amplitude(Component::Upper, bot, coeff / n);
      vec.set_amplitude(Component::Lower, top, Complex(-1.0 / n, 0.0));
    }
    return vec;
  };

  out.phi_plus = make_vector(alpha_p);
  out.phi_minus = make_vector(alpha_m);
  out.psi_plus = make_vector(beta_p);
  out.psi_minus = make_vector(beta_m);
  return out;
}

SectorEigen zero_mode(const DiracModel& m, int degeneracy, double tol_zero) {
  return sector_eigen(m, degeneracy, 0, kDefaultTolEp, tol_zero);
}

std::vector<SpectrumRow> spectrum_flow(const DiracModel& base, const std::vector<double>& V_grid,
                                       int n2_max, double tol_ep, double tol_zero) {
  if (n2_max < 1) throw DomainError("spectrum_flow requires n2_max >= 1");
  std::vector<SpectrumRow> rows;
  rows.reserve(V_grid.size() * static_cast<std::size_t>(n2_max + 1));
  for (double V : V_grid) {
    DiracModel m(base.cone, base.field_sign, V, base.epsilon);
    for (int l = 0; l <= n2_max; ++l) {
      const SectorEigen sec = sector_eigen(m, 0, l, tol_ep, tol_zero);
      SpectrumRow row;
      row.V = V;
      row.landau = l;
      row.E_plus = sec.E_plus;
      row.E_minus = sec.E_minus;
      row.region = sec.region;
      row.plus_exists = sec.phi_plus.has_value();
      row.minus_exists = sec.phi_minus.has_value();
      row.degenerate = sec.degenerate_zero_limit;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ptg

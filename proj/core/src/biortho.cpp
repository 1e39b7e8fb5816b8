#include "ptg/biortho.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ptg {
namespace {

// Eigenvalues of a Hermitian 1x1 or 2x2 matrix, descending.
std::vector<double> hermitian_eigs(const Eigen::MatrixXcd& H) {
  if (H.rows() == 1) return {H(0, 0).real()};
  const double a = H(0, 0).real();
  const double d = H(1, 1).real();
  const double mid = 0.5 * (a + d);
  const double off = std::hypot(0.5 * (a - d), std::abs(H(0, 1)));
  return {mid + off, mid - off};
}

double sine_to_unit(const Eigen::VectorXcd& unit, const Eigen::VectorXcd& v) {
  const double vn = v.norm();
  if (vn == 0.0) return 1.0;
  // Projection residual rather than sqrt(1 - cos^2), which loses half the
  // significant digits for nearly parallel vectors.
  const Eigen::VectorXcd rest = v - unit * Complex(unit.adjoint() * v);
  return rest.norm() / vn;
}

struct SectorFrame {
  std::vector<BasisLabel> labels;
  std::vector<Eigen::VectorXcd> phi, psi;  // unit coordinate columns
  SectorEigen eigen;
};

SectorFrame sector_frame(const DiracModel& m, int degeneracy, int landau, double tol_ep) {
  SectorFrame out;
  out.eigen = sector_eigen(m, degeneracy, landau, tol_ep);
  out.labels = sector_block(m, degeneracy, landau).basis;
  for (const auto& v : {out.eigen.phi_plus, out.eigen.phi_minus}) {
    if (v) out.phi.push_back(coordinates(*v, out.labels));
  }
  for (const auto& v : {out.eigen.psi_plus, out.eigen.psi_minus}) {
    if (v) out.psi.push_back(coordinates(*v, out.labels));
  }
  return out;
}

Eigen::MatrixXcd frame_sum(const std::vector<Eigen::VectorXcd>& vs, Eigen::Index dim) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& v : vs) out += v * v.adjoint();
  return out;
}

IntertwinerAction act_with_frame(const DiracModel& m, int degeneracy, int landau, Branch branch,
                                 double tol_ep, bool dual) {
  if (landau < 1) throw DomainError("intertwiner action requires landau >= 1");
  const auto frame = sector_frame(m, degeneracy, landau, tol_ep);
  if (frame.eigen.region == RegionClass::Exceptional) {
    throw RankDeficiency("sector (" + std::to_string(degeneracy) + "," + std::to_string(landau) +
                         ") coalesces at V^2 = " + std::to_string(m.V * m.V) +
                         "; the intertwiner is rank deficient");
  }
  const auto& frame_vecs = dual ? frame.psi : frame.phi;
  const auto& input_vecs = dual ? frame.phi : frame.psi;
  const auto& w = input_vecs[branch == Branch::Plus ? 0 : 1];

  Eigen::VectorXcd image = Eigen::VectorXcd::Zero(w.size());
  for (const auto& u : frame_vecs) image += u * Complex(u.adjoint() * w);

  IntertwinerAction out;
  out.input = branch;
  if (image.norm() < 1e-300) {
    throw RankDeficiency("intertwiner image vanished in sector (" + std::to_string(degeneracy) +
                         "," + std::to_string(landau) + ")");
  }
  const double sin_plus = sine_to_unit(frame_vecs[0], image);
  const double sin_minus = sine_to_unit(frame_vecs[1], image);
  out.matched = sin_plus <= sin_minus ? Branch::Plus : Branch::Minus;
  out.parallel_residual = std::min(sin_plus, sin_minus);
  out.image = spinor_from_coordinates(frame.labels, image);
  return out;
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

GramReport gram(const DiracModel& m, int degeneracy, int landau, double tol_ep) {
  const SectorEigen sec = sector_eigen(m, degeneracy, landau, tol_ep);
  GramReport out;
  out.degeneracy = degeneracy;
  out.landau = landau;
  out.region = sec.region;
  const std::array<const std::optional<Spinor>*, 2> phis = {&sec.phi_plus, &sec.phi_minus};
  const std::array<const std::optional<Spinor>*, 2> psis = {&sec.psi_plus, &sec.psi_minus};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      if (phis[j]->has_value() && psis[k]->has_value()) {
        out.entries[j][k] = inner(**phis[j], **psis[k]);
      }
    }
  }
  return out;
}

Complex phi_phi_overlap(const DiracModel& m, int degeneracy, int landau, double tol_ep) {
  if (landau < 1) throw DomainError("phi_phi_overlap requires landau >= 1");
  const SectorEigen sec = sector_eigen(m, degeneracy, landau, tol_ep);
  return inner(*sec.phi_plus, *sec.phi_minus);
}

SectorIntertwiner sector_intertwiner(const DiracModel& m, int degeneracy, int landau,
                                     double rank_tol) {
  const auto frame = sector_frame(m, degeneracy, landau, kDefaultTolEp);
  SectorIntertwiner out;
  out.degeneracy = degeneracy;
  out.landau = landau;
  out.basis = frame.labels;
  const auto dim = static_cast<Eigen::Index>(frame.labels.size());
  out.s_phi = frame_sum(frame.phi, dim);
  out.s_psi = frame_sum(frame.psi, dim);
  for (double eig : hermitian_eigs(out.s_phi)) {
    if (eig > rank_tol) ++out.rank_s_phi;
  }
  return out;
}

IntertwinerAction intertwiner_action(const DiracModel& m, int degeneracy, int landau,
                                     Branch branch, double tol_ep) {
  return act_with_frame(m, degeneracy, landau, branch, tol_ep, /*dual=*/false);
}

IntertwinerAction intertwiner_action_dual(const DiracModel& m, int degeneracy, int landau,
                                          Branch branch, double tol_ep) {
  return act_with_frame(m, degeneracy, landau, branch, tol_ep, /*dual=*/true);
}

Eigen::MatrixXcd eigenvector_matrix(const DiracModel& m, const TruncationSpec& trunc,
                                    double tol_ep) {
  const auto labels = basis_labels(m, trunc);
  const auto dim = static_cast<Eigen::Index>(labels.size());
  std::vector<Eigen::VectorXcd> columns;
  columns.reserve(static_cast<std::size_t>(dim));
  for (int d = 0; d <= trunc.n1_max; ++d) {
    for (int l = 0; l <= trunc.n2_max; ++l) {
      const SectorEigen sec = sector_eigen(m, d, l, tol_ep);
      for (const auto& v : {sec.phi_plus, sec.phi_minus}) {
        if (v) columns.push_back(coordinates(*v, labels));
      }
    }
  }
  Eigen::MatrixXcd out(dim, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = columns[j];
  }
  return out;
}

CompletenessReport completeness_check(const DiracModel& m, const TruncationSpec& trunc,
                                      const std::optional<Spinor>& probe, double sv_tol,
                                      double tol_ep) {
  const auto labels = basis_labels(m, trunc);
  const Eigen::MatrixXcd M = eigenvector_matrix(m, trunc, tol_ep);

  CompletenessReport out;
  out.dimension = static_cast<int>(labels.size());
  out.columns = static_cast<int>(M.cols());

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  out.smallest_singular_value = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  out.rank = static_cast<int>((sv.array() > sv_tol).count());
  out.complete = out.columns == out.dimension && out.rank == out.dimension;

  // A coalescing sector exists exactly when V^2 sits on an integer Landau
  // index inside the truncation.
  const double v2 = m.V * m.V;
  const int nearest = static_cast<int>(std::lround(v2));
  if (nearest >= 1 && nearest <= trunc.n2_max && std::abs(v2 - nearest) <= tol_ep) {
    out.deficient_landau = nearest;
    const double r = 1.0 / std::sqrt(2.0);
    const FockIndex top = sector_index(m, nearest, 0);
    const FockIndex bot = sector_index(m, nearest - 1, 0);
    Spinor w(fock_bounds(m, trunc));
    if (is_direct(m)) {
      w.set_amplitude(Component::Upper, top, Complex(r, 0.0));
      w.set_amplitude(Component::Lower, bot, Complex(r, 0.0));
    } else {
      w.set_amplitude(Component::Upper, bot, Complex(r, 0.0));
      w.set_amplitude(Component::Lower, top, Complex(-r, 0.0));
    }
    out.witness = w;
  }

  std::optional<Eigen::VectorXcd> w_coords;
  if (probe) {
    Eigen::VectorXcd w = coordinates(*probe, labels);
    const double n = w.norm();
    if (n == 0.0) throw DomainError("completeness probe must be nonzero");
    w_coords = w / n;
  } else if (out.witness) {
    w_coords = coordinates(*out.witness, labels);
  }
  if (w_coords) {
    out.max_overlap = (w_coords->adjoint() * M).cwiseAbs().maxCoeff();
  } else {
    out.max_overlap = out.smallest_singular_value;
  }
  return out;
}

ZeroModeGram zero_mode_gram(const DiracModel& m, int degeneracy, double tol_zero) {
  const SectorEigen sec = zero_mode(m, degeneracy, tol_zero);
  ZeroModeGram out;
  out.overlap = inner(*sec.phi_plus, *sec.psi_minus);
  out.phi_minus_absent = !sec.phi_minus.has_value();
  out.psi_plus_absent = !sec.psi_plus.has_value();
  out.degenerate_zero_limit = sec.degenerate_zero_limit;
  return out;
}

}  // namespace ptg

#include "ptg/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ptg {
namespace {

constexpr Complex kI(0.0, 1.0);

LadderOp raise_op(int mode) { return mode == 2 ? LadderOp::Raise2 : LadderOp::Raise1; }
LadderOp lower_op(int mode) { return mode == 2 ? LadderOp::Lower2 : LadderOp::Lower1; }

FockIndex make_index(int mode, int active, int degeneracy) {
  return mode == 2 ? FockIndex{degeneracy, active} : FockIndex{active, degeneracy};
}

void axpy(AmplitudeMap& dst, Complex scale, const AmplitudeMap& src) {
  if (scale == Complex(0.0, 0.0)) return;
  for (const auto& [idx, value] : src) {
    auto [it, inserted] = dst.try_emplace(idx, scale * value);
    if (!inserted) it->second += scale * value;
  }
}

}  // namespace

std::string to_string(Cone c) { return c == Cone::K ? "K" : "K'"; }

bool is_direct(const DiracModel& m) {
  // The two sign patterns pair up across valley and field flips.
  return (m.cone == Cone::K) == (m.field_sign == FieldSign::Positive);
}

int active_mode(const DiracModel& m) {
  return m.field_sign == FieldSign::Positive ? 2 : 1;
}

FockIndex sector_index(const DiracModel& m, int active, int degeneracy) {
  return make_index(active_mode(m), active, degeneracy);
}
std::string to_string(FieldSign s) { return s == FieldSign::Positive ? "+" : "-"; }

DiracModel::DiracModel(Cone cone_, FieldSign field_sign_, double V_, double epsilon_)
    : cone(cone_), field_sign(field_sign_), V(V_), epsilon(epsilon_) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("DiracModel requires epsilon > 0");
  }
  if (!std::isfinite(V)) {
    throw DomainError("DiracModel requires finite V");
  }
}

DiracModel adjoint(const DiracModel& m) {
  DiracModel out = m;
  out.V = -m.V;
  return out;
}

Spinor apply(const DiracModel& m, const Spinor& f) {
  const int mode = active_mode(m);
  const Complex ie = kI * m.epsilon;
  const Complex iev = ie * m.V;
  const auto& trunc = f.truncation();

  AmplitudeMap up, lo;
  axpy(up, iev, f.upper());
  axpy(lo, -iev, f.lower());
  if (is_direct(m)) {
    axpy(up, ie, ladder_map(raise_op(mode), f.lower(), trunc));
    axpy(lo, -ie, ladder_map(lower_op(mode), f.upper(), trunc));
  } else {
    axpy(up, -ie, ladder_map(lower_op(mode), f.lower(), trunc));
    axpy(lo, ie, ladder_map(raise_op(mode), f.upper(), trunc));
  }

  // Prune exact zeros introduced by cancellation.
  for (auto* comp : {&up, &lo}) {
    for (auto it = comp->begin(); it != comp->end();) {
      it = (it->second == Complex(0.0, 0.0)) ? comp->erase(it) : std::next(it);
    }
  }

  Spinor out(trunc);
  out.set_component(Component::Upper, std::move(up));
  out.set_component(Component::Lower, std::move(lo));
  return out;
}

Spinor apply_adjoint(const DiracModel& m, const Spinor& f) { return apply(adjoint(m), f); }

SectorBlock sector_block(const DiracModel& m, int degeneracy, int landau) {
  if (degeneracy < 0 || landau < 0) {
    throw DomainError("sector_block requires degeneracy >= 0 and landau >= 0");
  }
  const int mode = active_mode(m);
  const Complex ie = kI * m.epsilon;

  SectorBlock out;
  out.degeneracy = degeneracy;
  out.landau = landau;

  if (landau == 0) {
    out.dim = 1;
    out.matrix = Eigen::MatrixXcd(1, 1);
    if (is_direct(m)) {
      out.matrix(0, 0) = ie * m.V;
      out.basis = {{Component::Upper, make_index(mode, 0, degeneracy)}};
    } else {
      out.matrix(0, 0) = -ie * m.V;
      out.basis = {{Component::Lower, make_index(mode, 0, degeneracy)}};
    }
    return out;
  }

  const double root = std::sqrt(static_cast<double>(landau));
  out.dim = 2;
  out.matrix = Eigen::MatrixXcd(2, 2);
  if (is_direct(m)) {
    out.matrix << ie * m.V, ie * root, -ie * root, -ie * m.V;
    out.basis = {{Component::Upper, make_index(mode, landau, degeneracy)},
                 {Component::Lower, make_index(mode, landau - 1, degeneracy)}};
  } else {
    out.matrix << ie * m.V, -ie * root, ie * root, -ie * m.V;
    out.basis = {{Component::Upper, make_index(mode, landau - 1, degeneracy)},
                 {Component::Lower, make_index(mode, landau, degeneracy)}};
  }
  return out;
}

std::vector<SectorBlock> sectors(const DiracModel& m, const TruncationSpec& trunc) {
  std::vector<SectorBlock> out;
  out.reserve(static_cast<std::size_t>(trunc.n1_max + 1) * (trunc.n2_max + 1));
  for (int d = 0; d <= trunc.n1_max; ++d) {
    for (int l = 0; l <= trunc.n2_max; ++l) out.push_back(sector_block(m, d, l));
  }
  return out;
}

std::vector<BasisLabel> basis_labels(const DiracModel& m, const TruncationSpec& trunc) {
  const int mode = active_mode(m);
  const bool direct = is_direct(m);
  const int upper_bound = direct ? trunc.n2_max : trunc.n2_max - 1;
  const int lower_bound = direct ? trunc.n2_max - 1 : trunc.n2_max;

  std::vector<BasisLabel> out;
  out.reserve(static_cast<std::size_t>(trunc.n1_max + 1) * (2 * trunc.n2_max + 1));
  for (auto [component, bound] : {std::pair{Component::Upper, upper_bound},
                                  std::pair{Component::Lower, lower_bound}}) {
    for (int a = 0; a <= bound; ++a) {
      for (int d = 0; d <= trunc.n1_max; ++d) {
        out.push_back({component, make_index(mode, a, d)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TruncationSpec fock_bounds(const DiracModel& m, const TruncationSpec& trunc) {
  if (m.field_sign == FieldSign::Positive) return trunc;
  return TruncationSpec(trunc.n2_max, std::max(1, trunc.n1_max));
}

Eigen::VectorXcd coordinates(const Spinor& s, const std::vector<BasisLabel>& labels) {
  std::map<BasisLabel, Eigen::Index> row_of;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    row_of.emplace(labels[i], static_cast<Eigen::Index>(i));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
  for (auto c : {Component::Upper, Component::Lower}) {
    for (const auto& [idx, value] : s.component(c)) {
      auto it = row_of.find({c, idx});
      if (it == row_of.end()) {
        throw DomainError("spinor amplitude at " + to_string(idx) + " outside the given basis");
      }
      out(it->second) = value;
    }
  }
  return out;
}

Spinor spinor_from_coordinates(const std::vector<BasisLabel>& labels,
                               const Eigen::VectorXcd& coords) {
  if (static_cast<std::size_t>(coords.size()) != labels.size()) {
    throw DomainError("coordinate vector size does not match basis size");
  }
  int n1 = 0, n2 = 1;
  for (const auto& label : labels) {
    n1 = std::max(n1, label.index.n1);
    n2 = std::max(n2, label.index.n2);
  }
  Spinor out((TruncationSpec(n1, n2)));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Complex v = coords(static_cast<Eigen::Index>(i));
    if (v != Complex(0.0, 0.0)) out.add_amplitude(labels[i].component, labels[i].index, v);
  }
  return out;
}

Eigen::MatrixXcd matrix_on_basis(const DiracModel& m, const TruncationSpec& trunc) {
  const auto labels = basis_labels(m, trunc);
  const auto bounds = fock_bounds(m, trunc);
  const auto dim = static_cast<Eigen::Index>(labels.size());

  std::map<BasisLabel, Eigen::Index> row_of;
  for (Eigen::Index i = 0; i < dim; ++i) row_of.emplace(labels[i], i);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Spinor column = apply(m, basis_spinor(labels[j].component, labels[j].index, bounds));
    for (auto c : {Component::Upper, Component::Lower}) {
      for (const auto& [idx, value] : column.component(c)) {
        auto it = row_of.find({c, idx});
        if (it == row_of.end()) {
          throw DomainError("sector-complete domain violated at " + to_string(idx));
        }
        out(it->second, j) = value;
      }
    }
  }
  return out;
}

}  // namespace ptg

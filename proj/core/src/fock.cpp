#include "ptg/fock.hpp"

#include <cmath>
#include <utility>

namespace ptg {

std::string to_string(const FockIndex& idx) {
  return "(" + std::to_string(idx.n1) + "," + std::to_string(idx.n2) + ")";
}

TruncationSpec::TruncationSpec(int n1_max_, int n2_max_) : n1_max(n1_max_), n2_max(n2_max_) {
  if (n1_max < 0 || n2_max < 1) {
    throw DomainError("TruncationSpec requires n1_max >= 0 and n2_max >= 1, got n1_max=" +
                      std::to_string(n1_max) + " n2_max=" + std::to_string(n2_max));
  }
}

TruncationSpec merge(const TruncationSpec& a, const TruncationSpec& b) {
  TruncationSpec out;
  out.n1_max = std::max(a.n1_max, b.n1_max);
  out.n2_max = std::max(a.n2_max, b.n2_max);
  return out;
}

AmplitudeMap ladder_map(LadderOp op, const AmplitudeMap& amps, const TruncationSpec& trunc) {
  AmplitudeMap out;
  for (const auto& [idx, value] : amps) {
    FockIndex target = idx;
    double factor = 0.0;
    switch (op) {
      case LadderOp::Lower1:
        if (idx.n1 == 0) continue;  // vacuum term annihilates
        factor = std::sqrt(static_cast<double>(idx.n1));
        target.n1 -= 1;
        break;
      case LadderOp::Lower2:
        if (idx.n2 == 0) continue;
        factor = std::sqrt(static_cast<double>(idx.n2));
        target.n2 -= 1;
        break;
      case LadderOp::Raise1:
        if (idx.n1 + 1 > trunc.n1_max) {
          throw TruncationOverflow("raising mode 1 at " + to_string(idx) +
                                   " exceeds n1_max=" + std::to_string(trunc.n1_max));
        }
        factor = std::sqrt(static_cast<double>(idx.n1 + 1));
        target.n1 += 1;
        break;
      case LadderOp::Raise2:
        if (idx.n2 + 1 > trunc.n2_max) {
          throw TruncationOverflow("raising mode 2 at " + to_string(idx) +
                                   " exceeds n2_max=" + std::to_string(trunc.n2_max));
        }
        factor = std::sqrt(static_cast<double>(idx.n2 + 1));
        target.n2 += 1;
        break;
    }
    const Complex scaled = factor * value;
    auto [it, inserted] = out.try_emplace(target, scaled);
    if (!inserted) it->second += scaled;
  }
  return out;
}

void Spinor::add_amplitude(Component c, const FockIndex& idx, Complex value) {
  if (!trunc_.contains(idx)) {
    throw DomainError("amplitude index " + to_string(idx) + " outside truncation n1_max=" +
                      std::to_string(trunc_.n1_max) + " n2_max=" + std::to_string(trunc_.n2_max));
  }
  auto& comp = c == Component::Upper ? upper_ : lower_;
  auto [it, inserted] = comp.try_emplace(idx, value);
  if (!inserted) it->second += value;
  if (it->second == Complex(0.0, 0.0)) comp.erase(it);
}

void Spinor::set_amplitude(Component c, const FockIndex& idx, Complex value) {
  if (!trunc_.contains(idx)) {
    throw DomainError("amplitude index " + to_string(idx) + " outside truncation n1_max=" +
                      std::to_string(trunc_.n1_max) + " n2_max=" + std::to_string(trunc_.n2_max));
  }
  auto& comp = c == Component::Upper ? upper_ : lower_;
  if (value == Complex(0.0, 0.0)) {
    comp.erase(idx);
  } else {
    comp.insert_or_assign(idx, value);
  }
}

void Spinor::set_component(Component c, AmplitudeMap amps) {
  for (const auto& [idx, value] : amps) {
    if (!trunc_.contains(idx)) {
      throw DomainError("component amplitude " + to_string(idx) +
                        " outside truncation n1_max=" + std::to_string(trunc_.n1_max) +
                        " n2_max=" + std::to_string(trunc_.n2_max));
    }
  }
  (c == Component::Upper ? upper_ : lower_) = std::move(amps);
}

Complex Spinor::amplitude(Component c, const FockIndex& idx) const {
  const auto& comp = c == Component::Upper ? upper_ : lower_;
  auto it = comp.find(idx);
  return it == comp.end() ? Complex(0.0, 0.0) : it->second;
}

Spinor& Spinor::operator+=(const Spinor& rhs) {
  trunc_ = merge(trunc_, rhs.trunc_);
  for (auto c : {Component::Upper, Component::Lower}) {
    for (const auto& [idx, value] : rhs.component(c)) add_amplitude(c, idx, value);
  }
  return *this;
}

Spinor& Spinor::operator-=(const Spinor& rhs) {
  trunc_ = merge(trunc_, rhs.trunc_);
  for (auto c : {Component::Upper, Component::Lower}) {
    for (const auto& [idx, value] : rhs.component(c)) add_amplitude(c, idx, -value);
  }
  return *this;
}

Spinor& Spinor::operator*=(Complex scale) {
  if (scale == Complex(0.0, 0.0)) {
    *this = Spinor(trunc_);
    return *this;
  }
  for (auto* comp : {&upper_, &lower_}) {
    for (auto& [idx, value] : *comp) value *= scale;
  }
  return *this;
}

Spinor basis_spinor(Component c, const FockIndex& idx, const TruncationSpec& trunc) {
  if (!trunc.contains(idx)) {
    throw DomainError("basis index " + to_string(idx) + " outside truncation n1_max=" +
                      std::to_string(trunc.n1_max) + " n2_max=" + std::to_string(trunc.n2_max));
  }
  Spinor s(trunc);
  s.set_amplitude(c, idx, Complex(1.0, 0.0));
  return s;
}

Complex inner(const Spinor& f, const Spinor& g) {
  Complex acc(0.0, 0.0);
  for (auto c : {Component::Upper, Component::Lower}) {
    const auto& fc = f.component(c);
    const auto& gc = g.component(c);
    const bool f_smaller = fc.size() <= gc.size();
    const auto& probe = f_smaller ? fc : gc;
    const auto& other = f_smaller ? gc : fc;
    for (const auto& [idx, value] : probe) {
      auto it = other.find(idx);
      if (it == other.end()) continue;
      const Complex fv = f_smaller ? value : it->second;
      const Complex gv = f_smaller ? it->second : value;
      acc += std::conj(fv) * gv;
    }
  }
  return acc;
}

double norm(const Spinor& f) {
  double acc = 0.0;
  for (auto c : {Component::Upper, Component::Lower}) {
    for (const auto& [idx, value] : f.component(c)) acc += std::norm(value);
  }
  return std::sqrt(acc);
}

Spinor apply_ladder(LadderOp op, const Spinor& f) {
  Spinor out(f.truncation());
  out.set_component(Component::Upper, ladder_map(op, f.upper(), f.truncation()));
  out.set_component(Component::Lower, ladder_map(op, f.lower(), f.truncation()));
  return out;
}

}  // namespace ptg

#pragma once

// Two-mode bosonic Fock space and the doubled (spinor) Hilbert space built on
// top of it. States are sparse: a spinor stores only its nonzero amplitudes,
// keyed by Fock index, one map per spinor component. All amplitudes are
// complex doubles; ladder matrix elements are sqrt(n) factors, never
// factorials, so truncations of a few thousand quanta stay exact to rounding.

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "ptg/errors.hpp"

namespace ptg {

using Complex = std::complex<double>;

// Occupation pair (n1, n2), both nonnegative.
struct FockIndex {
  int n1 = 0;
  int n2 = 0;

  friend auto operator<=>(const FockIndex&, const FockIndex&) = default;
};

std::string to_string(const FockIndex& idx);

// Inclusive per-mode bounds: n1 in [0, n1_max], n2 in [0, n2_max].
// n2_max >= 1 so at least one two-dimensional sector exists downstream.
struct TruncationSpec {
  int n1_max = 0;
  int n2_max = 1;

  TruncationSpec() = default;
  TruncationSpec(int n1_max_, int n2_max_);

  bool contains(const FockIndex& idx) const {
    return idx.n1 >= 0 && idx.n2 >= 0 && idx.n1 <= n1_max && idx.n2 <= n2_max;
  }
  bool is_square() const { return n1_max == n2_max; }

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

// Union of bounds, used when combining states from different truncations.
TruncationSpec merge(const TruncationSpec& a, const TruncationSpec& b);

enum class Component : std::uint8_t { Upper = 0, Lower = 1 };

// Ladder operators on the two modes. Lower1 is the annihilator on mode 1,
// Raise1 its adjoint, likewise for mode 2.
enum class LadderOp : std::uint8_t { Lower1, Lower2, Raise1, Raise2 };

// Sparse one-component Fock state.
using AmplitudeMap = std::map<FockIndex, Complex>;

// Ladder action on a bare amplitude map. Lowering annihilates the vacuum
// term; raising past the bound throws TruncationOverflow naming the index.
AmplitudeMap ladder_map(LadderOp op, const AmplitudeMap& amps, const TruncationSpec& trunc);

// Element of the doubled space: a pair of sparse mode-occupation amplitude
// maps. The inner product is the sum of the componentwise Fock inner
// products, conjugate linear in the first argument.
class Spinor {
 public:
  Spinor() = default;
  explicit Spinor(TruncationSpec trunc) : trunc_(trunc) {}

  const TruncationSpec& truncation() const { return trunc_; }
  const AmplitudeMap& component(Component c) const {
    return c == Component::Upper ? upper_ : lower_;
  }
  const AmplitudeMap& upper() const { return upper_; }
  const AmplitudeMap& lower() const { return lower_; }

  // Accumulates into the component; exact zeros are pruned so the support
  // stays minimal. Throws DomainError if idx is outside the truncation.
  void add_amplitude(Component c, const FockIndex& idx, Complex value);
  void set_amplitude(Component c, const FockIndex& idx, Complex value);
  // Wholesale replacement of one component, bounds checked.
  void set_component(Component c, AmplitudeMap amps);
  Complex amplitude(Component c, const FockIndex& idx) const;

  std::size_t support_size() const { return upper_.size() + lower_.size(); }
  bool empty() const { return upper_.empty() && lower_.empty(); }

  Spinor& operator+=(const Spinor& rhs);
  Spinor& operator-=(const Spinor& rhs);
  Spinor& operator*=(Complex scale);

  friend Spinor operator+(Spinor lhs, const Spinor& rhs) { return lhs += rhs; }
  friend Spinor operator-(Spinor lhs, const Spinor& rhs) { return lhs -= rhs; }
  friend Spinor operator*(Complex scale, Spinor s) { return s *= scale; }

 private:
  TruncationSpec trunc_;
  AmplitudeMap upper_;
  AmplitudeMap lower_;
};

// Unit basis spinor with a single amplitude 1 at (component, idx).
// Throws DomainError if idx lies outside trunc.
Spinor basis_spinor(Component c, const FockIndex& idx, const TruncationSpec& trunc);

// <f, g>, conjugate linear in f. States from different truncations are
// compared on the union of their supports.
Complex inner(const Spinor& f, const Spinor& g);

double norm(const Spinor& f);

// Diagonal ladder action, the same operator applied to both components.
Spinor apply_ladder(LadderOp op, const Spinor& f);

}  // namespace ptg

#pragma once

#include <string_view>

#include "cqed/fock.hpp"
#include "cqed/state.hpp"
#include "cqed/types.hpp"

namespace cqed {

/// Operator blocks of the resonant JC propagator at a fixed theta = lambda*t.
///   u11|n> = cos(theta sqrt(n+1)) |n>        u12|n> = -i sin(theta sqrt(n)) |n-1>
///   u21|n> = -i sin(theta sqrt(n+1)) |n+1>   u22|n> = cos(theta sqrt(n)) |n>
/// so that |e>f -> |e> u11 f + |g> u21 f and |g>f -> |e> u12 f + |g> u22 f.
/// Dense blocks are built on demand so that very large n_max stays cheap.
struct JcBlocks {
  double theta = 0.0;
  int n_max = 0;

  // cos/sin of theta*sqrt(n) and theta*sqrt(n+1), n = 0..n_max
  RealVector cos_n, sin_n, cos_n1, sin_n1;

  FockOperator block(Level out, Level in) const;
  FockOperator u11() const { return block(Level::excited, Level::excited); }
  FockOperator u12() const { return block(Level::excited, Level::ground); }
  FockOperator u21() const { return block(Level::ground, Level::excited); }
  FockOperator u22() const { return block(Level::ground, Level::ground); }

  /// The 2(n_max+1) square matrix with atom as the most significant index.
  Matrix assembled() const;

  /// u_{out,in} applied to a single-mode vector without forming the matrix.
  Vector apply(Level out, Level in, const Vector& f) const;
  /// u_{out,in} acting on the row index of `m` (cavity A of a two-mode amplitude matrix).
  Matrix apply_rows(Level out, Level in, const Matrix& m) const;
  /// u_{out,in} acting on the column index of `m` (cavity B).
  Matrix apply_cols(Level out, Level in, const Matrix& m) const;
};

JcBlocks jc_blocks(double theta, int n_max);

/// Resonant JC passage of atom `atom_label` through cavity `field_label`.
/// Throws TruncationError when more than 1e-9 of the norm leaks past n_max.
CompositeState apply_jc(std::string_view atom_label, std::string_view field_label, const JcBlocks& blocks,
                        const CompositeState& state);

}  // namespace cqed

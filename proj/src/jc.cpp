#include "cqed/jc.hpp"

#include <cmath>

namespace cqed {

JcBlocks jc_blocks(double theta, int n_max) {
  if (theta < 0.0) throw ContractError("jc_blocks: theta must be non-negative");
  if (n_max < 1) throw ContractError("jc_blocks: n_max must be positive");
  JcBlocks b;
  b.theta = theta;
  b.n_max = n_max;
  const int d = n_max + 1;
  b.cos_n.resize(d);
  b.sin_n.resize(d);
  b.cos_n1.resize(d);
  b.sin_n1.resize(d);
  for (int n = 0; n < d; ++n) {
    b.cos_n(n) = std::cos(theta * std::sqrt(static_cast<double>(n)));
    b.sin_n(n) = std::sin(theta * std::sqrt(static_cast<double>(n)));
    b.cos_n1(n) = std::cos(theta * std::sqrt(n + 1.0));
    b.sin_n1(n) = std::sin(theta * std::sqrt(n + 1.0));
  }
  return b;
}

FockOperator JcBlocks::block(Level out, Level in) const {
  const int d = n_max + 1;
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    if (out == Level::excited && in == Level::excited) {
      m(n, n) = cos_n1(n);
    } else if (out == Level::ground && in == Level::ground) {
      m(n, n) = cos_n(n);
    } else if (out == Level::excited) {
      if (n >= 1) m(n - 1, n) = -kI * sin_n(n);
    } else if (n + 1 < d) {
      m(n + 1, n) = -kI * sin_n1(n);
    }
  }
  return {std::move(m), n_max};
}

Matrix JcBlocks::assembled() const {
  const int d = n_max + 1;
  Matrix u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = u11().matrix;
  u.topRightCorner(d, d) = u12().matrix;
  u.bottomLeftCorner(d, d) = u21().matrix;
  u.bottomRightCorner(d, d) = u22().matrix;
  return u;
}

Vector JcBlocks::apply(Level out, Level in, const Vector& f) const {
  return apply_rows(out, in, f);
}

Matrix JcBlocks::apply_rows(Level out, Level in, const Matrix& m) const {
  const int d = n_max + 1;
  if (m.rows() != d) throw ContractError("JcBlocks: operand dimension mismatch");
  Matrix r(d, m.cols());
  if (out == Level::excited && in == Level::excited) {
    r = cos_n1.asDiagonal() * m;
  } else if (out == Level::ground && in == Level::ground) {
    r = cos_n.asDiagonal() * m;
  } else if (out == Level::excited) {
    // u12: |n> -> |n-1>
    r.row(d - 1).setZero();
    for (int n = 1; n < d; ++n) r.row(n - 1) = (-kI * sin_n(n)) * m.row(n);
  } else {
    // u21: |n> -> |n+1>, |n_max> leaks out
    r.row(0).setZero();
    for (int n = 0; n + 1 < d; ++n) r.row(n + 1) = (-kI * sin_n1(n)) * m.row(n);
  }
  return r;
}

Matrix JcBlocks::apply_cols(Level out, Level in, const Matrix& m) const {
  return apply_rows(out, in, m.transpose()).transpose();
}

CompositeState apply_jc(std::string_view atom_label, std::string_view field_label, const JcBlocks& blocks,
                        const CompositeState& state) {
  const int ka = state.index_of(atom_label);
  const int kf = state.index_of(field_label);
  if (state.subsystems()[ka].dim != 2) throw ContractError("apply_jc: atom subsystem must have dim 2");
  if (state.subsystems()[kf].dim != blocks.n_max + 1) {
    throw ContractError("apply_jc: field dimension does not match the JC blocks");
  }
  const long sa = state.stride(ka);
  const long sf = state.stride(kf);
  const int d = blocks.n_max + 1;
  const Vector& in = state.amplitudes();
  Vector out(in.size());
  const long size = in.size();
  for (long idx = 0; idx < size; ++idx) {
    if ((idx / sa) % 2 != 0) continue;
    // idx has the atom in |e>; g is the partner index with the atom in |g>
    const int n = static_cast<int>((idx / sf) % d);
    const long g = idx + sa;
    const Complex e_n = in(idx);
    const Complex g_n = in(g);
    const Complex g_up = (n + 1 < d) ? in(g + sf) : Complex{};
    const Complex e_down = (n >= 1) ? in(idx - sf) : Complex{};
    out(idx) = blocks.cos_n1(n) * e_n - kI * blocks.sin_n1(n) * g_up;
    out(g) = -kI * blocks.sin_n(n) * e_down + blocks.cos_n(n) * g_n;
  }
  const double n2 = out.squaredNorm();
  if (n2 < 1.0 - 1e-9) {
    throw TruncationError("apply_jc: " + std::to_string(1.0 - n2) + " of the norm leaked past n_max=" +
                          std::to_string(blocks.n_max));
  }
  return CompositeState::from_unnormalized(std::move(out), state.subsystems()).first;
}

}  // namespace cqed

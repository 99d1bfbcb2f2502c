#include "cqed/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cqed {
namespace {

using RowBlock = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

long total_dim(const std::vector<Subsystem>& subsystems) {
  long n = 1;
  for (const auto& s : subsystems) n *= s.dim;
  return n;
}

// (outer, dim, inner) extents of subsystem k.
struct Split {
  long outer;
  long dim;
  long inner;
};

Split split_at(const std::vector<Subsystem>& subsystems, int k) {
  long outer = 1;
  long inner = 1;
  for (int i = 0; i < k; ++i) outer *= subsystems[i].dim;
  for (size_t i = k + 1; i < subsystems.size(); ++i) inner *= subsystems[i].dim;
  return {outer, subsystems[k].dim, inner};
}

}  // namespace

CompositeState::CompositeState(Vector amplitudes, std::vector<Subsystem> subsystems)
    : amplitudes_(std::move(amplitudes)), subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw ContractError("CompositeState needs at least one subsystem");
  for (size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].dim < 1) throw ContractError("subsystem '" + subsystems_[i].label + "' has dim < 1");
    for (size_t j = i + 1; j < subsystems_.size(); ++j) {
      if (subsystems_[i].label == subsystems_[j].label) {
        throw ContractError("duplicate subsystem label '" + subsystems_[i].label + "'");
      }
    }
  }
  if (amplitudes_.size() != total_dim(subsystems_)) {
    throw ContractError("amplitude length does not match the product of subsystem dims");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-9) {
    throw ContractError("CompositeState must be normalized (norm " + std::to_string(amplitudes_.norm()) + ")");
  }
}

std::pair<CompositeState, double> CompositeState::from_unnormalized(Vector amplitudes,
                                                                    std::vector<Subsystem> subsystems) {
  const double n2 = amplitudes.squaredNorm();
  if (n2 == 0.0) throw DegenerateStateError("cannot normalize a null state");
  amplitudes /= std::sqrt(n2);
  return {CompositeState(std::move(amplitudes), std::move(subsystems)), n2};
}

CompositeState CompositeState::qubit(std::string label, const Qubit& amplitudes) {
  return CompositeState(Vector(amplitudes), {{std::move(label), 2}});
}

CompositeState CompositeState::atom(std::string label, Level level) {
  Qubit q = Qubit::Zero();
  q(index(level)) = 1.0;
  return qubit(std::move(label), q);
}

CompositeState CompositeState::pair(std::string label_a, std::string label_b, const PairState& amplitudes) {
  return CompositeState(Vector(amplitudes), {{std::move(label_a), 2}, {std::move(label_b), 2}});
}

CompositeState CompositeState::field(std::string label, const FieldState& state) {
  return CompositeState(state.amplitudes(), {{std::move(label), state.dim()}});
}

int CompositeState::index_of(std::string_view label) const {
  for (size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == label) return static_cast<int>(i);
  }
  throw ContractError("no subsystem labeled '" + std::string(label) + "'");
}

bool CompositeState::has(std::string_view label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(), [&](const Subsystem& s) { return s.label == label; });
}

long CompositeState::stride(int k) const { return split_at(subsystems_, k).inner; }

CompositeState tensor(std::span<const CompositeState> states) {
  if (states.empty()) throw ContractError("tensor of an empty list");
  Vector amps = states[0].amplitudes();
  std::vector<Subsystem> subs = states[0].subsystems();
  for (size_t k = 1; k < states.size(); ++k) {
    const Vector& b = states[k].amplitudes();
    Vector next(amps.size() * b.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * b.size(), b.size()) = amps(i) * b;
    amps = std::move(next);
    subs.insert(subs.end(), states[k].subsystems().begin(), states[k].subsystems().end());
  }
  // products of unit vectors drift only at round-off level
  amps /= amps.norm();
  return CompositeState(std::move(amps), std::move(subs));
}

CompositeState tensor(std::initializer_list<CompositeState> states) {
  return tensor(std::span<const CompositeState>(states.begin(), states.size()));
}

CompositeState permute(const CompositeState& state, std::span<const std::string> order) {
  const auto& old = state.subsystems();
  if (order.size() != old.size()) throw ContractError("permute: order must list every subsystem");
  std::vector<int> source(order.size());
  std::vector<Subsystem> subs;
  for (size_t i = 0; i < order.size(); ++i) {
    source[i] = state.index_of(order[i]);
    subs.push_back(old[source[i]]);
  }
  {
    std::vector<int> sorted = source;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ContractError("permute: repeated label in order");
    }
  }
  const int n = static_cast<int>(subs.size());
  std::vector<long> old_stride(n);
  for (int i = 0; i < n; ++i) old_stride[i] = state.stride(source[i]);

  const Vector& in = state.amplitudes();
  Vector out(in.size());
  std::vector<int> digit(n, 0);
  long src = 0;
  // odometer over the new index order; src tracks the matching old flat index
  for (long dst = 0; dst < in.size(); ++dst) {
    out(dst) = in(src);
    for (int k = n - 1; k >= 0; --k) {
      if (++digit[k] < subs[k].dim) {
        src += old_stride[k];
        break;
      }
      src -= old_stride[k] * (subs[k].dim - 1);
      digit[k] = 0;
    }
  }
  return CompositeState(std::move(out), std::move(subs));
}

Matrix partial_trace(const CompositeState& state, std::span<const std::string> keep) {
  if (keep.empty()) throw ContractError("partial_trace: keep set must not be empty");
  std::vector<std::string> order(keep.begin(), keep.end());
  long dkeep = 1;
  for (const auto& l : keep) dkeep *= state.dim(l);
  for (const auto& s : state.subsystems()) {
    if (std::find(keep.begin(), keep.end(), s.label) == keep.end()) order.push_back(s.label);
  }
  const CompositeState p = permute(state, order);
  const long drest = p.amplitudes().size() / dkeep;
  Eigen::Map<const RowBlock> m(p.amplitudes().data(), dkeep, drest);
  Matrix rho = m * m.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

CompositeState apply_local(const CompositeState& state, std::string_view label, const Matrix& op,
                           double* norm_sq) {
  const int k = state.index_of(label);
  const Split s = split_at(state.subsystems(), k);
  if (op.rows() != s.dim || op.cols() != s.dim) throw ContractError("apply_local: operator dimension mismatch");
  Vector out(state.amplitudes().size());
  for (long o = 0; o < s.outer; ++o) {
    Eigen::Map<const RowBlock> in(state.amplitudes().data() + o * s.dim * s.inner, s.dim, s.inner);
    Eigen::Map<RowBlock> res(out.data() + o * s.dim * s.inner, s.dim, s.inner);
    res.noalias() = op * in;
  }
  auto [result, n2] = CompositeState::from_unnormalized(std::move(out), state.subsystems());
  if (norm_sq) *norm_sq = n2;
  return result;
}

Conditioned condition(const CompositeState& state, std::string_view label, const Vector& v) {
  const int k = state.index_of(label);
  const Split s = split_at(state.subsystems(), k);
  if (v.size() != s.dim) throw ContractError("condition: vector dimension mismatch");
  Vector out(s.outer * s.inner);
  for (long o = 0; o < s.outer; ++o) {
    Eigen::Map<const RowBlock> in(state.amplitudes().data() + o * s.dim * s.inner, s.dim, s.inner);
    out.segment(o * s.inner, s.inner) = (v.adjoint() * in).transpose();
  }
  std::vector<Subsystem> subs = state.subsystems();
  subs.erase(subs.begin() + k);
  Conditioned c;
  c.probability = out.squaredNorm();
  c.raw = out;
  if (subs.empty()) {
    // every subsystem contracted: a scalar amplitude is all that remains
    return c;
  }
  if (c.probability >= kNegligibleProbability) {
    c.state = CompositeState(out / std::sqrt(c.probability), std::move(subs));
  }
  return c;
}

std::vector<MeasurementRecord> project(const CompositeState& state, std::string_view label,
                                       std::span<const Vector> basis,
                                       std::span<const std::string> outcome_labels, Completeness completeness) {
  if (basis.size() != outcome_labels.size()) throw ContractError("project: one label per basis vector required");
  const int k = state.index_of(label);
  const Split s = split_at(state.subsystems(), k);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != s.dim) throw ContractError("project: basis vector dimension mismatch");
    for (size_t j = 0; j <= i; ++j) {
      const Complex g = basis[j].dot(basis[i]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expected) > 1e-8) throw ContractError("project: basis is not orthonormal within 1e-8");
    }
  }
  if (completeness == Completeness::complete && static_cast<long>(basis.size()) != s.dim) {
    throw ContractError("project: basis is incomplete; pass Completeness::partial");
  }

  std::vector<MeasurementRecord> records;
  Vector remainder = state.amplitudes();
  for (size_t i = 0; i < basis.size(); ++i) {
    const Vector& v = basis[i];
    Vector projected(state.amplitudes().size());
    for (long o = 0; o < s.outer; ++o) {
      Eigen::Map<const RowBlock> in(state.amplitudes().data() + o * s.dim * s.inner, s.dim, s.inner);
      Eigen::Map<RowBlock> res(projected.data() + o * s.dim * s.inner, s.dim, s.inner);
      res.noalias() = v * (v.adjoint() * in);
    }
    remainder -= projected;
    MeasurementRecord r{outcome_labels[i], projected.squaredNorm(), std::nullopt};
    if (r.probability >= kNegligibleProbability) {
      r.collapsed = CompositeState(projected / std::sqrt(r.probability), state.subsystems());
    }
    records.push_back(std::move(r));
  }
  if (completeness == Completeness::partial) {
    MeasurementRecord r{"unresolved", remainder.squaredNorm(), std::nullopt};
    if (r.probability >= kNegligibleProbability) {
      r.collapsed = CompositeState(remainder / std::sqrt(r.probability), state.subsystems());
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace cqed

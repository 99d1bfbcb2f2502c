#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Single atom amplitudes, index 0 = |e>, index 1 = |g>.
using Qubit = Eigen::Vector2cd;
/// Atom pair amplitudes, index 2*i_A + i_B with 0 = |e>, 1 = |g>:
/// |ee> = 0, |eg> = 1, |ge> = 2, |gg> = 3.
using PairState = Eigen::Vector4cd;

inline constexpr Complex kI{0.0, 1.0};

/// Atomic level, ordered as the rows/columns of the JC block matrix.
enum class Level : int { excited = 0, ground = 1 };

inline constexpr int index(Level l) { return static_cast<int>(l); }

/// Builds a|g> + b|e> in the {|e>, |g>} storage order.
inline Qubit qubit_from_ground_excited(Complex a, Complex b) { return Qubit{b, a}; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fock truncation cannot hold the requested state to 1e-12.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (bad dims, unnormalized input, bad label).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The requested state has zero norm (e.g. Schmidt projection with lambda*gamma' = lambda'*gamma = 0).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace cqed

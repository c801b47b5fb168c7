#pragma once

#include <cstdint>
#include <random>

#include "qvn/qspace.hpp"

namespace qvn {

/// Seeded generator of random quaternionic objects. Gaussian entries.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double gaussian() { return normal_(engine_); }
  double uniform(double lo, double hi);
  std::size_t index(std::size_t bound);

  Quaternion quaternion();
  Quaternion unit_quaternion();
  QVector vector(std::size_t n);
  QMatrix matrix(std::size_t rows, std::size_t cols);
  QMatrix matrix(std::size_t n) { return matrix(n, n); }
  QMatrix real_matrix(std::size_t n);
  QMatrix selfadjoint(std::size_t n);
  QMatrix antiselfadjoint(std::size_t n);
  /// X* X + shift I.
  QMatrix positive(std::size_t n, double shift = 0.0);
  /// Gram-Schmidt of a Gaussian matrix.
  QMatrix unitary(std::size_t n);
  QMatrix projector(std::size_t n, std::size_t rank);
  /// Product of Gaussian n x r and r x n factors.
  QMatrix low_rank(std::size_t n, std::size_t rank);
  /// V J V* for a random unitary V and J = block_complex_structure(n).
  QMatrix complex_structure(std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Quaternionic Gram-Schmidt on the columns of `a` (assumed full rank).
QMatrix orthonormalize_columns(const QMatrix& a);

}  // namespace qvn

#pragma once

#include <Eigen/Core>

#include <vector>

namespace casrod {

/// Symmetric matrix stored as its lower band: entry (i, j) with
/// 0 <= i - j <= bandwidth lives at data_[j * (bandwidth + 1) + (i - j)].
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(int size, int bandwidth);

  int size() const { return size_; }
  int bandwidth() const { return bandwidth_; }

  /// Read access to any (i, j); zero outside the band.
  double operator()(int i, int j) const;
  /// Adds to (i, j) and, implicitly, (j, i). Throws if outside the band.
  void add(int i, int j, double value);

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;
  double frobenius_norm() const;

 private:
  friend class BandCholesky;
  int size_ = 0;
  int bandwidth_ = 0;
  std::vector<double> data_;
};

/// In-place banded Cholesky factorization L L^T.
class BandCholesky {
 public:
  /// Throws SingularSystem when a pivot is not positive.
  explicit BandCholesky(SymmetricBandMatrix matrix);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  SymmetricBandMatrix factor_;
};

}  // namespace casrod

#include "casrod/band_matrix.hpp"

#include "casrod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace casrod {

SymmetricBandMatrix::SymmetricBandMatrix(int size, int bandwidth)
    : size_(size), bandwidth_(std::min(bandwidth, std::max(size - 1, 0))) {
  if (size < 0 || bandwidth < 0) throw InvalidArgument("band matrix size and bandwidth must be >= 0");
  data_.assign(static_cast<std::size_t>(size_) * (bandwidth_ + 1), 0.0);
}

double SymmetricBandMatrix::operator()(int i, int j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth_) return 0.0;
  return data_[static_cast<std::size_t>(j) * (bandwidth_ + 1) + (i - j)];
}

void SymmetricBandMatrix::add(int i, int j, double value) {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth_) throw InvalidArgument("entry outside the stored band");
  data_[static_cast<std::size_t>(j) * (bandwidth_ + 1) + (i - j)] += value;
}

Eigen::VectorXd SymmetricBandMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(size_);
  for (int j = 0; j < size_; ++j) {
    const double* col = &data_[static_cast<std::size_t>(j) * (bandwidth_ + 1)];
    y[j] += col[0] * x[j];
    const int last = std::min(size_ - 1, j + bandwidth_);
    for (int i = j + 1; i <= last; ++i) {
      y[i] += col[i - j] * x[j];
      y[j] += col[i - j] * x[i];
    }
  }
  return y;
}

Eigen::MatrixXd SymmetricBandMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size_, size_);
  for (int j = 0; j < size_; ++j) {
    const int last = std::min(size_ - 1, j + bandwidth_);
    for (int i = j; i <= last; ++i) d(i, j) = d(j, i) = (*this)(i, j);
  }
  return d;
}

double SymmetricBandMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (int j = 0; j < size_; ++j) {
    const double* col = &data_[static_cast<std::size_t>(j) * (bandwidth_ + 1)];
    sum += col[0] * col[0];
    for (int r = 1; r <= bandwidth_; ++r) sum += 2.0 * col[r] * col[r];
  }
  return std::sqrt(sum);
}

BandCholesky::BandCholesky(SymmetricBandMatrix matrix) : factor_(std::move(matrix)) {
  const int n = factor_.size_;
  const int bw = factor_.bandwidth_;
  const int ld = bw + 1;
  auto at = [&](int i, int j) -> double& { return factor_.data_[static_cast<std::size_t>(j) * ld + (i - j)]; };

  // Pivot threshold relative to the largest diagonal entry.
  double max_diag = 0.0;
  for (int j = 0; j < n; ++j) max_diag = std::max(max_diag, std::abs(at(j, j)));
  const double tiny = 1e-14 * max_diag;

  for (int j = 0; j < n; ++j) {
    const int first = std::max(0, j - bw);
    double d = at(j, j);
    for (int k = first; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > tiny)) {
      throw SingularSystem("stiffness matrix is not positive definite (pivot " + std::to_string(j) + ")");
    }
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    const int last = std::min(n - 1, j + bw);
    for (int i = j + 1; i <= last; ++i) {
      double s = at(i, j);
      for (int k = std::max(first, i - bw); k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }
}

Eigen::VectorXd BandCholesky::solve(const Eigen::VectorXd& rhs) const {
  const int n = factor_.size_;
  const int bw = factor_.bandwidth_;
  const int ld = bw + 1;
  auto at = [&](int i, int j) { return factor_.data_[static_cast<std::size_t>(j) * ld + (i - j)]; };
  Eigen::VectorXd x = rhs;
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = std::max(0, i - bw); k < i; ++k) s -= at(i, k) * x[k];
    x[i] = s / at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    const int last = std::min(n - 1, i + bw);
    for (int k = i + 1; k <= last; ++k) s -= at(k, i) * x[k];
    x[i] = s / at(i, i);
  }
  return x;
}

}  // namespace casrod

#include "hs/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "hs/errors.hpp"

namespace hs {

BandedMatrix::BandedMatrix(int order, int lower, int upper)
    : n_(order), kl_(lower), ku_(upper), ldab_(lower + upper + 1) {
  if (order < 1 || lower < 0 || upper < 0 || lower >= order || upper >= order)
    throw ParamError("invalid band matrix dimensions: n=" +
                     std::to_string(order) + " kl=" + std::to_string(lower) +
                     " ku=" + std::to_string(upper));
  a_.assign(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(n_), 0.0);
}

void BandedMatrix::set_zero() { std::fill(a_.begin(), a_.end(), 0.0); }

void BandedMatrix::add_scaled(double scale, const BandedMatrix& m) {
  assert(m.n_ == n_ && m.kl_ <= kl_ && m.ku_ <= ku_);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - m.ku_);
    const int hi = std::min(n_ - 1, j + m.kl_);
    for (int i = lo; i <= hi; ++i) a_[index(i, j)] += scale * m.a_[m.index(i, j)];
  }
}

double BandedMatrix::inf_norm() const {
  std::vector<double> row_sums(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    for (int i = lo; i <= hi; ++i)
      row_sums[static_cast<std::size_t>(i)] += std::abs(a_[index(i, j)]);
  }
  double norm = 0.0;
  for (double s : row_sums) norm = std::max(norm, s);
  return norm;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  assert(static_cast<int>(x.size()) == n_);
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    const double xj = x[static_cast<std::size_t>(j)];
    for (int i = lo; i <= hi; ++i)
      y[static_cast<std::size_t>(i)] += a_[index(i, j)] * xj;
  }
  return y;
}

std::vector<double> BandedMatrix::multiply_transpose(
    std::span<const double> x) const {
  assert(static_cast<int>(x.size()) == n_);
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    double s = 0.0;
    for (int i = lo; i <= hi; ++i)
      s += a_[index(i, j)] * x[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(j)] += s;
  }
  return y;
}

bool BandedMatrix::check_symmetric(double tol) const {
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    for (int i = lo; i <= hi; ++i)
      if (std::abs(at(i, j) - at(j, i)) > tol) return false;
  }
  return true;
}

BandedLU::BandedLU(const BandedMatrix& m)
    : n_(m.n_), kl_(m.kl_), ku_(m.ku_), ldab_(2 * m.kl_ + m.ku_ + 1) {
  // dgbtrf wants kl extra superdiagonal rows for pivoting fill.
  ab_.assign(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(n_), 0.0);
  ipiv_.assign(static_cast<std::size_t>(n_), 0);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - ku_);
    const int hi = std::min(n_ - 1, j + kl_);
    for (int i = lo; i <= hi; ++i)
      ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) +
          static_cast<std::size_t>(j) * static_cast<std::size_t>(ldab_)] =
          m.a_[m.index(i, j)];
  }
  const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
                                         ab_.data(), ldab_, ipiv_.data());
  if (info != 0)
    throw SolveError("banded LU factorization failed (info=" +
                         std::to_string(info) + ")",
                     0, 0.0);
}

void BandedLU::solve_in_place(std::vector<double>& b, bool transpose) const {
  assert(static_cast<int>(b.size()) == n_);
  const lapack_int info =
      LAPACKE_dgbtrs(LAPACK_COL_MAJOR, transpose ? 'T' : 'N', n_, kl_, ku_, 1,
                     ab_.data(), ldab_, ipiv_.data(), b.data(), n_);
  if (info != 0)
    throw SolveError("banded LU solve failed (info=" + std::to_string(info) + ")",
                     0, 0.0);
}

BandedCholesky::BandedCholesky(const BandedMatrix& m)
    : n_(m.n_), kd_(m.ku_), ldab_(m.ku_ + 1) {
  if (!m.symmetric() || m.kl_ != m.ku_)
    throw ParamError("Cholesky factorization requires a symmetric band matrix");
  ab_.assign(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; ++j) {
    const int lo = std::max(0, j - kd_);
    for (int i = lo; i <= j; ++i)
      ab_[static_cast<std::size_t>(kd_ + i - j) +
          static_cast<std::size_t>(j) * static_cast<std::size_t>(ldab_)] =
          m.a_[m.index(i, j)];
  }
  const lapack_int info =
      LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', n_, kd_, ab_.data(), ldab_);
  if (info != 0)
    throw SolveError("banded Cholesky factorization failed: matrix not "
                     "positive definite (info=" +
                         std::to_string(info) + ")",
                     0, 0.0);
}

void BandedCholesky::solve_in_place(std::vector<double>& b) const {
  assert(static_cast<int>(b.size()) == n_);
  const lapack_int info = LAPACKE_dpbtrs(LAPACK_COL_MAJOR, 'U', n_, kd_, 1,
                                         ab_.data(), ldab_, b.data(), n_);
  if (info != 0)
    throw SolveError("banded Cholesky solve failed (info=" +
                         std::to_string(info) + ")",
                     0, 0.0);
}

void BandedSolverRef::solve_in_place(std::vector<double>& b,
                                     bool transpose) const {
  if (lu != nullptr) {
    lu->solve_in_place(b, transpose);
  } else {
    assert(chol != nullptr);
    // symmetric factor: transpose solve is the same solve
    chol->solve_in_place(b);
  }
}

}  // namespace hs

#ifndef HS_BANDED_HPP
#define HS_BANDED_HPP

#include <cassert>
#include <span>
#include <vector>

namespace hs {

// Square band matrix with kl subdiagonals and ku superdiagonals, stored
// column-major in LAPACK band layout. Factor once (BandedLU / BandedCholesky),
// solve many; the matrix itself stays available for products.
class BandedMatrix {
 public:
  BandedMatrix(int order, int lower, int upper);

  int order() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const {
    return i - j <= kl_ && j - i <= ku_;
  }

  double at(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    if (!in_band(i, j)) return 0.0;
    return a_[index(i, j)];
  }

  void set(int i, int j, double v) {
    assert(in_band(i, j));
    a_[index(i, j)] = v;
  }

  void add(int i, int j, double v) {
    assert(in_band(i, j));
    a_[index(i, j)] += v;
  }

  void set_zero();

  // J += scale * M (bands of M must fit inside this band).
  void add_scaled(double scale, const BandedMatrix& m);

  // max row sum of absolute values
  double inf_norm() const;

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> x) const;

  void set_symmetric(bool s) { symmetric_ = s; }
  bool symmetric() const { return symmetric_; }
  // Entrywise check that the symmetric flag is honest.
  bool check_symmetric(double tol = 0.0) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(ku_ + i - j) +
           static_cast<std::size_t>(j) * static_cast<std::size_t>(ldab_);
  }

  int n_, kl_, ku_, ldab_;
  bool symmetric_ = false;
  std::vector<double> a_;

  friend class BandedLU;
  friend class BandedCholesky;
};

// LU factorization with partial pivoting (LAPACK dgbtrf/dgbtrs).
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix& m);

  int order() const { return n_; }
  void solve_in_place(std::vector<double>& b, bool transpose = false) const;
  std::vector<double> solve(std::vector<double> b, bool transpose = false) const {
    solve_in_place(b, transpose);
    return b;
  }

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

// Cholesky factorization of a symmetric positive definite band matrix
// (LAPACK dpbtrf/dpbtrs). Throws SolveError if the matrix is not SPD.
class BandedCholesky {
 public:
  explicit BandedCholesky(const BandedMatrix& m);

  int order() const { return n_; }
  void solve_in_place(std::vector<double>& b) const;
  std::vector<double> solve(std::vector<double> b) const {
    solve_in_place(b);
    return b;
  }

 private:
  int n_, kd_, ldab_;
  std::vector<double> ab_;
};

// Non-owning handle over either factorization kind.
struct BandedSolverRef {
  const BandedLU* lu = nullptr;
  const BandedCholesky* chol = nullptr;

  void solve_in_place(std::vector<double>& b, bool transpose = false) const;
};

}  // namespace hs

#endif

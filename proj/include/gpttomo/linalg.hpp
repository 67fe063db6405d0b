#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpttomo/config.hpp"

namespace gpttomo {

using Vec = std::vector<double>;

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : LinalgError {
  using LinalgError::LinalgError;
};
struct RankError : LinalgError {
  using LinalgError::LinalgError;
};
// Thrown when two subspaces fail to form a direct-sum decomposition of the
// ambient space (bad dimensions or nontrivial intersection).
struct DecompositionError : LinalgError {
  using LinalgError::LinalgError;
};

/// Dense row-major real matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  /// Rank-one map v * w^T (first argument is the column factor).
  static Mat outer(const Vec& v, const Vec& w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vec apply(const Vec& v) const;             // this * v
  Vec apply_transposed(const Vec& v) const;  // this^T * v
  Mat operator*(const Mat& other) const;
  Mat operator+(const Mat& other) const;
  Mat operator-(const Mat& other) const;
  Mat scaled(double s) const;
  Mat transposed() const;

  double max_abs() const;
  bool is_symmetric(double tol = kTolNum) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// A linear subspace of R^n held as a list of basis vectors.
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<Vec> basis;  // linearly independent, each of length ambient_dim

  std::size_t dim() const { return basis.size(); }
};

// Vector helpers.
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double norm_inf(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& v, double s);
Vec kron(const Vec& a, const Vec& b);

/// Span of a list of vectors. Rank decisions use column-pivoted
/// Gram-Schmidt with a deterministic pivot order (largest remaining norm,
/// ties broken by lowest index), so the produced orthonormal basis is
/// reproducible. An empty input yields the zero subspace.
Subspace span_basis(const std::vector<Vec>& vectors);

/// All vectors of the (coordinate) dual space vanishing on `sub`:
/// the orthogonal complement of the span under the standard pairing.
Subspace annihilator(const Subspace& sub);

/// Euclidean distance from v to the span of `sub`.
double distance_to_span(const Subspace& sub, const Vec& v);

/// Projector P with P|image = id and P|kernel = 0. Requires
/// dim(image) + dim(kernel) = ambient and trivial intersection; otherwise
/// throws DecompositionError.
Mat oblique_projector(const Subspace& image, const Subspace& kernel);

/// All eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const Mat& m);

/// Eigenvalues (ascending) with the matching orthonormal eigenvectors as
/// matrix columns.
std::pair<std::vector<double>, Mat> symmetric_eigensystem(const Mat& m);

/// Smallest eigenvalue of a symmetric matrix; throws on asymmetric input.
double min_eigenvalue_symmetric(const Mat& m);

/// Dual basis {t_i} with t_i . v_j = delta_ij. Requires the input to be a
/// basis of the ambient space; throws RankError otherwise.
std::vector<Vec> dual_basis(const std::vector<Vec>& basis);

/// Solves A x = b by Gaussian elimination with partial pivoting.
Vec solve_linear(Mat a, Vec b);

/// Least-squares solution of (rows of A) . x = b via normal equations.
/// Returns {x, max abs residual}.
std::pair<Vec, double> least_squares(const std::vector<Vec>& rows, const Vec& b);

}  // namespace gpttomo

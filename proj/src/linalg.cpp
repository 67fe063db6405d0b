#include "gpttomo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gpttomo {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::outer(const Vec& v, const Vec& w) {
  Mat m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * w[j];
  return m;
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols_) throw DimensionMismatch("Mat::apply: size mismatch");
  Vec out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Vec Mat::apply_transposed(const Vec& v) const {
  if (v.size() != rows_) throw DimensionMismatch("Mat::apply_transposed: size mismatch");
  Vec out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j] += (*this)(i, j) * v[i];
  return out;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("Mat::operator*: shape mismatch");
  Mat out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

Mat Mat::operator+(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("Mat::operator+: shape mismatch");
  Mat out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Mat Mat::operator-(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatch("Mat::operator-: shape mismatch");
  Mat out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

Mat Mat::scaled(double s) const {
  Mat out = *this;
  for (double& x : out.data_) x *= s;
  return out;
}

Mat Mat::transposed() const {
  Mat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

bool Mat::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vec scale(const Vec& v, double s) {
  Vec out = v;
  for (double& x : out) x *= s;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

namespace {

// Projects v onto the complement of the given orthonormal vectors, twice for
// numerical stability.
Vec project_out(const std::vector<Vec>& ortho, Vec v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Vec& q : ortho) {
      const double c = dot(q, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
  return v;
}

// Pivoted Gram-Schmidt over `candidates`: repeatedly orthonormalizes the
// candidate with the largest residual norm (ties by lowest index) against
// `ortho`, appending accepted vectors to it.
void pivoted_gram_schmidt(const std::vector<Vec>& candidates, std::vector<Vec>& ortho,
                          double tol, std::size_t max_new) {
  std::vector<Vec> residuals;
  residuals.reserve(candidates.size());
  for (const Vec& c : candidates) residuals.push_back(project_out(ortho, c));

  std::vector<bool> used(candidates.size(), false);
  std::size_t added = 0;
  while (added < max_new) {
    double best = tol;
    std::size_t best_idx = candidates.size();
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      if (used[i]) continue;
      const double n = norm2(residuals[i]);
      if (n > best) {
        best = n;
        best_idx = i;
      }
    }
    if (best_idx == candidates.size()) break;
    used[best_idx] = true;
    Vec q = project_out(ortho, residuals[best_idx]);
    const double n = norm2(q);
    if (n <= tol) continue;
    for (double& x : q) x /= n;
    ortho.push_back(q);
    ++added;
    for (std::size_t i = 0; i < residuals.size(); ++i)
      if (!used[i]) residuals[i] = project_out(ortho, residuals[i]);
  }
}

}  // namespace

Subspace span_basis(const std::vector<Vec>& vectors) {
  Subspace out;
  if (vectors.empty()) return out;
  out.ambient_dim = vectors[0].size();
  for (const Vec& v : vectors)
    if (v.size() != out.ambient_dim)
      throw DimensionMismatch("span_basis: mixed ambient dimensions");
  double scale_norm = 1.0;
  for (const Vec& v : vectors) scale_norm = std::max(scale_norm, norm2(v));
  std::vector<Vec> ortho;
  pivoted_gram_schmidt(vectors, ortho, kTolRank * scale_norm, out.ambient_dim);
  out.basis = std::move(ortho);
  return out;
}

Subspace annihilator(const Subspace& sub) {
  const std::size_t n = sub.ambient_dim;
  Subspace out;
  out.ambient_dim = n;
  std::vector<Vec> ortho;
  if (!sub.basis.empty()) {
    pivoted_gram_schmidt(sub.basis, ortho, kTolRank, n);
  }
  const std::size_t k = ortho.size();
  std::vector<Vec> candidates(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) candidates[i][i] = 1.0;
  std::vector<Vec> full = ortho;
  pivoted_gram_schmidt(candidates, full, kTolRank, n - k);
  out.basis.assign(full.begin() + static_cast<std::ptrdiff_t>(k), full.end());
  return out;
}

double distance_to_span(const Subspace& sub, const Vec& v) {
  if (v.size() != sub.ambient_dim && sub.ambient_dim != 0)
    throw DimensionMismatch("distance_to_span: size mismatch");
  std::vector<Vec> ortho;
  pivoted_gram_schmidt(sub.basis, ortho, kTolRank, sub.ambient_dim);
  return norm2(project_out(ortho, v));
}

Mat oblique_projector(const Subspace& image, const Subspace& kernel) {
  const std::size_t n = image.ambient_dim ? image.ambient_dim : kernel.ambient_dim;
  if (image.ambient_dim != kernel.ambient_dim && image.dim() > 0 && kernel.dim() > 0)
    throw DimensionMismatch("oblique_projector: ambient dimensions differ");
  if (image.dim() + kernel.dim() != n)
    throw DecompositionError("oblique_projector: dimensions do not add up to ambient");

  // Columns of M are the image basis followed by the kernel basis; P maps
  // image columns to themselves and kernel columns to zero.
  Mat m(n, n);
  for (std::size_t j = 0; j < image.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = image.basis[j][i];
  for (std::size_t j = 0; j < kernel.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, image.dim() + j) = kernel.basis[j][i];

  // P = B * M^{-1} with B = [image | 0]; solve M^T P^T = B^T column by column.
  Mat mt = m.transposed();
  Mat pt(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    Vec rhs(n, 0.0);
    for (std::size_t j = 0; j < image.dim(); ++j) rhs[j] = image.basis[j][row];
    Vec col;
    try {
      col = solve_linear(mt, rhs);
    } catch (const RankError&) {
      throw DecompositionError("oblique_projector: subspaces are not complementary");
    }
    for (std::size_t i = 0; i < n; ++i) pt(i, row) = col[i];
  }
  return pt.transposed();
}

std::pair<std::vector<double>, Mat> symmetric_eigensystem(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetric_eigensystem: not square");
  const std::size_t n = m.rows();
  Mat a = m;
  Mat v = Mat::identity(n);
  // Cyclic Jacobi sweeps.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-28 * std::max(1.0, a.max_abs() * a.max_abs())) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&a](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  std::vector<double> eigs(n);
  Mat vectors(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    eigs[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) vectors(r, c) = v(r, order[c]);
  }
  return {eigs, vectors};
}

std::vector<double> symmetric_eigenvalues(const Mat& m) {
  return symmetric_eigensystem(m).first;
}

double min_eigenvalue_symmetric(const Mat& m) {
  if (!m.is_symmetric())
    throw LinalgError("min_eigenvalue_symmetric: matrix is not symmetric");
  return symmetric_eigenvalues(m).front();
}

std::vector<Vec> dual_basis(const std::vector<Vec>& basis) {
  if (basis.empty()) return {};
  const std::size_t n = basis[0].size();
  if (basis.size() != n) throw RankError("dual_basis: input is not a square basis");
  // t_i . v_j = delta_ij  <=>  V T^T = I with rows of V the input vectors.
  Mat v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].size() != n) throw DimensionMismatch("dual_basis: ragged input");
    for (std::size_t j = 0; j < n; ++j) v(i, j) = basis[i][j];
  }
  std::vector<Vec> duals(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec rhs(n, 0.0);
    rhs[i] = 1.0;
    duals[i] = solve_linear(v, rhs);
  }
  return duals;
}

Vec solve_linear(Mat a, Vec b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve_linear: shape mismatch");
  double scale_norm = std::max(1.0, a.max_abs());
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < kTolRank * scale_norm)
      throw RankError("solve_linear: singular matrix");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

std::pair<Vec, double> least_squares(const std::vector<Vec>& rows, const Vec& b) {
  if (rows.empty()) throw DimensionMismatch("least_squares: empty system");
  if (rows.size() != b.size()) throw DimensionMismatch("least_squares: rhs size mismatch");
  const std::size_t n = rows[0].size();
  Mat gram(n, n);
  Vec rhs(n, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Vec& row = rows[r];
    if (row.size() != n) throw DimensionMismatch("least_squares: ragged rows");
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] += row[i] * b[r];
      for (std::size_t j = 0; j < n; ++j) gram(i, j) += row[i] * row[j];
    }
  }
  Vec x = solve_linear(gram, rhs);
  double resid = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r)
    resid = std::max(resid, std::fabs(dot(rows[r], x) - b[r]));
  return {x, resid};
}

}  // namespace gpttomo

#include "gpttomo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpttomo {

namespace {
constexpr double kPivotEps = 1e-11;
constexpr std::size_t kArtificialBase = static_cast<std::size_t>(-1) / 2;

double dot_row(const Mat& m, std::size_t row, const Vec& v) {
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += m(row, j) * v[j];
  return acc;
}
}  // namespace

PhaseOneSimplex::PhaseOneSimplex(const Vec& b) : m_(b.size()) {
  row_sign_.resize(m_);
  b_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    row_sign_[i] = b[i] < 0.0 ? -1.0 : 1.0;
    b_[i] = std::fabs(b[i]);
  }
  basis_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) basis_[i] = kArtificialBase + i;
  binv_ = Mat::identity(m_);
  xb_ = b_;
}

std::size_t PhaseOneSimplex::add_column(const Vec& col) {
  if (col.size() != m_) throw DimensionMismatch("PhaseOneSimplex: column size mismatch");
  Vec flipped(m_);
  for (std::size_t i = 0; i < m_; ++i) flipped[i] = row_sign_[i] * col[i];
  cols_.push_back(std::move(flipped));
  return cols_.size() - 1;
}

void PhaseOneSimplex::pivot(std::size_t row, std::size_t entering) {
  const Vec& a = cols_[entering];
  Vec w(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m_; ++j) acc += binv_(i, j) * a[j];
    w[i] = acc;
  }
  const double piv = w[row];
  for (std::size_t j = 0; j < m_; ++j) binv_(row, j) /= piv;
  xb_[row] /= piv;
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == row || w[i] == 0.0) continue;
    const double f = w[i];
    for (std::size_t j = 0; j < m_; ++j) binv_(i, j) -= f * binv_(row, j);
    xb_[i] -= f * xb_[row];
    if (std::fabs(xb_[i]) < 1e-14) xb_[i] = std::max(0.0, xb_[i]);
  }
  basis_[row] = entering;
  ++pivots_since_refactor_;
}

void PhaseOneSimplex::refactorize() {
  // Gauss-Jordan inversion of the basis matrix in one pass.
  Mat a(m_, m_);
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t id = basis_[r];
    for (std::size_t i = 0; i < m_; ++i)
      a(i, r) = id >= kArtificialBase ? (i == id - kArtificialBase ? 1.0 : 0.0) : cols_[id][i];
  }
  Mat inv = Mat::identity(m_);
  for (std::size_t col = 0; col < m_; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m_; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < 1e-13)
      throw LinalgError("PhaseOneSimplex: basis matrix became singular");
    if (piv != col)
      for (std::size_t j = 0; j < m_; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    const double d = a(col, col);
    for (std::size_t j = 0; j < m_; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  binv_ = inv;
  xb_ = binv_.apply(b_);
  pivots_since_refactor_ = 0;
}

void PhaseOneSimplex::solve() {
  const std::size_t max_iters = 4000 + 400 * (m_ + cols_.size());
  std::size_t stall = 0;
  bool bland = false;
  double last_obj = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    if (pivots_since_refactor_ > 250) refactorize();

    // Dual vector of the artificial objective: y = c_B^T B^{-1}.
    Vec y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < kArtificialBase) continue;
      for (std::size_t j = 0; j < m_; ++j) y[j] += binv_(i, j);
    }

    // Entering column: original columns have cost 0, so the reduced cost is
    // -y.a_j. Artificials never re-enter.
    std::vector<bool> in_basis(cols_.size(), false);
    for (std::size_t id : basis_)
      if (id < kArtificialBase) in_basis[id] = true;

    std::size_t entering = cols_.size();
    double best = -kPivotEps;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (in_basis[j]) continue;
      const double red = -dot(y, cols_[j]);
      if (red < best) {
        best = red;
        entering = j;
        if (bland) break;
      }
    }
    if (entering == cols_.size()) break;  // optimal

    Vec w(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) w[i] = dot_row(binv_, i, cols_[entering]);

    // Ratio test; ties prefer kicking out artificials, then Bland's order.
    std::size_t leave = m_;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      if (w[i] <= kPivotEps) continue;
      const double ratio = xb_[i] / w[i];
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio < best_ratio + 1e-12 && leave < m_) {
        const bool cand_art = basis_[i] >= kArtificialBase;
        const bool cur_art = basis_[leave] >= kArtificialBase;
        if (cand_art && !cur_art)
          leave = i;
        else if (cand_art == cur_art && basis_[i] < basis_[leave])
          leave = i;
      }
    }
    if (leave == m_) break;  // numerically stuck; treat as optimal

    pivot(leave, entering);

    const double obj = objective();
    if (obj > last_obj - 1e-13)
      ++stall;
    else
      stall = 0;
    last_obj = obj;
    if (stall > 60) bland = true;
  }
}

double PhaseOneSimplex::objective() const {
  double obj = 0.0;
  for (std::size_t i = 0; i < m_; ++i)
    if (basis_[i] >= kArtificialBase) obj += xb_[i];
  return obj;
}

std::vector<double> PhaseOneSimplex::solution() const {
  std::vector<double> x(cols_.size(), 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    if (basis_[i] < kArtificialBase) x[basis_[i]] = xb_[i];
  return x;
}

Vec PhaseOneSimplex::duals() const {
  Vec y(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (basis_[i] < kArtificialBase) continue;
    for (std::size_t j = 0; j < m_; ++j) y[j] += binv_(i, j);
  }
  for (std::size_t j = 0; j < m_; ++j) y[j] *= row_sign_[j];
  return y;
}

namespace {

MembershipResult run_membership(const Vec& point, const std::vector<Vec>& generators,
                                bool normalized) {
  if (generators.empty()) throw DimensionMismatch("membership: no generators");
  const std::size_t n = point.size();
  for (const Vec& g : generators)
    if (g.size() != n) throw DimensionMismatch("membership: generator size mismatch");

  Vec b = point;
  if (normalized) b.push_back(1.0);
  PhaseOneSimplex lp(b);
  for (const Vec& g : generators) {
    Vec col = g;
    if (normalized) col.push_back(1.0);
    lp.add_column(col);
  }
  lp.solve();
  MembershipResult out;
  const double scale = std::max(1.0, norm_inf(point));
  out.feasible = lp.feasible(kTolLp * scale);
  if (out.feasible) out.weights = lp.solution();
  return out;
}

}  // namespace

MembershipResult convex_membership(const Vec& point, const std::vector<Vec>& generators) {
  return run_membership(point, generators, true);
}

MembershipResult conic_membership(const Vec& point, const std::vector<Vec>& generators) {
  return run_membership(point, generators, false);
}

}  // namespace gpttomo

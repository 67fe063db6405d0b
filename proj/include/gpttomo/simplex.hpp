#pragma once

#include <cstddef>
#include <vector>

#include "gpttomo/linalg.hpp"

namespace gpttomo {

/// Phase-I simplex for the feasibility problem  A x = b, x >= 0.
///
/// Columns of A are supplied one at a time, which supports column
/// generation: after an infeasible solve, `duals()` returns y such that
/// y.b > 0 and y.col <= 0 for every column seen so far; a caller can search
/// for a violating column (y.col > 0), add it and re-solve warm.
///
/// Pricing is Dantzig by default and switches to Bland's rule after a
/// degenerate stall, which guarantees termination.
class PhaseOneSimplex {
 public:
  explicit PhaseOneSimplex(const Vec& b);

  std::size_t num_rows() const { return m_; }
  std::size_t num_columns() const { return cols_.size(); }

  /// Adds a column (in the original row orientation); returns its index.
  std::size_t add_column(const Vec& col);

  /// Runs the simplex to optimality of the artificial objective.
  void solve();

  double objective() const;
  bool feasible(double tol) const { return objective() <= tol; }

  /// Values of the added columns at the current basic solution.
  std::vector<double> solution() const;

  /// Infeasibility certificate in the original row orientation.
  Vec duals() const;

 private:
  void pivot(std::size_t row, std::size_t entering);
  void refactorize();

  std::size_t m_ = 0;
  std::vector<double> row_sign_;
  Vec b_;                       // sign-flipped rhs, nonnegative
  std::vector<Vec> cols_;      // sign-flipped columns
  std::vector<std::size_t> basis_;  // column ids; >= cols capacity marks artificials
  Mat binv_;
  Vec xb_;
  std::size_t pivots_since_refactor_ = 0;
};

struct MembershipResult {
  bool feasible = false;
  std::vector<double> weights;  // per generator, when feasible
};

/// Convex membership: point = sum_i w_i g_i with w >= 0, sum w = 1.
MembershipResult convex_membership(const Vec& point, const std::vector<Vec>& generators);

/// Conic membership: point = sum_i w_i g_i with w >= 0 (no normalization).
MembershipResult conic_membership(const Vec& point, const std::vector<Vec>& generators);

}  // namespace gpttomo

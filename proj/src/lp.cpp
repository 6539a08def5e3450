#include "aubin/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aubin/errors.hpp"

namespace aubin {
namespace {

// Entries this small after a pivot are flushed to zero so Bland's rule sees
// exact degeneracy instead of rounding noise.
constexpr double kFlush = 1e-13;

// x_orig = offset + sum(coef * p[col]) over the standard-form columns of one
// original variable.
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double& cost(std::size_t j) { return at(rows_, j); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        double& v = at(i, j);
        v -= f * at(r, j);
        if (std::abs(v) < kFlush) v = 0.0;
      }
      at(i, c) = 0.0;
    }
  }

  void drop_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * w),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseResult { optimal, unbounded };

// Minimizes the cost row over columns [0, allowed). The cost row holds
// reduced costs; its rhs holds minus the objective value.
PhaseResult run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t allowed,
                        double tol, int& pivots, int max_pivots) {
  for (;;) {
    std::size_t enter = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (t.cost(j) < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == allowed) return PhaseResult::optimal;

    std::size_t leave = t.rows();
    double best = kInf;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= tol) continue;
      const double ratio = t.rhs(i) / a;
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (leave == t.rows() || ratio < best - slack ||
          (ratio <= best + slack && basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave == t.rows()) return PhaseResult::unbounded;

    if (++pivots > max_pivots) {
      std::ostringstream os;
      os << "simplex stalled after " << max_pivots << " pivots";
      throw LpStalled(os.str());
    }
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (lp.eq_lhs.rows() != lp.eq_rhs.dim() || (lp.eq_lhs.rows() > 0 && lp.eq_lhs.cols() != n) ||
      lp.lower.size() != n || lp.upper.size() != n) {
    std::ostringstream os;
    os << "malformed LP: " << n << " variables, constraint matrix " << shape_string(lp.eq_lhs)
       << ", rhs dim " << lp.eq_rhs.dim() << ", bounds " << lp.lower.size() << "/"
       << lp.upper.size();
    throw DimensionError(os.str());
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lp.lower[j]) || std::isnan(lp.upper[j]) || lp.lower[j] > lp.upper[j] ||
        lp.lower[j] == kInf || lp.upper[j] == -kInf) {
      std::ostringstream os;
      os << "malformed LP: bounds of variable " << j << " are [" << lp.lower[j] << ", "
         << lp.upper[j] << "]";
      throw DimensionError(os.str());
    }
  }
}

}  // namespace

LinearProgram make_free_lp(std::size_t n) {
  return LinearProgram{Vector(n), Matrix(0, n), Vector(0), std::vector<double>(n, -kInf),
                       std::vector<double>(n, kInf)};
}

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

double lp_residual(const LinearProgram& lp, const Vector& x) {
  double worst = 0.0;
  if (lp.eq_lhs.rows() > 0) {
    const Vector ax = matvec(lp.eq_lhs, x);
    for (std::size_t i = 0; i < ax.dim(); ++i) worst = std::max(worst, std::abs(ax[i] - lp.eq_rhs[i]));
  }
  for (std::size_t j = 0; j < x.dim(); ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper[j]);
  }
  return worst;
}

LpOutcome lp_solve(const LinearProgram& lp, double tol, int max_pivots) {
  if (!(tol > 0.0)) throw Error("lp_solve: tol must be positive");
  validate(lp);
  const std::size_t n = lp.num_vars();

  // Shift/split every variable onto p >= 0 columns.
  std::vector<VarMap> vars(n);
  std::size_t ncols = 0;
  std::vector<std::pair<std::size_t, double>> range_rows;  // (column, width)
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      vars[j].offset = lo;
      vars[j].terms.push_back({ncols, 1.0});
      if (std::isfinite(hi)) range_rows.push_back({ncols, hi - lo});
      ++ncols;
    } else if (std::isfinite(hi)) {
      vars[j].offset = hi;
      vars[j].terms.push_back({ncols++, -1.0});
    } else {
      vars[j].terms.push_back({ncols++, 1.0});
      vars[j].terms.push_back({ncols++, -1.0});
    }
  }
  const std::size_t range_slack_begin = ncols;
  ncols += range_rows.size();

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < lp.eq_lhs.rows(); ++i) {
    std::vector<double> row(ncols, 0.0);
    double b = lp.eq_rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.eq_lhs(i, j);
      if (a == 0.0) continue;
      b -= a * vars[j].offset;
      for (auto [col, coef] : vars[j].terms) row[col] += a * coef;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
  for (std::size_t k = 0; k < range_rows.size(); ++k) {
    std::vector<double> row(ncols, 0.0);
    row[range_rows[k].first] = 1.0;
    row[range_slack_begin + k] = 1.0;
    rows.push_back(std::move(row));
    rhs.push_back(range_rows[k].second);
  }

  LpOutcome out;

  // Scale rows to unit max-norm, drop empty rows, make the rhs nonnegative.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double scale = 0.0;
    for (double v : rows[i]) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      if (std::abs(rhs[i]) > tol) {
        out.status = LpStatus::infeasible;
        return out;
      }
      continue;
    }
    const double sign = rhs[i] < 0.0 ? -1.0 : 1.0;
    for (double& v : rows[i]) v *= sign / scale;
    rhs[i] *= sign / scale;
    keep.push_back(i);
  }

  const std::size_t m = keep.size();
  Tableau t(m, ncols + m);
  std::vector<std::size_t> basis(m);
  double rhs_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = keep[r];
    for (std::size_t j = 0; j < ncols; ++j) t.at(r, j) = rows[i][j];
    t.at(r, ncols + r) = 1.0;
    t.rhs(r) = rhs[i];
    rhs_scale = std::max(rhs_scale, rhs[i]);
    basis[r] = ncols + r;
  }

  // Phase I: minimize the sum of artificials.
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < ncols; ++j) t.cost(j) -= t.at(r, j);
    t.cost(ncols + m) -= t.rhs(r);
  }
  run_simplex(t, basis, ncols + m, tol, out.pivots, max_pivots);
  const double infeasibility = -t.cost(ncols + m);
  if (infeasibility > tol * rhs_scale) {
    out.status = LpStatus::infeasible;
    return out;
  }

  // Pivot zero-level artificials out of the basis; rows where that is
  // impossible are linearly dependent and are removed.
  for (std::size_t r = 0; r < t.rows();) {
    if (basis[r] < ncols) {
      ++r;
      continue;
    }
    std::size_t col = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (std::abs(t.at(r, j)) > tol) {
        col = j;
        break;
      }
    }
    if (col == ncols) {
      t.drop_row(r);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
      continue;
    }
    t.pivot(r, col);
    basis[r] = col;
    ++r;
  }

  // Phase II cost row: minimize -objective.
  std::vector<double> cost(ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [col, coef] : vars[j].terms) cost[col] -= lp.objective[j] * coef;
  for (std::size_t j = 0; j <= ncols + m; ++j) t.cost(j) = 0.0;
  for (std::size_t j = 0; j < ncols; ++j) t.cost(j) = cost[j];
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= ncols + m; ++j) t.cost(j) -= cb * t.at(r, j);
  }

  if (run_simplex(t, basis, ncols, tol, out.pivots, max_pivots) == PhaseResult::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  std::vector<double> p(ncols, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) p[basis[r]] = std::max(0.0, t.rhs(r));
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = vars[j].offset;
    for (auto [col, coef] : vars[j].terms) v += coef * p[col];
    x[j] = v;
  }
  out.status = LpStatus::optimal;
  out.objective_value = dot(lp.objective, x);
  out.solution = std::move(x);
  return out;
}

}  // namespace aubin

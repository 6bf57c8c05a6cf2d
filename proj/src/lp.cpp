// Copyright 2026 The Spreadhedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spreadhedge/lp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "spreadhedge/errors.hpp"

namespace spreadhedge::lp {
namespace {

// ---------------------------------------------------------------------------
// Standard form: min cost'z  s.t.  M z = rhs,  z >= 0,  rhs >= 0.

struct SparseColumn {
  std::vector<std::pair<int, double>> entries;  // (row, value)
};

enum class VarKind { kFixed, kLower, kUpper, kFree };

struct VarMap {
  VarKind kind = VarKind::kLower;
  double shift = 0.0;  // fixed value, lower bound, or upper bound
  int col = -1;
  int col_neg = -1;  // negative part of a free variable
};

struct StandardForm {
  int rows = 0;
  int eq_rows = 0;
  int ub_rows = 0;
  std::vector<SparseColumn> cols;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;  // phase II, already multiplied by the sense sign
  std::vector<double> row_sign;
  std::vector<int> initial_basis;
  int first_artificial = 0;
  std::vector<VarMap> vars;
};

StandardForm BuildStandardForm(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const int m_eq = static_cast<int>(lp.b_eq.size());
  const int m_ub = static_cast<int>(lp.b_ub.size());
  const double sense = lp.sense == Sense::kMinimize ? 1.0 : -1.0;

  StandardForm sf;
  sf.eq_rows = m_eq;
  sf.ub_rows = m_ub;
  sf.vars.resize(n);

  std::vector<double> cost;
  std::vector<int> box_vars;
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    VarMap& v = sf.vars[j];
    if (std::isfinite(lo) && std::isfinite(hi) && lo == hi) {
      v.kind = VarKind::kFixed;
      v.shift = lo;
      continue;
    }
    if (std::isfinite(lo)) {
      v.kind = VarKind::kLower;
      v.shift = lo;
      v.col = static_cast<int>(cost.size());
      cost.push_back(sense * lp.c(j));
      if (std::isfinite(hi)) box_vars.push_back(j);
    } else if (std::isfinite(hi)) {
      v.kind = VarKind::kUpper;
      v.shift = hi;
      v.col = static_cast<int>(cost.size());
      cost.push_back(-sense * lp.c(j));
    } else {
      v.kind = VarKind::kFree;
      v.col = static_cast<int>(cost.size());
      cost.push_back(sense * lp.c(j));
      v.col_neg = static_cast<int>(cost.size());
      cost.push_back(-sense * lp.c(j));
    }
  }
  const int structural = static_cast<int>(cost.size());
  const int m_box = static_cast<int>(box_vars.size());
  sf.rows = m_eq + m_ub + m_box;
  sf.cols.resize(structural);
  sf.rhs = Eigen::VectorXd::Zero(sf.rows);

  auto add_row_entries = [&](int row, const auto& coeffs) {
    for (int j = 0; j < n; ++j) {
      const double a = coeffs(j);
      if (a == 0.0) continue;
      const VarMap& v = sf.vars[j];
      sf.rhs(row) -= a * (v.kind == VarKind::kFree ? 0.0 : v.shift);
      switch (v.kind) {
        case VarKind::kFixed: break;
        case VarKind::kLower: sf.cols[v.col].entries.emplace_back(row, a); break;
        case VarKind::kUpper: sf.cols[v.col].entries.emplace_back(row, -a); break;
        case VarKind::kFree:
          sf.cols[v.col].entries.emplace_back(row, a);
          sf.cols[v.col_neg].entries.emplace_back(row, -a);
          break;
      }
    }
  };
  for (int i = 0; i < m_eq; ++i) {
    sf.rhs(i) = lp.b_eq(i);
    add_row_entries(i, lp.a_eq.row(i));
  }
  for (int i = 0; i < m_ub; ++i) {
    sf.rhs(m_eq + i) = lp.b_ub(i);
    add_row_entries(m_eq + i, lp.a_ub.row(i));
  }
  for (int k = 0; k < m_box; ++k) {
    const int j = box_vars[k];
    const int row = m_eq + m_ub + k;
    sf.rhs(row) = lp.upper(j) - lp.lower(j);
    sf.cols[sf.vars[j].col].entries.emplace_back(row, 1.0);
  }
  // One slack per inequality row.
  std::vector<int> slack_of_row(sf.rows, -1);
  for (int row = m_eq; row < sf.rows; ++row) {
    slack_of_row[row] = static_cast<int>(sf.cols.size());
    sf.cols.push_back({{{row, 1.0}}});
    cost.push_back(0.0);
  }
  // Nonnegative right-hand sides.
  sf.row_sign.assign(sf.rows, 1.0);
  for (int row = 0; row < sf.rows; ++row) {
    if (sf.rhs(row) < 0.0) {
      sf.row_sign[row] = -1.0;
      sf.rhs(row) = -sf.rhs(row);
    }
  }
  for (auto& col : sf.cols) {
    for (auto& [row, a] : col.entries) a *= sf.row_sign[row];
  }
  // Crash basis: slacks where they enter with +1, artificials elsewhere.
  sf.first_artificial = static_cast<int>(sf.cols.size());
  sf.initial_basis.resize(sf.rows);
  for (int row = 0; row < sf.rows; ++row) {
    if (slack_of_row[row] >= 0 && sf.row_sign[row] > 0) {
      sf.initial_basis[row] = slack_of_row[row];
    } else {
      sf.initial_basis[row] = static_cast<int>(sf.cols.size());
      sf.cols.push_back({{{row, 1.0}}});
      cost.push_back(0.0);
    }
  }
  sf.cost = Eigen::Map<Eigen::VectorXd>(cost.data(), static_cast<Eigen::Index>(cost.size()));
  return sf;
}

// ---------------------------------------------------------------------------

class RevisedSimplex {
 public:
  explicit RevisedSimplex(const StandardForm& sf)
      : sf_(sf),
        m_(sf.rows),
        ncols_(static_cast<int>(sf.cols.size())),
        basis_(sf.initial_basis),
        position_(ncols_, -1),
        binv_(Eigen::MatrixXd::Identity(m_, m_)),
        xb_(sf.rhs) {
    for (int i = 0; i < m_; ++i) position_[basis_[i]] = i;
    refactor_period_ = std::max(64, m_);
    iteration_limit_ = 50 * (m_ + ncols_) + 1000;
  }

  // Runs to optimality for `cost` with only `allowed` columns eligible to
  // enter. Returns false when the problem is unbounded.
  bool Run(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
    Eigen::VectorXd cb(m_);
    Eigen::VectorXd w(m_);
    Eigen::VectorXd y(m_);
    bool fresh = false;
    bool updated = false;
    int degenerate_run = 0;
    int since_refactor = 0;
    while (true) {
      if (++iterations_ > iteration_limit_) {
        throw Error(ErrorCode::kNumericalBreakdown,
                    fmt::format("simplex iteration limit {} reached", iteration_limit_));
      }
      if (since_refactor >= refactor_period_) {
        Refactor();
        since_refactor = 0;
        fresh = false;
      }
      if (!fresh) {
        for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
        y = binv_.transpose() * cb;
        fresh = true;
        updated = false;
      }

      const bool bland = degenerate_run > kDegenerateRunBeforeBland;
      int entering = -1;
      double best = -kOptimalityTolerance;
      double entering_cost = 0.0;
      for (int j = 0; j < ncols_; ++j) {
        if (position_[j] >= 0 || !allowed[j]) continue;
        double d = cost(j);
        for (const auto& [row, a] : sf_.cols[j].entries) d -= y(row) * a;
        if (d < best) {
          entering = j;
          entering_cost = d;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) {
        if (!updated) return true;
        fresh = false;  // confirm optimality with recomputed multipliers
        continue;
      }

      w.setZero();
      for (const auto& [row, a] : sf_.cols[entering].entries) w += binv_.col(row) * a;

      const double piv_tol = kEligiblePivot * std::max(1.0, w.lpNorm<Eigen::Infinity>());
      const auto forced = [&](int i) {
        return basis_[i] >= sf_.first_artificial && !allowed[basis_[i]] &&
               std::abs(w(i)) > piv_tol;
      };
      // Harris pass 1: the largest step that keeps every basic variable
      // above -kFeasibilityTolerance.
      double bound = kInf;
      for (int i = 0; i < m_; ++i) {
        if (forced(i)) {
          bound = 0.0;
        } else if (w(i) > piv_tol) {
          bound = std::min(bound, (std::max(xb_(i), 0.0) + kFeasibilityTolerance) / w(i));
        }
      }
      // Pass 2: within that step, the largest pivot (lowest basis index
      // under Bland's rule).
      int leave = -1;
      double min_ratio = kInf;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        double ratio;
        if (forced(i)) {
          ratio = 0.0;
        } else if (w(i) > piv_tol) {
          ratio = std::max(xb_(i), 0.0) / w(i);
        } else {
          continue;
        }
        if (ratio > bound) continue;
        const double pivot = std::abs(w(i));
        const bool better = leave < 0 || (bland ? basis_[i] < basis_[leave] : pivot > best_pivot);
        if (better) {
          leave = i;
          min_ratio = ratio;
          best_pivot = pivot;
        }
      }
      if (leave < 0) return false;
      if (std::abs(w(leave)) < kPivotTolerance) {
        throw Error(ErrorCode::kNumericalBreakdown, "pivot below tolerance");
      }
      degenerate_run = min_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, entering, w);
      y += entering_cost * binv_.row(leave).transpose();
      updated = true;
      ++since_refactor;
    }
  }

  // Pivots basic artificials out of the basis wherever a structural column
  // can replace them; the rest sit on redundant rows.
  void DriveOutArtificials() {
    Eigen::VectorXd w(m_);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < sf_.first_artificial) continue;
      const Eigen::RowVectorXd rho = binv_.row(i);
      int best_col = -1;
      double best_alpha = 1e-7;
      for (int j = 0; j < sf_.first_artificial; ++j) {
        if (position_[j] >= 0) continue;
        double alpha = 0.0;
        for (const auto& [row, a] : sf_.cols[j].entries) alpha += rho(row) * a;
        if (std::abs(alpha) > best_alpha) {
          best_alpha = std::abs(alpha);
          best_col = j;
        }
      }
      if (best_col < 0) continue;
      w.setZero();
      for (const auto& [row, a] : sf_.cols[best_col].entries) w += binv_.col(row) * a;
      Pivot(i, best_col, w);
    }
  }

  void Refactor() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [row, a] : sf_.cols[basis_[i]].entries) b(row, i) = a;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) {
      throw Error(ErrorCode::kNumericalBreakdown, "singular basis");
    }
    xb_ = lu.solve(sf_.rhs);
    lu_ = std::move(lu);
  }

  // Values of all standard-form columns, and multipliers for `cost`, from a
  // fresh factorization.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> Finish(const Eigen::VectorXd& cost) {
    Refactor();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(ncols_);
    for (int i = 0; i < m_; ++i) z(basis_[i]) = xb_(i);
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
    Eigen::VectorXd y = lu_.transpose().solve(cb);
    return {z, y};
  }

  double BasicObjective(const Eigen::VectorXd& cost) const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost(basis_[i]) * xb_(i);
    return v;
  }

  int iterations() const { return iterations_; }

 private:
  static constexpr int kDegenerateRunBeforeBland = 50;
  static constexpr double kEligiblePivot = 1e-7;

  void Pivot(int leave, int entering, const Eigen::VectorXd& w) {
    const double piv = w(leave);
    const double theta = std::max(xb_(leave), 0.0) / piv;
    xb_ -= theta * w;
    xb_(leave) = theta;
    const Eigen::RowVectorXd pivot_row = binv_.row(leave) / piv;
    binv_.noalias() -= w * pivot_row;
    binv_.row(leave) = pivot_row;
    position_[basis_[leave]] = -1;
    basis_[leave] = entering;
    position_[entering] = leave;
  }

  const StandardForm& sf_;
  int m_;
  int ncols_;
  std::vector<int> basis_;
  std::vector<int> position_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  int refactor_period_ = 64;
  int iteration_limit_ = 0;
  int iterations_ = 0;
};

double Scaled(double residual, double magnitude) {
  return residual / (1.0 + std::abs(magnitude));
}

}  // namespace

std::string_view StatusName(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram LinearProgram::WithVariables(int num_vars, Sense sense) {
  LinearProgram lp;
  lp.sense = sense;
  lp.c = Eigen::VectorXd::Zero(num_vars);
  lp.a_eq.resize(0, num_vars);
  lp.b_eq.resize(0);
  lp.a_ub.resize(0, num_vars);
  lp.b_ub.resize(0);
  lp.lower = Eigen::VectorXd::Zero(num_vars);
  lp.upper = Eigen::VectorXd::Constant(num_vars, kInf);
  lp.names.resize(num_vars);
  for (int j = 0; j < num_vars; ++j) lp.names[j] = fmt::format("x{}", j);
  return lp;
}

namespace {

int AppendRow(Eigen::MatrixXd& a, Eigen::VectorXd& b, const Eigen::VectorXd& row,
              double rhs) {
  if (row.size() != a.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("row has {} entries, problem has {} variables", row.size(),
                            a.cols()));
  }
  const auto r = a.rows();
  a.conservativeResize(r + 1, Eigen::NoChange);
  a.row(r) = row.transpose();
  b.conservativeResize(r + 1);
  b(r) = rhs;
  return static_cast<int>(r);
}

}  // namespace

int LinearProgram::add_eq_row(const Eigen::VectorXd& row, double rhs) {
  return AppendRow(a_eq, b_eq, row, rhs);
}

int LinearProgram::add_ub_row(const Eigen::VectorXd& row, double rhs) {
  return AppendRow(a_ub, b_ub, row, rhs);
}

void LinearProgram::validate() const {
  const auto n = c.size();
  if (a_eq.cols() != n || a_ub.cols() != n || a_eq.rows() != b_eq.size() ||
      a_ub.rows() != b_ub.size() || lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "linear program dimensions are inconsistent");
  }
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != n) {
    throw Error(ErrorCode::kShapeMismatch, "variable names do not match the columns");
  }
  if (!c.allFinite() || !a_eq.allFinite() || !a_ub.allFinite() || !b_eq.allFinite() ||
      !b_ub.allFinite()) {
    throw Error(ErrorCode::kValidationError, "non-finite entry in c, A or b");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j) ||
        lower(j) == kInf || upper(j) == -kInf) {
      throw Error(ErrorCode::kValidationError, fmt::format("bad bounds on variable {}", j));
    }
  }
}

LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  const StandardForm sf = BuildStandardForm(lp);
  const int total = static_cast<int>(sf.cols.size());
  RevisedSimplex simplex(sf);
  LpSolution sol;

  // Phase I.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
  for (int j = sf.first_artificial; j < total; ++j) phase1(j) = 1.0;
  std::vector<bool> allowed(total, true);
  if (sf.first_artificial < total) {
    simplex.Run(phase1, allowed);
    simplex.Refactor();
    const double infeasibility = simplex.BasicObjective(phase1);
    const double scale = 1.0 + (sf.rhs.size() ? sf.rhs.lpNorm<Eigen::Infinity>() : 0.0);
    if (infeasibility > kFeasibilityTolerance * scale) {
      sol.status = Status::kInfeasible;
      sol.iterations = simplex.iterations();
      return sol;
    }
    simplex.DriveOutArtificials();
  }

  // Phase II.
  for (int j = sf.first_artificial; j < total; ++j) allowed[j] = false;
  if (!simplex.Run(sf.cost, allowed)) {
    sol.status = Status::kUnbounded;
    sol.iterations = simplex.iterations();
    return sol;
  }
  const auto [z, y_std] = simplex.Finish(sf.cost);
  sol.status = Status::kOptimal;
  sol.iterations = simplex.iterations();

  const int n = lp.num_vars();
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) {
    const VarMap& v = sf.vars[j];
    switch (v.kind) {
      case VarKind::kFixed: sol.x(j) = v.shift; break;
      case VarKind::kLower: sol.x(j) = v.shift + z(v.col); break;
      case VarKind::kUpper: sol.x(j) = v.shift - z(v.col); break;
      case VarKind::kFree: sol.x(j) = z(v.col) - z(v.col_neg); break;
    }
  }
  const double sense = lp.sense == Sense::kMinimize ? 1.0 : -1.0;
  sol.y_eq.resize(sf.eq_rows);
  for (int i = 0; i < sf.eq_rows; ++i) sol.y_eq(i) = sense * sf.row_sign[i] * y_std(i);
  sol.y_ub.resize(sf.ub_rows);
  for (int i = 0; i < sf.ub_rows; ++i) {
    const int row = sf.eq_rows + i;
    sol.y_ub(i) = sense * sf.row_sign[row] * y_std(row);
  }
  sol.reduced_costs = lp.c - lp.a_eq.transpose() * sol.y_eq - lp.a_ub.transpose() * sol.y_ub;
  sol.objective = lp.c.dot(sol.x);
  return sol;
}

CertificateReport verify_certificate(const LinearProgram& lp, const LpSolution& sol) {
  lp.validate();
  CertificateReport r;
  const auto n = lp.c.size();
  if (sol.status != Status::kOptimal || sol.x.size() != n ||
      sol.y_eq.size() != lp.b_eq.size() || sol.y_ub.size() != lp.b_ub.size()) {
    r.failed = "status/shape";
    return r;
  }
  const double sense = lp.sense == Sense::kMinimize ? 1.0 : -1.0;

  // Primal feasibility.
  const Eigen::VectorXd eq_lhs = lp.a_eq * sol.x;
  for (Eigen::Index i = 0; i < lp.b_eq.size(); ++i) {
    r.primal_residual =
        std::max(r.primal_residual, Scaled(std::abs(eq_lhs(i) - lp.b_eq(i)), lp.b_eq(i)));
  }
  const Eigen::VectorXd ub_slack = lp.b_ub - lp.a_ub * sol.x;
  for (Eigen::Index i = 0; i < lp.b_ub.size(); ++i) {
    r.primal_residual = std::max(r.primal_residual, Scaled(-ub_slack(i), lp.b_ub(i)));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower(j))) {
      r.primal_residual =
          std::max(r.primal_residual, Scaled(lp.lower(j) - sol.x(j), lp.lower(j)));
    }
    if (std::isfinite(lp.upper(j))) {
      r.primal_residual =
          std::max(r.primal_residual, Scaled(sol.x(j) - lp.upper(j), lp.upper(j)));
    }
  }

  // Dual feasibility, in minimization form.
  const Eigen::VectorXd y_eq = sense * sol.y_eq;
  const Eigen::VectorXd y_ub = sense * sol.y_ub;
  const Eigen::VectorXd d =
      sense * lp.c - lp.a_eq.transpose() * y_eq - lp.a_ub.transpose() * y_ub;
  for (Eigen::Index i = 0; i < y_ub.size(); ++i) {
    r.dual_residual = std::max(r.dual_residual, std::max(y_ub(i), 0.0));
  }
  double dual_obj = lp.b_eq.dot(y_eq) + lp.b_ub.dot(y_ub);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double plus = std::max(d(j), 0.0);
    const double minus = std::max(-d(j), 0.0);
    if (!std::isfinite(lp.lower(j))) {
      r.dual_residual = std::max(r.dual_residual, Scaled(plus, lp.c(j)));
    } else {
      dual_obj += lp.lower(j) * plus;
      r.complementarity_residual =
          std::max(r.complementarity_residual, plus * std::abs(sol.x(j) - lp.lower(j)));
    }
    if (!std::isfinite(lp.upper(j))) {
      r.dual_residual = std::max(r.dual_residual, Scaled(minus, lp.c(j)));
    } else {
      dual_obj -= lp.upper(j) * minus;
      r.complementarity_residual =
          std::max(r.complementarity_residual, minus * std::abs(lp.upper(j) - sol.x(j)));
    }
  }
  for (Eigen::Index i = 0; i < y_ub.size(); ++i) {
    r.complementarity_residual =
        std::max(r.complementarity_residual, std::abs(y_ub(i) * ub_slack(i)));
  }
  const double primal_obj = sense * lp.c.dot(sol.x);
  r.dual_objective = sense * dual_obj;
  r.duality_gap = Scaled(std::abs(primal_obj - dual_obj), primal_obj);

  std::vector<std::string> failed;
  if (!(r.primal_residual <= kFeasibilityTolerance)) failed.push_back("primal_feasibility");
  if (!(r.dual_residual <= kOptimalityTolerance)) failed.push_back("dual_feasibility");
  if (!(r.complementarity_residual <= kComplementarityTolerance)) {
    failed.push_back("complementary_slackness");
  }
  if (!(r.duality_gap <= kDualityGapTolerance)) failed.push_back("duality_gap");
  if (std::abs(sol.objective - lp.c.dot(sol.x)) > kDualityGapTolerance * (1.0 + std::abs(sol.objective))) {
    failed.push_back("objective");
  }
  r.ok = failed.empty();
  for (std::size_t k = 0; k < failed.size(); ++k) {
    r.failed += (k ? "," : "") + failed[k];
  }
  return r;
}

namespace {

// Inequalities g'x <= h gathered from A_ub rows and finite bounds.
struct Inequalities {
  Eigen::MatrixXd g;
  Eigen::VectorXd h;
};

Inequalities CollectInequalities(const LinearProgram& lp) {
  const int n = lp.num_vars();
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < lp.a_ub.rows(); ++i) {
    rows.push_back(lp.a_ub.row(i).transpose());
    rhs.push_back(lp.b_ub(i));
  }
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower(j))) {
      rows.push_back(-Eigen::VectorXd::Unit(n, j));
      rhs.push_back(-lp.lower(j));
    }
    if (std::isfinite(lp.upper(j))) {
      rows.push_back(Eigen::VectorXd::Unit(n, j));
      rhs.push_back(lp.upper(j));
    }
  }
  Inequalities ineq{Eigen::MatrixXd(rows.size(), n), Eigen::VectorXd(rows.size())};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ineq.g.row(i) = rows[i].transpose();
    ineq.h(i) = rhs[i];
  }
  return ineq;
}

template <typename Visit>
void ForEachSubset(int total, int size, Visit&& visit) {
  if (size > total) return;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = size - 1;
    while (i >= 0 && idx[i] == total - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int k = i + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
  }
}

}  // namespace

std::vector<Vertex> enumerate_vertices(const LinearProgram& lp) {
  lp.validate();
  const int n = lp.num_vars();
  if (n > kMaxBruteForceVars) {
    throw Error(ErrorCode::kTooLarge,
                fmt::format("{} variables exceed the brute-force limit of {}", n,
                            kMaxBruteForceVars));
  }
  const Inequalities ineq = CollectInequalities(lp);
  const auto m_eq = lp.a_eq.rows();
  const int eq_rank =
      m_eq ? static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(lp.a_eq).rank()) : 0;
  constexpr double kTol = 1e-9;

  std::vector<Vertex> vertices;
  ForEachSubset(static_cast<int>(ineq.h.size()), n - eq_rank, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd a(m_eq + static_cast<Eigen::Index>(idx.size()), n);
    Eigen::VectorXd b(a.rows());
    if (m_eq) {
      a.topRows(m_eq) = lp.a_eq;
      b.head(m_eq) = lp.b_eq;
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      a.row(m_eq + k) = ineq.g.row(idx[k]);
      b(m_eq + k) = ineq.h(idx[k]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() != n) return;
    const Eigen::VectorXd x = lu.solve(b);
    if (!x.allFinite()) return;
    if (((a * x - b).cwiseAbs().array() > kTol * (1.0 + b.cwiseAbs().array())).any()) return;
    const Eigen::VectorXd slack = ineq.h - ineq.g * x;
    if ((slack.array() < -kTol * (1.0 + ineq.h.cwiseAbs().array())).any()) return;
    for (const auto& v : vertices) {
      if ((v.x - x).cwiseAbs().maxCoeff() <= kTol * (1.0 + x.cwiseAbs().maxCoeff())) return;
    }
    vertices.push_back({x, lp.c.dot(x)});
  });
  return vertices;
}

std::vector<Vertex> brute_force_vertices(const LinearProgram& lp) {
  auto vertices = enumerate_vertices(lp);
  if (vertices.empty()) return vertices;
  const bool minimize = lp.sense == Sense::kMinimize;
  double best = vertices.front().objective;
  for (const auto& v : vertices) {
    best = minimize ? std::min(best, v.objective) : std::max(best, v.objective);
  }
  std::vector<Vertex> optimal;
  for (auto& v : vertices) {
    if (std::abs(v.objective - best) <= 1e-9 * (1.0 + std::abs(best))) {
      optimal.push_back(std::move(v));
    }
  }
  return optimal;
}

void dump(const LinearProgram& lp, std::ostream& out) {
  lp.validate();
  const int n = lp.num_vars();
  auto name = [&](int j) {
    return lp.names.empty() ? fmt::format("x{}", j) : lp.names[j];
  };
  auto write_row = [&](const auto& row) {
    bool first = true;
    for (int j = 0; j < n; ++j) {
      const double a = row(j);
      if (a == 0.0) continue;
      fmt::print(out, "{}{} {}", first ? "" : (a < 0 ? " - " : " + "),
                 first ? a : std::abs(a), name(j));
      first = false;
    }
    if (first) fmt::print(out, "0");
  };
  fmt::print(out, "{}\n obj: ", lp.sense == Sense::kMinimize ? "minimize" : "maximize");
  write_row(lp.c);
  fmt::print(out, "\nsubject to\n");
  for (Eigen::Index i = 0; i < lp.a_eq.rows(); ++i) {
    fmt::print(out, " eq{}: ", i);
    write_row(lp.a_eq.row(i));
    fmt::print(out, " = {}\n", lp.b_eq(i));
  }
  for (Eigen::Index i = 0; i < lp.a_ub.rows(); ++i) {
    fmt::print(out, " ub{}: ", i);
    write_row(lp.a_ub.row(i));
    fmt::print(out, " <= {}\n", lp.b_ub(i));
  }
  fmt::print(out, "bounds\n");
  for (int j = 0; j < n; ++j) {
    fmt::print(out, " {} <= {} <= {}\n", lp.lower(j), name(j), lp.upper(j));
  }
  fmt::print(out, "end\n");
}

}  // namespace spreadhedge::lp

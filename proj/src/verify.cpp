#include "invspan/verify.hpp"

#include <sstream>

namespace invspan {
namespace {

// Dense tableau simplex on the equality form [G, -G, -I | h] with y = u - v.
// Artificial variables carry phase 1; Bland's rule guarantees termination.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {
    m_ = lp.rows.size();
    ny_ = lp.objective.size();
    cols_ = 2 * ny_ + m_;
    tab_.assign(m_, std::vector<Rational>(cols_ + m_ + 1));
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = lp.rhs[i].sign() < 0;
      for (std::size_t v = 0; v < ny_; ++v) {
        Rational g = lp.rows[i][v];
        if (flip) g = -g;
        tab_[i][v] = g;
        tab_[i][ny_ + v] = -g;
      }
      // Surplus column only for inequality rows.
      const bool eq = i < lp.equality.size() && lp.equality[i];
      if (!eq) tab_[i][2 * ny_ + i] = flip ? Rational(1) : Rational(-1);
      tab_[i][cols_ + i] = 1;  // artificial
      tab_[i][cols_ + m_] = flip ? -lp.rhs[i] : lp.rhs[i];
    }
  }

  LpSolution run() {
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = cols_ + i;

    // Phase 1: minimize the artificial sum.
    std::vector<Rational> phase1(cols_ + m_);
    for (std::size_t j = cols_; j < cols_ + m_; ++j) phase1[j] = 1;
    if (!optimize(phase1, /*forbid_artificials=*/false)) {
      throw InternalError("phase 1 unbounded");
    }
    Rational art_total;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= cols_) art_total += tab_[i][cols_ + m_];
    if (art_total.sign() > 0) return {LpSolution::Status::Infeasible, {}, {}};
    drive_out_artificials();

    // Phase 2.
    std::vector<Rational> cost(cols_ + m_);
    for (std::size_t v = 0; v < ny_; ++v) {
      cost[v] = lp_.objective[v];
      cost[ny_ + v] = -lp_.objective[v];
    }
    if (!optimize(cost, /*forbid_artificials=*/true)) {
      return {LpSolution::Status::Unbounded, {}, {}};
    }
    LpSolution out;
    out.status = LpSolution::Status::Optimal;
    out.point.assign(ny_, Rational(0));
    std::vector<Rational> z(cols_ + m_);
    for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = tab_[i][cols_ + m_];
    for (std::size_t v = 0; v < ny_; ++v) out.point[v] = z[v] - z[ny_ + v];
    for (std::size_t v = 0; v < ny_; ++v) out.objective += lp_.objective[v] * out.point[v];
    return out;
  }

 private:
  // Bland: entering = smallest index with negative reduced cost; leaving =
  // smallest ratio, ties by smallest basis column. Returns false on unbounded.
  bool optimize(const std::vector<Rational>& cost, bool forbid_artificials) {
    const std::size_t limit = forbid_artificials ? cols_ : cols_ + m_;
    for (;;) {
      std::vector<Rational> y(m_);  // multipliers: cost over the basis
      for (std::size_t i = 0; i < m_; ++i) y[i] = cost[basis_[i]];
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        bool in_basis = false;
        for (std::size_t i = 0; i < m_; ++i)
          if (basis_[i] == j) in_basis = true;
        if (in_basis) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) reduced -= y[i] * tab_[i][j];
        if (reduced.sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tab_[i][enter].sign() <= 0) continue;
        const Rational ratio = tab_[i][cols_ + m_] / tab_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < cols_) continue;
      std::size_t col = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!tab_[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col < cols_) pivot(i, col);
      // An all-zero row is a redundant constraint; the artificial stays basic
      // at value zero and never re-enters the objective.
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = tab_[row][col].reciprocal();
    for (auto& v : tab_[row]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col].is_zero()) continue;
      const Rational factor = tab_[i][col];
      for (std::size_t j = 0; j <= cols_ + m_; ++j) tab_[i][j] -= factor * tab_[row][j];
    }
    basis_[row] = col;
  }

  const LinearProgram& lp_;
  std::size_t m_ = 0, ny_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
};

// Gaussian elimination solve of a square rational system; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = a[col][col].reciprocal();
    for (auto& v : a[col]) v *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col];
      for (std::size_t c2 = 0; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) { return Simplex(lp).run(); }

LpSolution solve_lp_by_vertex_enumeration(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.objective.size();
  LpSolution best;
  best.status = LpSolution::Status::Infeasible;
  std::vector<std::size_t> pick(n);
  auto feasible = [&](const std::vector<Rational>& y) {
    for (std::size_t i = 0; i < m; ++i) {
      Rational lhs;
      for (std::size_t v = 0; v < n; ++v) lhs += lp.rows[i][v] * y[v];
      const bool eq = i < lp.equality.size() && lp.equality[i];
      if (eq ? !(lhs == lp.rhs[i]) : lhs < lp.rhs[i]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t next, std::size_t depth) -> void {
    if (depth == n) {
      std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
      std::vector<Rational> b(n);
      for (std::size_t r = 0; r < n; ++r) {
        a[r] = lp.rows[pick[r]];
        b[r] = lp.rhs[pick[r]];
      }
      auto y = solve_square(std::move(a), std::move(b));
      if (!y || !feasible(*y)) return;
      Rational obj;
      for (std::size_t v = 0; v < n; ++v) obj += lp.objective[v] * (*y)[v];
      if (best.status == LpSolution::Status::Infeasible || obj < best.objective) {
        best.status = LpSolution::Status::Optimal;
        best.objective = obj;
        best.point = *y;
      }
      return;
    }
    for (std::size_t i = next; i < m; ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

SpanResult lp_span_full(const Instance& inst, int max_n, std::size_t enumeration_cap) {
  if (inst.n() > max_n) throw Error("lp_span_full: ground set too large");
  const auto members = enumerate_family(inst.family, enumeration_cap);
  const int n = inst.n();
  LinearProgram lp;
  lp.objective.assign(n + 2, Rational(0));
  lp.objective[n] = 1;        // t_max
  lp.objective[n + 1] = -1;   // t_min

  auto add_row = [&](std::vector<Rational> row, Rational rhs) {
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(std::move(rhs));
    lp.equality.push_back(false);
  };
  for (const auto& f : members) {
    if (f == inst.input_solution) continue;
    for (int j = 0; j < inst.k(); ++j) {
      std::vector<Rational> row(n + 2, Rational(0));
      for (int s : set_diff(inst.input_solution, f)) row[s] = 1;
      for (int s : set_diff(f, inst.input_solution)) row[s] = -1;
      add_row(std::move(row),
              set_total(inst.input_solution, inst.costs[j]) - set_total(f, inst.costs[j]));
    }
  }
  for (int s = 0; s < n; ++s) {
    std::vector<Rational> hi(n + 2, Rational(0));
    hi[s] = -inst.weights[s];
    hi[n] = 1;
    add_row(std::move(hi), 0);  // t_max >= w p
    std::vector<Rational> lo(n + 2, Rational(0));
    lo[s] = inst.weights[s];
    lo[n + 1] = -1;
    add_row(std::move(lo), 0);  // w p >= t_min
    if (inst.lower[s].is_finite()) {
      std::vector<Rational> row(n + 2, Rational(0));
      row[s] = 1;
      add_row(std::move(row), inst.lower[s].finite());
    }
    if (inst.upper[s].is_finite()) {
      std::vector<Rational> row(n + 2, Rational(0));
      row[s] = -1;
      add_row(std::move(row), -inst.upper[s].finite());
    }
  }

  const LpSolution sol = solve_lp(lp);
  SpanResult out;
  if (sol.status == LpSolution::Status::Infeasible) return out;
  if (sol.status != LpSolution::Status::Optimal)
    throw InternalError("span LP cannot be unbounded");
  out.status = SpanResult::Status::Optimal;
  out.span = sol.objective;
  DeviationVector p;
  p.values.assign(sol.point.begin(), sol.point.begin() + n);
  out.deviation = std::move(p);
  return out;
}

namespace {

// One 2-variable cell: minimize y - x over the cell polygon.
struct CellLine {
  Rational a, b, c;  // a*x + b*y >= c
};

std::optional<std::pair<Rational, Rational>> cell_optimum(const std::vector<CellLine>& lines,
                                                          bool gauge) {
  std::vector<CellLine> all = lines;
  all.push_back({-1, 1, 0});  // y - x >= 0
  std::vector<CellLine> eqs;
  if (gauge) eqs.push_back({1, 0, 0});  // x = 0

  auto feasible = [&](const Rational& x, const Rational& y) {
    for (const auto& ln : all)
      if (ln.a * x + ln.b * y < ln.c) return false;
    for (const auto& ln : eqs)
      if (!(ln.a * x + ln.b * y == ln.c)) return false;
    return true;
  };

  std::vector<CellLine> candidates = all;
  candidates.insert(candidates.end(), eqs.begin(), eqs.end());
  std::optional<std::pair<Rational, Rational>> best;
  Rational best_obj;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const auto& p = candidates[i];
      const auto& q = candidates[j];
      const Rational det = p.a * q.b - p.b * q.a;
      if (det.is_zero()) continue;
      const Rational x = (p.c * q.b - p.b * q.c) / det;
      const Rational y = (p.a * q.c - p.c * q.a) / det;
      if (!feasible(x, y)) continue;
      const Rational obj = y - x;
      if (!best || obj < best_obj) {
        best = std::make_pair(x, y);
        best_obj = obj;
      }
    }
  }
  return best;
}

}  // namespace

SpanResult lp_span_reduced(const Instance& inst, std::size_t enumeration_cap) {
  const NormalizedInstance norm = normalize_bounds_and_order(inst);
  const CandidateIntervals cells = candidate_intervals(norm);
  const auto members = enumerate_family(inst.family, enumeration_cap);

  SpanResult out;
  for (const auto& dv : cells.delta) {
    for (const auto& sv : cells.sum) {
      const SpecLUInstance sub = build_subproblem(norm, {dv, sv});
      std::vector<CellLine> lines;
      bool cell_infeasible = false;
      bool all_equal_mass = true;
      for (const auto& f : members) {
        const Rational head = sub.mu_of(set_diff(sub.input_solution, f));
        const Rational tail = sub.mu_of(set_diff(f, sub.input_solution));
        if (!(head == tail)) all_equal_mass = false;
        for (int j = 0; j < sub.k(); ++j) {
          const Rational g = set_total(sub.input_solution, sub.shifted_costs[j]) -
                             set_total(f, sub.shifted_costs[j]);
          if (head.is_zero() && tail.is_zero()) {
            if (g.sign() > 0) cell_infeasible = true;  // constant positive gap
            continue;
          }
          lines.push_back({-tail, head, g});
        }
      }
      if (cell_infeasible) continue;
      bool boxed = false;
      if (sub.l_out.is_finite()) { lines.push_back({1, 0, sub.l_out.finite()}); boxed = true; }
      if (sub.u_out.is_finite()) { lines.push_back({-1, 0, -sub.u_out.finite()}); boxed = true; }
      if (sub.l_in.is_finite()) { lines.push_back({0, 1, sub.l_in.finite()}); boxed = true; }
      if (sub.u_in.is_finite()) { lines.push_back({0, -1, -sub.u_in.finite()}); boxed = true; }
      const bool gauge = !boxed && all_equal_mass;
      const auto opt = cell_optimum(lines, gauge);
      if (!opt) continue;
      const Rational span = opt->second - opt->first;
      if (out.status == SpanResult::Status::Infeasible || span < out.span) {
        out.status = SpanResult::Status::Optimal;
        out.span = span;
        out.parameters = std::make_pair(span, opt->first);  // (d, D)
        DeviationVector lifted = lift_solution(sub, inst, span, opt->first);
        lifted.special_form = std::make_pair(span, opt->first);
        out.deviation = std::move(lifted);
      }
    }
  }
  return out;
}

VerifyReport cross_check(const Instance& inst, const PipelineOutcome& outcome,
                         std::size_t enumeration_cap) {
  VerifyReport report;
  std::ostringstream detail;
  report.reduced = lp_span_reduced(inst, enumeration_cap);

  const bool solver_optimal = outcome.status == SolveOutcome::Status::Optimal;
  const bool reduced_optimal = report.reduced.status == SpanResult::Status::Optimal;
  if (solver_optimal != reduced_optimal) {
    report.match = false;
    detail << "status mismatch: solver "
           << (solver_optimal ? "optimal" : "infeasible") << ", reduced LP "
           << (reduced_optimal ? "optimal" : "infeasible") << "\n";
  } else if (solver_optimal && !(outcome.span == report.reduced.span)) {
    report.match = false;
    detail << "span mismatch: solver " << outcome.span << ", reduced LP "
           << report.reduced.span << "\n";
  }

  if (inst.n() <= 6) {
    report.full = lp_span_full(inst, 6, enumeration_cap);
    const bool full_optimal = report.full->status == SpanResult::Status::Optimal;
    if (full_optimal != reduced_optimal) {
      report.match = false;
      detail << "full/reduced LP status disagreement\n";
    } else if (full_optimal && !(report.full->span == report.reduced.span)) {
      report.match = false;
      detail << "full/reduced LP span disagreement: " << report.full->span << " vs "
             << report.reduced.span << "\n";
    }
  }

  if (solver_optimal) {
    const Oracle oracle = make_solver_oracle(inst.family, inst.input_solution, inst.weights,
                                             enumeration_cap);
    if (!is_feasible_deviation(inst, outcome.deviation, oracle)) {
      report.match = false;
      detail << "solver deviation vector is not feasible\n";
    }
    const Rational span = weighted_span(outcome.deviation, inst.weights);
    if (!(span == outcome.span)) {
      report.match = false;
      detail << "solver span " << outcome.span << " differs from its vector's span " << span
             << "\n";
    }
  }
  if (report.match) detail << "ok\n";
  report.detail = detail.str();
  return report;
}

}  // namespace invspan

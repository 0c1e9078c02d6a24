#include "invspan/feasibility.hpp"

namespace invspan {

MValues compute_m_values(const SpecLUInstance& sub, std::size_t enumeration_cap) {
  const auto members = enumerate_family(sub.family, enumeration_cap);
  const ElemSet& fstar = sub.input_solution;
  MValues m{ExtRational::pos_inf(), ExtRational::neg_inf(), ExtRational::pos_inf(),
            ExtRational::neg_inf(), 0, 0, 0, 0};

  for (const auto& f : members) {
    const Rational mu_out = sub.mu_of(set_diff(f, fstar));      // mu(F \ F*)
    const Rational mu_in = sub.mu_of(set_diff(fstar, f));       // mu(F* \ F)
    for (int j = 0; j < sub.k(); ++j) {
      const Rational gap =
          set_total(f, sub.shifted_costs[j]) - set_total(fstar, sub.shifted_costs[j]);
      if (mu_out.sign() > 0) {
        if (sub.u_in.is_finite()) {
          const ExtRational v((gap + sub.u_in.finite() * mu_in) / mu_out);
          m.m1 = std::min(m.m1, v);
        }
        m.m3 = std::min(m.m3, ExtRational(gap / mu_out));
      }
      if (mu_in.sign() > 0) {
        if (sub.l_out.is_finite()) {
          const ExtRational v((-gap + sub.l_out.finite() * mu_out) / mu_in);
          m.m2 = std::max(m.m2, v);
        }
        m.m4 = std::max(m.m4, ExtRational(-gap / mu_in));
      }
    }
  }
  if (m.m1.is_finite()) m.m1p = m.m1.finite();
  if (m.m2.is_finite()) m.m2p = m.m2.finite();
  if (m.m3.is_finite()) m.m3p = m.m3.finite();
  if (m.m4.is_finite()) m.m4p = m.m4.finite();
  return m;
}

namespace {

bool candidate_feasible(const SpecLUInstance& sub, const Oracle& oracle,
                        const DeviationVector& p) {
  for (int j = 0; j < sub.k(); ++j) {
    std::vector<Rational> modified(p.values.size());
    for (std::size_t s = 0; s < p.values.size(); ++s)
      modified[s] = sub.shifted_costs[j][s] - p.values[s];
    if (oracle(modified).cost < set_total(sub.input_solution, modified)) return false;
  }
  return true;
}

}  // namespace

FeasibilityVerdict feasibility_witness(const SpecLUInstance& sub, const Oracle& oracle,
                                       std::size_t enumeration_cap) {
  FeasibilityVerdict verdict;
  const bool u_in_finite = sub.u_in.is_finite();
  const bool l_out_finite = sub.l_out.is_finite();

  if (u_in_finite && l_out_finite) {
    verdict.delta = sub.u_in.finite() - sub.l_out.finite();
    verdict.Delta = sub.l_out.finite();
  } else {
    const MValues m = compute_m_values(sub, enumeration_cap);
    if (u_in_finite) {  // l_out = -inf
      verdict.delta = sub.u_in.finite() - m.m1p;
      verdict.Delta = m.m1p;
    } else if (l_out_finite) {  // u_in = +inf
      verdict.delta = m.m2p - sub.l_out.finite();
      verdict.Delta = sub.l_out.finite();
    } else {
      verdict.delta = m.m4p - m.m3p;
      verdict.Delta = m.m3p;
    }
  }

  DeviationVector p = sub.deviation(verdict.delta, verdict.Delta);
  verdict.feasible = candidate_feasible(sub, oracle, p);

  if (!verdict.feasible && !u_in_finite && !l_out_finite) {
    // The literal two-sided candidate misses instances where a bad set meets
    // both sides of the input solution and m4 < 0 < m3. Both parameters are
    // unbounded on the helpful side here, so pin Delta and regrow the other
    // parameter from the same enumeration; this candidate satisfies every
    // member whose scaled difference is non-degenerate, making the verdict a
    // true characterization again.
    const MValues m = compute_m_values(sub, enumeration_cap);
    Rational Delta = m.m3p;
    if (sub.u_out.is_finite() && sub.u_out.finite() < Delta) Delta = sub.u_out.finite();
    Rational sigma = sub.l_in.is_finite() ? sub.l_in.finite() : Rational(0);
    const auto members = enumerate_family(sub.family, enumeration_cap);
    for (const auto& f : members) {
      const Rational head = sub.mu_of(set_diff(sub.input_solution, f));
      if (head.sign() <= 0) continue;
      const Rational tail = sub.mu_of(set_diff(f, sub.input_solution));
      for (int j = 0; j < sub.k(); ++j) {
        const Rational gap = set_total(sub.input_solution, sub.shifted_costs[j]) -
                             set_total(f, sub.shifted_costs[j]);
        const Rational needed = (gap + Delta * tail) / head;
        if (needed > sigma) sigma = needed;
      }
    }
    verdict.delta = sigma - Delta;
    verdict.Delta = Delta;
    p = sub.deviation(verdict.delta, verdict.Delta);
    verdict.feasible = candidate_feasible(sub, oracle, p);
  }

  if (verdict.feasible) verdict.witness = std::move(p);
  return verdict;
}

}  // namespace invspan

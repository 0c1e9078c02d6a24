#include "invspan/minmax.hpp"

namespace invspan {

MinMaxCertificate certificate(const Instance& inst, std::size_t enumeration_cap) {
  if (!inst.unconstrained()) throw Error("certificate requires unconstrained bounds");
  const auto members = enumerate_family(inst.family, enumeration_cap);
  const ElemSet& fstar = inst.input_solution;
  const ElemSet empty;
  auto mass = [&](const ElemSet& f) { return mu(f, empty, inst.weights); };
  const Rational mass_star = mass(fstar);

  MinMaxCertificate cert;
  std::vector<const ElemSet*> small, large;
  for (const auto& f : members) {
    const Rational mf = mass(f);
    if (mf < mass_star) small.push_back(&f);
    if (mf > mass_star) large.push_back(&f);
    if (mf == mass_star && f != fstar) {
      const Rational den = mass(set_diff(fstar, f));
      for (int j = 0; j < inst.k(); ++j) {
        const Rational v =
            (set_total(fstar, inst.costs[j]) - set_total(f, inst.costs[j])) / den;
        if (ExtRational(v) > cert.omega1) {
          cert.omega1 = ExtRational(v);
          cert.omega1_witness = {j, f};
        }
      }
    }
  }

  for (const ElemSet* fs : small) {
    const Rational ds = mass_star - mass(*fs);  // > 0
    const Rational hs = mass(set_diff(fstar, *fs));
    for (const ElemSet* fl : large) {
      const Rational dl = mass_star - mass(*fl);  // < 0
      const Rational hl = mass(set_diff(fstar, *fl));
      const Rational den = hs / ds - hl / dl;
      for (int j1 = 0; j1 < inst.k(); ++j1) {
        const Rational a =
            (set_total(fstar, inst.costs[j1]) - set_total(*fs, inst.costs[j1])) / ds;
        for (int j2 = 0; j2 < inst.k(); ++j2) {
          const Rational b =
              (set_total(fstar, inst.costs[j2]) - set_total(*fl, inst.costs[j2])) / dl;
          const Rational v = (a - b) / den;
          if (ExtRational(v) > cert.omega2) {
            cert.omega2 = ExtRational(v);
            cert.omega2_witness = {j1, j2, *fs, *fl};
          }
        }
      }
    }
  }

  cert.value = 0;
  if (cert.omega1.is_finite() && cert.omega1.finite() > cert.value) cert.value = cert.omega1.finite();
  if (cert.omega2.is_finite() && cert.omega2.finite() > cert.value) cert.value = cert.omega2.finite();
  cert.d = cert.value;

  // Witness shift: bind D against the small
  // sets when any exist, else against the large sets, else 0.
  if (!small.empty()) {
    std::optional<Rational> best;
    for (const ElemSet* fs : small) {
      const Rational den = mass_star - mass(*fs);
      for (int j = 0; j < inst.k(); ++j) {
        const Rational v = (set_total(fstar, inst.costs[j]) - set_total(*fs, inst.costs[j]) -
                            cert.d * mass(set_diff(fstar, *fs))) /
                           den;
        if (!best || v > *best) best = v;
      }
    }
    cert.D = *best;
  } else if (!large.empty()) {
    std::optional<Rational> best;
    for (const ElemSet* fl : large) {
      const Rational den = mass_star - mass(*fl);
      for (int j = 0; j < inst.k(); ++j) {
        const Rational v = (set_total(fstar, inst.costs[j]) - set_total(*fl, inst.costs[j]) -
                            cert.d * mass(set_diff(fstar, *fl))) /
                           den;
        if (!best || v < *best) best = v;
      }
    }
    cert.D = *best;
  } else {
    cert.D = 0;
  }

  cert.witness = build_deviation(cert.d, cert.D, fstar, inst.weights, inst.lower, inst.upper);
  const Oracle oracle =
      make_solver_oracle(inst.family, fstar, inst.weights, enumeration_cap);
  if (!is_feasible_deviation(inst, cert.witness, oracle))
    throw InternalError("certificate witness is not feasible");
  return cert;
}

}  // namespace invspan

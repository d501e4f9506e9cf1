#include "schemelab/theorems.hpp"

#include <algorithm>

namespace schemelab {

const char* check_id_name(CheckId id) {
  switch (id) {
    case CheckId::Thm1: return "THM1";
    case CheckId::ConjBi: return "CONJ_BI";
    case CheckId::Thm2: return "THM2";
    case CheckId::Lem21i: return "LEM21i";
    case CheckId::Lem21ii: return "LEM21ii";
    case CheckId::Lem22: return "LEM22";
    case CheckId::Cor: return "COR";
    case CheckId::JohnsonCstar: return "JOHNSON_CSTAR";
    case CheckId::PstructMono: return "PSTRUCT_MONO";
  }
  return "UNKNOWN";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kNotApplicable: return "not_applicable";
  }
  return "unknown";
}

int unimodality_violation(const std::vector<long long>& v) {
  bool descending = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) descending = true;
    else if (v[i] > v[i - 1] && descending) return int(i);
  }
  return -1;
}

namespace {

struct SigmaProfile {
  std::vector<std::uint8_t> profile;  // e-profile in the sigma labels
  int t = 0;                          // dual endpoint under sigma
  int hits = 0;
};

SigmaProfile relabel(const TModuleSummary& m, const std::vector<int>& sigma) {
  SigmaProfile sp;
  sp.profile.resize(sigma.size());
  sp.t = -1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    sp.profile[i] = m.e_profile[sigma[i]];
    if (sp.profile[i]) {
      ++sp.hits;
      if (sp.t < 0) sp.t = int(i);
    }
  }
  return sp;
}

CheckReport base_report(CheckId id, std::string label, std::vector<int> ordering) {
  CheckReport r;
  r.id = id;
  r.scheme_label = std::move(label);
  r.ordering = std::move(ordering);
  return r;
}

}  // namespace

CheckReport check_valency_unimodality(const PStructure& p, const std::string& scheme_label) {
  CheckReport r = base_report(CheckId::Thm1, scheme_label, p.ordering);
  const auto& k = p.valencies;
  const int D = int(k.size()) - 1;
  r.witness["valencies"] = k;
  for (int i = 0; 2 * i < D; ++i) {
    if (k[i] > k[i + 1] || k[i] > k[D - i]) {
      r.verdict = Verdict::kFails;
      r.witness["index"] = i;
      r.witness["k_i"] = k[i];
      r.witness["k_i_plus_1"] = k[i + 1];
      r.witness["k_D_minus_i"] = k[D - i];
      return r;
    }
  }
  const int viol = unimodality_violation(k);
  if (viol >= 0) {
    r.verdict = Verdict::kFails;
    r.witness["index"] = viol;
    r.notes = "valency sequence is not unimodal";
    return r;
  }
  r.verdict = Verdict::kHolds;
  return r;
}

CheckReport check_pstructure_monotonicity(const PStructure& p, const std::string& scheme_label) {
  CheckReport r = base_report(CheckId::PstructMono, scheme_label, p.ordering);
  const int D = int(p.valencies.size()) - 1;
  r.witness["b"] = std::vector<long long>(p.b.begin(), p.b.end() - 1);
  r.witness["c"] = std::vector<long long>(p.c.begin() + 1, p.c.end());
  for (int i = 1; i < D; ++i) {
    if (p.b[i - 1] < p.b[i]) {
      r.verdict = Verdict::kFails;
      r.witness["violation"] = "b_" + std::to_string(i - 1) + " < b_" + std::to_string(i);
      return r;
    }
    if (p.c[i] > p.c[i + 1]) {
      r.verdict = Verdict::kFails;
      r.witness["violation"] = "c_" + std::to_string(i) + " > c_" + std::to_string(i + 1);
      return r;
    }
    // log-concavity follows from the two monotonicities
    if (p.valencies[i] * p.valencies[i] < p.valencies[i - 1] * p.valencies[i + 1]) {
      r.verdict = Verdict::kFails;
      r.witness["violation"] = "k_" + std::to_string(i) + "^2 < k_" + std::to_string(i - 1) +
                               " k_" + std::to_string(i + 1);
      return r;
    }
  }
  r.verdict = Verdict::kHolds;
  return r;
}

CheckReport check_multiplicity_conjecture(const QStructure& q, const std::string& scheme_label) {
  CheckReport r = base_report(CheckId::ConjBi, scheme_label, q.ordering);
  r.witness["multiplicities"] = q.multiplicities;
  const int viol = unimodality_violation(q.multiplicities);
  if (viol >= 0) {
    r.verdict = Verdict::kFails;
    r.witness["index"] = viol;
    r.notes = "conjectured unimodality fails on this instance";
    return r;
  }
  r.verdict = Verdict::kHolds;
  r.notes = "conjecture instance check; never assumed elsewhere";
  return r;
}

CheckReport check_main_theorem(const Scheme& s, const EigenData& e, const QStructure& q,
                               const DualThinReport& dt) {
  CheckReport r = base_report(CheckId::Thm2, s.label(), q.ordering);
  const int D = e.D;
  if (!dt.dual_thin) {
    r.verdict = Verdict::kNotApplicable;
    r.notes = "scheme is not dual-thin";
    if (dt.witness) {
      r.witness["base_point"] = dt.witness->base_point;
      r.witness["module"] = dt.witness->module_index;
      r.witness["eigen_index"] = dt.witness->eigen_index;
      r.witness["rank"] = dt.witness->rank;
    }
    return r;
  }

  const auto& m = q.multiplicities;
  r.witness["multiplicities"] = m;
  for (int i = 0; 2 * i < D; ++i) {
    if (m[i] > m[i + 1] || m[i] > m[D - i]) {
      r.verdict = Verdict::kFails;
      r.critical = true;
      r.witness["index"] = i;
      r.witness["m_i"] = m[i];
      r.witness["m_i_plus_1"] = m[i + 1];
      r.witness["m_D_minus_i"] = m[D - i];
      r.notes = "dual-thin scheme violating the multiplicity inequalities";
      return r;
    }
  }

  // per-module implication chain from the proof:
  // E_i W != 0  =>  E_{i+1} W != 0 and E_{D-i} W != 0 for i < D/2
  for (std::size_t di = 0; di < dt.decompositions.size(); ++di) {
    const Decomposition& dec = dt.decompositions[di];
    for (std::size_t j = 0; j < dec.modules.size(); ++j) {
      const SigmaProfile sp = relabel(dec.modules[j], q.ordering);
      for (int i = 0; 2 * i < D; ++i) {
        if (sp.profile[i] && (!sp.profile[i + 1] || !sp.profile[D - i])) {
          r.verdict = Verdict::kFails;
          r.critical = true;
          r.witness["base_point"] = dec.base_point;
          r.witness["module"] = int(j);
          r.witness["index"] = i;
          r.notes = "per-module implication E_iW != 0 => E_{i+1}W, E_{D-i}W != 0 fails";
          return r;
        }
      }
    }
    // counting identity: m_i = #{j : E_i W_j != 0} on a dual-thin instance
    for (int i = 0; i <= D; ++i) {
      long long count = 0;
      for (const TModuleSummary& mod : dec.modules) count += mod.e_profile[i] ? 1 : 0;
      if (count != e.multiplicities[i]) {
        r.verdict = Verdict::kFails;
        r.critical = true;
        r.witness["base_point"] = dec.base_point;
        r.witness["eigen_index"] = i;
        r.witness["module_count"] = count;
        r.witness["multiplicity"] = e.multiplicities[i];
        r.notes = "counting identity m_i = |{j : E_i W_j != 0}| fails";
        return r;
      }
    }
  }

  r.verdict = Verdict::kHolds;
  return r;
}

CheckReport check_main_theorem(const Scheme& s, const EigenData& e, const QStructure& q) {
  return check_main_theorem(s, e, q, is_dual_thin(s, e));
}

std::pair<CheckReport, CheckReport> check_lemma_interval(const Decomposition& dec,
                                                         const QStructure& q,
                                                         const std::string& scheme_label) {
  CheckReport part_i = base_report(CheckId::Lem21i, scheme_label, q.ordering);
  CheckReport part_ii = base_report(CheckId::Lem21ii, scheme_label, q.ordering);
  part_i.verdict = Verdict::kHolds;
  part_ii.verdict = Verdict::kHolds;
  const int D = int(q.ordering.size()) - 1;

  for (std::size_t j = 0; j < dec.modules.size(); ++j) {
    const TModuleSummary& m = dec.modules[j];
    const SigmaProfile sp = relabel(m, q.ordering);
    const int dstar = sp.hits - 1;

    bool interval_ok = sp.t >= 0 && sp.t + dstar <= D;
    for (int i = 0; i <= D && interval_ok; ++i) {
      const bool inside = i >= sp.t && i <= sp.t + dstar;
      if (bool(sp.profile[i]) != inside) interval_ok = false;
    }
    if (!interval_ok && part_i.verdict == Verdict::kHolds) {
      part_i.verdict = Verdict::kFails;
      part_i.critical = true;
      part_i.witness["base_point"] = dec.base_point;
      part_i.witness["module"] = int(j);
      part_i.witness["profile"] = sp.profile;
      part_i.witness["t"] = sp.t;
      part_i.witness["dual_diameter"] = dstar;
      part_i.notes = "E_iW support is not the interval [t, t+d*]";
    }

    // part (ii) plus the thin/dual-thin dimension biconditionals
    const bool dims_ok = (m.thin == (m.dim == m.diameter + 1)) &&
                         (m.dual_thin == (m.dim == m.dual_diameter + 1));
    const bool implication_ok = !m.dual_thin || (m.thin && m.diameter == m.dual_diameter);
    if ((!dims_ok || !implication_ok) && part_ii.verdict == Verdict::kHolds) {
      part_ii.verdict = Verdict::kFails;
      part_ii.critical = !implication_ok;
      part_ii.witness["base_point"] = dec.base_point;
      part_ii.witness["module"] = int(j);
      part_ii.witness["dim"] = m.dim;
      part_ii.witness["d"] = m.diameter;
      part_ii.witness["d_star"] = m.dual_diameter;
      part_ii.witness["thin"] = m.thin;
      part_ii.witness["dual_thin"] = m.dual_thin;
      part_ii.notes = implication_ok ? "thin/dual-thin dimension biconditional fails"
                                     : "dual-thin module that is not thin with d = d*";
    }
  }
  return {part_i, part_ii};
}

CheckReport check_lemma_2t_plus_d(const Decomposition& dec, const QStructure& q,
                                  const std::string& scheme_label) {
  CheckReport r = base_report(CheckId::Lem22, scheme_label, q.ordering);
  r.verdict = Verdict::kHolds;
  const int D = int(q.ordering.size()) - 1;
  for (std::size_t j = 0; j < dec.modules.size(); ++j) {
    const TModuleSummary& m = dec.modules[j];
    const SigmaProfile sp = relabel(m, q.ordering);
    if (2 * sp.t + m.diameter < D) {
      r.verdict = Verdict::kFails;
      r.critical = true;
      r.witness["base_point"] = dec.base_point;
      r.witness["module"] = int(j);
      r.witness["t"] = sp.t;
      r.witness["d"] = m.diameter;
      r.notes = "2t + d < D";
      return r;
    }
  }
  return r;
}

CheckReport check_bipartite_corollary(const Scheme& s, const QStructure& q,
                                      const std::vector<PStructure>& ps) {
  CheckReport r = base_report(CheckId::Cor, s.label(), q.ordering);
  const PStructure* bip = nullptr;
  for (const PStructure& p : ps)
    if (std::all_of(p.a.begin(), p.a.end(), [](long long a) { return a == 0; })) {
      bip = &p;
      break;
    }
  if (!bip) {
    r.verdict = Verdict::kNotApplicable;
    r.notes = ps.empty() ? "not P-polynomial" : "not bipartite (every P-ordering has some a_i != 0)";
    return r;
  }

  const auto& m = q.multiplicities;
  const int D = int(m.size()) - 1;
  r.witness["multiplicities"] = m;
  for (int i = 0; 2 * i < D; ++i) {
    if (m[i] != m[D - i]) {
      r.verdict = Verdict::kFails;
      r.critical = true;
      r.witness["index"] = i;
      r.notes = "bipartite P&Q scheme with m_i != m_{D-i}";
      return r;
    }
  }
  const int viol = unimodality_violation(m);
  if (viol >= 0) {
    r.verdict = Verdict::kFails;
    r.critical = true;
    r.witness["index"] = viol;
    r.notes = "bipartite P&Q scheme with non-unimodal multiplicities";
    return r;
  }
  r.verdict = Verdict::kHolds;
  return r;
}

std::vector<CheckReport> check_bipartite_corollary(const Scheme& s, const EigenData& e) {
  const auto ps = p_polynomial_orderings(s);
  const auto qs = q_polynomial_orderings(e);
  std::vector<CheckReport> out;
  if (qs.empty()) {
    CheckReport r = base_report(CheckId::Cor, s.label(), {});
    r.verdict = Verdict::kNotApplicable;
    r.notes = "not Q-polynomial";
    out.push_back(std::move(r));
    return out;
  }
  for (const QStructure& q : qs) out.push_back(check_bipartite_corollary(s, q, ps));
  return out;
}

CheckReport johnson_dual_c_inequality(int k) {
  if (k < 2) fail(Err::InvalidParameters, "johnson_dual_c_inequality needs k >= 2");
  const SchemeParameters sp = johnson_parameters(k * k, k);
  CheckReport r = base_report(CheckId::JohnsonCstar, sp.label, {});
  r.ordering.resize(k + 1);
  for (int i = 0; i <= k; ++i) r.ordering[i] = i;

  const auto qs = natural_q_structure(sp);
  if (!qs) {
    r.verdict = Verdict::kFails;
    r.critical = true;
    r.notes = "natural ordering of J(k^2,k) failed the exact Q-polynomial test";
    return r;
  }
  const Rational& c_km1 = qs->dual_c[k - 1];
  const Rational& c_k = qs->dual_c[k];
  r.witness["k"] = k;
  r.witness["v"] = k * k;
  r.witness["n"] = sp.n.str();
  r.witness["c_star_k_minus_1"] = rational_string(c_km1);
  r.witness["c_star_k"] = rational_string(c_k);
  const int cmp = c_km1 > c_k ? 1 : (c_km1 < c_k ? -1 : 0);
  r.witness["comparison"] = cmp > 0 ? "greater" : (cmp < 0 ? "less" : "equal");

  if (k > 3) {
    r.verdict = cmp > 0 ? Verdict::kHolds : Verdict::kFails;
    r.critical = (r.verdict == Verdict::kFails);
    if (r.critical) r.notes = "c*_{k-1} <= c*_k contradicts the k > 3 claim";
  } else {
    r.verdict = Verdict::kNotApplicable;
    r.notes = std::string("comparison recorded; no claim is made for k <= 3 (c*_{k-1} ") +
              (cmp > 0 ? ">" : (cmp < 0 ? "<" : "=")) + " c*_k)";
  }
  return r;
}

SuiteResult run_suite(const std::vector<Scheme>& schemes, const SuiteConfig& config) {
  SuiteResult result;
  for (const Scheme& s : schemes) {
    try {
      const EigenData e = eigensystem(s, config.spectral);
      const KreinTensor kr = krein_parameters(e, config.spectral);
      const auto qs = q_polynomial_orderings(e, kr, config.spectral);
      const auto ps = p_polynomial_orderings(s);

      auto not_applicable = [&](CheckId id, const std::string& why) {
        CheckReport r = base_report(id, s.label(), {});
        r.verdict = Verdict::kNotApplicable;
        r.notes = why;
        result.reports.push_back(std::move(r));
      };

      if (ps.empty()) not_applicable(CheckId::Thm1, "not P-polynomial");
      else
        for (const PStructure& p : ps)
          result.reports.push_back(check_valency_unimodality(p, s.label()));

      if (qs.empty()) {
        not_applicable(CheckId::ConjBi, "not Q-polynomial");
        not_applicable(CheckId::Thm2, "not Q-polynomial");
        not_applicable(CheckId::Lem21i, "not Q-polynomial");
        not_applicable(CheckId::Lem21ii, "not Q-polynomial");
        not_applicable(CheckId::Lem22, "not Q-polynomial");
        not_applicable(CheckId::Cor, "not Q-polynomial");
      } else {
        const DualThinReport dt = is_dual_thin(s, e, config.policy, config.tmodule);
        for (const QStructure& q : qs)
          result.reports.push_back(check_multiplicity_conjecture(q, s.label()));
        for (const QStructure& q : qs)
          result.reports.push_back(check_main_theorem(s, e, q, dt));

        // lemma checks aggregate over all examined base points
        for (const QStructure& q : qs) {
          CheckReport agg_i = base_report(CheckId::Lem21i, s.label(), q.ordering);
          CheckReport agg_ii = base_report(CheckId::Lem21ii, s.label(), q.ordering);
          CheckReport agg_22 = base_report(CheckId::Lem22, s.label(), q.ordering);
          agg_i.verdict = agg_ii.verdict = agg_22.verdict = Verdict::kHolds;
          for (const Decomposition& dec : dt.decompositions) {
            auto [pi, pii] = check_lemma_interval(dec, q, s.label());
            if (pi.verdict == Verdict::kFails && agg_i.verdict == Verdict::kHolds) agg_i = pi;
            if (pii.verdict == Verdict::kFails && agg_ii.verdict == Verdict::kHolds) agg_ii = pii;
            CheckReport p22 = check_lemma_2t_plus_d(dec, q, s.label());
            if (p22.verdict == Verdict::kFails && agg_22.verdict == Verdict::kHolds) agg_22 = p22;
          }
          result.reports.push_back(std::move(agg_i));
          result.reports.push_back(std::move(agg_ii));
          result.reports.push_back(std::move(agg_22));
        }
        for (const QStructure& q : qs)
          result.reports.push_back(check_bipartite_corollary(s, q, ps));
      }

      if (ps.empty()) not_applicable(CheckId::PstructMono, "not P-polynomial");
      else
        for (const PStructure& p : ps)
          result.reports.push_back(check_pstructure_monotonicity(p, s.label()));
    } catch (const SchemeError& err) {
      result.errors.push_back({s.label(), err.code(), err.what()});
    } catch (const std::exception& err) {
      result.errors.push_back({s.label(), Err::ResidualTooLarge, err.what()});
    }
  }

  // deterministic (scheme, check_id, ordering) order; schemes keep input order
  auto rank_of = [&](const CheckReport& r) {
    for (std::size_t i = 0; i < schemes.size(); ++i)
      if (schemes[i].label() == r.scheme_label) return i;
    return schemes.size();
  };
  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [&](const CheckReport& a, const CheckReport& b) {
                     const auto ra = rank_of(a), rb = rank_of(b);
                     if (ra != rb) return ra < rb;
                     if (a.id != b.id) return int(a.id) < int(b.id);
                     return a.ordering < b.ordering;
                   });
  return result;
}

}  // namespace schemelab

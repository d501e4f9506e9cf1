#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "schemelab/parameters.hpp"
#include "schemelab/scheme.hpp"
#include "schemelab/spectra.hpp"
#include "schemelab/terwilliger.hpp"

namespace schemelab {

using Json = nlohmann::ordered_json;

enum class CheckId {
  Thm1,          // valency unimodality of a P-polynomial ordering
  ConjBi,        // multiplicity unimodality (checked, never assumed)
  Thm2,          // dual-thin => m_i <= m_{i+1} and m_i <= m_{D-i} for i < D/2
  Lem21i,        // E_i W != 0 exactly on [t, t+d*]
  Lem21ii,       // dual-thin => thin and d = d*
  Lem22,         // 2t + d >= D
  Cor,           // bipartite P&Q => multiplicities symmetric and unimodal
  JohnsonCstar,  // c*_{k-1} > c*_k in J(k^2,k) for k > 3
  PstructMono,   // b_{i-1} >= b_i, c_i <= c_{i+1}, log-concave valencies
};

const char* check_id_name(CheckId id);

enum class Verdict { kHolds, kFails, kNotApplicable };
const char* verdict_name(Verdict v);

struct CheckReport {
  CheckId id{};
  std::string scheme_label;
  std::vector<int> ordering;  // empty when no ordering applies
  Verdict verdict = Verdict::kNotApplicable;
  bool critical = false;  // a proven claim is contradicted, not just a hypothesis unmet
  Json witness = Json::object();
  std::string notes;
};

// -1 when the sequence is unimodal with ties allowed, else the first index
// that rises again after a descent.
int unimodality_violation(const std::vector<long long>& v);

CheckReport check_valency_unimodality(const PStructure& p, const std::string& scheme_label);
CheckReport check_pstructure_monotonicity(const PStructure& p, const std::string& scheme_label);
CheckReport check_multiplicity_conjecture(const QStructure& q, const std::string& scheme_label);

// Hypothesis evaluated from the dual-thin report; inequality, per-module
// implication chain, and the proof's counting identity are all asserted.
CheckReport check_main_theorem(const Scheme& s, const EigenData& e, const QStructure& q,
                               const DualThinReport& dt);
CheckReport check_main_theorem(const Scheme& s, const EigenData& e, const QStructure& q);

// Lemma 2.1 parts (i) and (ii) for one decomposition under one Q-ordering.
std::pair<CheckReport, CheckReport> check_lemma_interval(const Decomposition& dec,
                                                         const QStructure& q,
                                                         const std::string& scheme_label);
CheckReport check_lemma_2t_plus_d(const Decomposition& dec, const QStructure& q,
                                  const std::string& scheme_label);

CheckReport check_bipartite_corollary(const Scheme& s, const QStructure& q,
                                      const std::vector<PStructure>& ps);
std::vector<CheckReport> check_bipartite_corollary(const Scheme& s, const EigenData& e);

CheckReport johnson_dual_c_inequality(int k);

struct SuiteConfig {
  BasePointPolicy policy = BasePointPolicy::kAll;
  SpectralOptions spectral;
  TOptions tmodule;
};

struct SuiteError {
  std::string scheme_label;
  Err code{};
  std::string message;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::vector<SuiteError> errors;
};

// Every applicable check on every scheme and every detected P-/Q-ordering,
// in deterministic (scheme, check_id, ordering) order. Per-scheme errors are
// collected, not fatal.
SuiteResult run_suite(const std::vector<Scheme>& schemes, const SuiteConfig& config = {});

}  // namespace schemelab

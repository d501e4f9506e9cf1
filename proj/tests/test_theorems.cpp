#include <doctest.h>

#include <deque>

#include "schemelab/report.hpp"
#include "schemelab/theorems.hpp"

using namespace schemelab;

namespace {

const QStructure& natural_q(const std::vector<QStructure>& qs) {
  for (const auto& q : qs) {
    bool identity = true;
    for (std::size_t i = 0; i < q.ordering.size(); ++i)
      if (q.ordering[i] != int(i)) identity = false;
    if (identity) return q;
  }
  REQUIRE(false);
  return qs.front();
}

// direct product of K_3 with itself, classes unmerged: a valid 3-class scheme
// that is neither P- nor Q-polynomial (the valency-2 relations are disconnected
// triangle unions, and the dual has the same product shape)
Scheme product_scheme_3x3() {
  const int n = 9;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int a = (x / 3 != y / 3), b = (x % 3 != y % 3);
      t[x][y] = a && b ? 3 : (b ? 2 : (a ? 1 : 0));
    }
  return Scheme::from_class_matrix(t, "K3xK3");
}

// Doob graph D(1,1): Cartesian product of the Shrikhande graph with K_4.
// Parameter twin of hamming(3,4), but its Terwilliger modules are not all thin.
Scheme doob_1_1() {
  const int n = 64;
  auto sadj = [](int x, int y) {
    const int dx = ((x / 4 - y / 4) % 4 + 4) % 4, dy = ((x % 4 - y % 4) % 4 + 4) % 4;
    return ((dx == 1 || dx == 3) && dy == 0) || (dx == 0 && (dy == 1 || dy == 3)) ||
           (dx == 1 && dy == 1) || (dx == 3 && dy == 3);
  };
  auto adj = [&](int v, int w) {
    const int u = v / 4, a = v % 4, up = w / 4, ap = w % 4;
    return (u == up && a != ap) || (a == ap && sadj(u, up));
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
  for (int src = 0; src < n; ++src) {
    t[src][src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < n; ++w)
        if (t[src][w] < 0 && adj(v, w)) {
          t[src][w] = t[src][v] + 1;
          queue.push_back(w);
        }
    }
  }
  return Scheme::from_class_matrix(t, "doob(1,1)");
}

}  // namespace

TEST_CASE("a non-dual-thin Q-polynomial scheme gates THM2 as not_applicable") {
  Scheme doob = doob_1_1();
  EigenData e = eigensystem(doob);
  CHECK(e.multiplicities == std::vector<long long>{1, 9, 27, 27});  // same as hamming(3,4)

  auto qs = q_polynomial_orderings(e);
  REQUIRE(qs.size() == 1);

  // vertex-transitive, so one base point certifies the failure
  DualThinReport dt = is_dual_thin(doob, e, BasePointPolicy::kSampleRepresentative);
  CHECK_FALSE(dt.dual_thin);
  REQUIRE(dt.witness.has_value());
  CHECK(dt.witness->rank >= 2);

  CheckReport thm2 = check_main_theorem(doob, e, qs[0], dt);
  CHECK(thm2.verdict == Verdict::kNotApplicable);
  CHECK(thm2.notes.find("dual-thin") != std::string::npos);

  // the interval and 2t+d lemmas need no thinness hypothesis and still hold,
  // and non-dual-thin modules exceed the d*+1 dimension bound strictly
  const Decomposition& dec = dt.decompositions[0];
  auto [pi, pii] = check_lemma_interval(dec, qs[0], doob.label());
  CHECK(pi.verdict == Verdict::kHolds);
  CHECK(pii.verdict == Verdict::kHolds);
  CHECK(check_lemma_2t_plus_d(dec, qs[0], doob.label()).verdict == Verdict::kHolds);
  int non_dual_thin = 0;
  for (const TModuleSummary& m : dec.modules)
    if (!m.dual_thin) {
      ++non_dual_thin;
      CHECK(m.dim > m.dual_diameter + 1);
    }
  CHECK(non_dual_thin > 0);
}

TEST_CASE("unimodality checker") {
  CHECK(unimodality_violation({1, 3, 3, 1}) == -1);
  CHECK(unimodality_violation({1, 1, 1}) == -1);
  CHECK(unimodality_violation({5, 2, 4}) == 2);
  CHECK(unimodality_violation({1, 4, 2, 2, 3}) == 4);
  CHECK(unimodality_violation({2}) == -1);
}

TEST_CASE("THM1 valency unimodality") {
  auto run = [](const Scheme& s) {
    auto ps = p_polynomial_orderings(s);
    REQUIRE(!ps.empty());
    return check_valency_unimodality(ps.front(), s.label());
  };
  CHECK(run(hamming(3, 2)).verdict == Verdict::kHolds);   // (1,3,3,1)
  CHECK(run(cycle(6)).verdict == Verdict::kHolds);        // (1,2,2,1)
  CHECK(run(complete_graph(4)).verdict == Verdict::kHolds);
}

TEST_CASE("PSTRUCT_MONO monotone intersection numbers") {
  auto run = [](const Scheme& s) {
    auto ps = p_polynomial_orderings(s);
    REQUIRE(!ps.empty());
    return check_pstructure_monotonicity(ps.front(), s.label());
  };
  CHECK(run(hamming(3, 2)).verdict == Verdict::kHolds);  // {3,2,1;1,2,3}
  CHECK(run(johnson(4, 2)).verdict == Verdict::kHolds);  // {4,1;1,4}
  CHECK(run(cycle(5)).verdict == Verdict::kHolds);       // {2,1;1,1}
}

TEST_CASE("CONJ_BI multiplicity unimodality instances") {
  auto run = [](const Scheme& s) {
    EigenData e = eigensystem(s);
    auto qs = q_polynomial_orderings(e);
    REQUIRE(!qs.empty());
    return check_multiplicity_conjecture(natural_q(qs), s.label());
  };
  CHECK(run(hamming(3, 2)).verdict == Verdict::kHolds);  // (1,3,3,1)
  CHECK(run(johnson(4, 2)).verdict == Verdict::kHolds);  // (1,3,2)
  CHECK(run(cycle(5)).verdict == Verdict::kHolds);       // (1,2,2)
}

TEST_CASE("THM2 main theorem on dual-thin instances") {
  for (const Scheme& s : {hamming(3, 2), johnson(4, 2), complete_graph(4)}) {
    EigenData e = eigensystem(s);
    auto qs = q_polynomial_orderings(e);
    REQUIRE(!qs.empty());
    DualThinReport dt = is_dual_thin(s, e);
    REQUIRE(dt.dual_thin);
    for (const QStructure& q : qs) {
      CheckReport r = check_main_theorem(s, e, q, dt);
      CHECK(r.verdict == Verdict::kHolds);
      CHECK_FALSE(r.critical);
    }
  }
}

TEST_CASE("LEM21 and LEM22 on decompositions") {
  for (const Scheme& s : {hamming(3, 2), complete_graph(4), cycle(6)}) {
    EigenData e = eigensystem(s);
    auto qs = q_polynomial_orderings(e);
    REQUIRE(!qs.empty());
    for (const QStructure& q : qs)
      for (int x = 0; x < s.n(); ++x) {
        Decomposition dec = decompose(s, e, x);
        auto [pi, pii] = check_lemma_interval(dec, q, s.label());
        CHECK(pi.verdict == Verdict::kHolds);
        CHECK(pii.verdict == Verdict::kHolds);
        CHECK(check_lemma_2t_plus_d(dec, q, s.label()).verdict == Verdict::kHolds);
      }
  }
}

TEST_CASE("COR bipartite corollary") {
  // hamming(3,2): bipartite P&Q, multiplicities (1,3,3,1)
  auto cube_reports = check_bipartite_corollary(hamming(3, 2), eigensystem(hamming(3, 2)));
  REQUIRE(!cube_reports.empty());
  for (const auto& r : cube_reports) CHECK(r.verdict == Verdict::kHolds);

  auto c6_reports = check_bipartite_corollary(cycle(6), eigensystem(cycle(6)));
  REQUIRE(!c6_reports.empty());
  bool some_holds = false;
  for (const auto& r : c6_reports) some_holds |= (r.verdict == Verdict::kHolds);
  CHECK(some_holds);

  // johnson(4,2) has triangles: a_1 != 0, not bipartite
  auto j_reports = check_bipartite_corollary(johnson(4, 2), eigensystem(johnson(4, 2)));
  REQUIRE(!j_reports.empty());
  for (const auto& r : j_reports) {
    CHECK(r.verdict == Verdict::kNotApplicable);
    CHECK(r.notes.find("bipartite") != std::string::npos);
  }
}

TEST_CASE("JOHNSON_CSTAR: the Krein counterexample in J(k^2,k)") {
  // frozen values from the exact-rational pipeline, cross-checked against the
  // orthogonality-relation oracle in test_parameters
  CheckReport k4 = johnson_dual_c_inequality(4);
  CHECK(k4.verdict == Verdict::kHolds);
  CHECK(k4.witness["c_star_k_minus_1"] == "25/11");
  CHECK(k4.witness["c_star_k"] == "2/1");
  CHECK(k4.witness["n"] == "1820");

  CheckReport k5 = johnson_dual_c_inequality(5);
  CHECK(k5.verdict == Verdict::kHolds);
  CHECK(k5.witness["c_star_k_minus_1"] == "136/57");
  CHECK(k5.witness["c_star_k"] == "30/17");

  CheckReport k6 = johnson_dual_c_inequality(6);
  CHECK(k6.verdict == Verdict::kHolds);

  // k = 2: comparison recorded, no claim
  CheckReport k2 = johnson_dual_c_inequality(2);
  CHECK(k2.verdict == Verdict::kNotApplicable);
  CHECK(k2.witness["comparison"] == "less");
  CheckReport k3 = johnson_dual_c_inequality(3);
  CHECK(k3.verdict == Verdict::kNotApplicable);

  CHECK_THROWS_AS(johnson_dual_c_inequality(1), SchemeError);
}

TEST_CASE("run_suite: clean corpus has zero fails") {
  std::vector<Scheme> corpus = {complete_graph(4), cycle(5), cycle(6), hamming(3, 2),
                                johnson(4, 2)};
  SuiteResult suite = run_suite(corpus);
  CHECK(suite.errors.empty());
  int holds = 0;
  for (const CheckReport& r : suite.reports) {
    CHECK(r.verdict != Verdict::kFails);
    if (r.verdict == Verdict::kHolds) ++holds;
  }
  CHECK(holds > 0);
  CHECK(suite_exit_code(suite) == 0);

  // deterministic: rerunning yields byte-identical serialized reports
  SuiteResult again = run_suite(corpus);
  CHECK(render_csv(suite) == render_csv(again));
}

TEST_CASE("run_suite: empty input and hypothesis gating") {
  CHECK(run_suite({}).reports.empty());

  // the K_3 x K_3 product scheme is neither P- nor Q-polynomial:
  // every Q-dependent and P-dependent check reports not_applicable
  Scheme prod = product_scheme_3x3();
  EigenData e = eigensystem(prod);
  CHECK(q_polynomial_orderings(e).empty());
  CHECK(p_polynomial_orderings(prod).empty());

  SuiteResult suite = run_suite({prod});
  CHECK(suite.errors.empty());
  REQUIRE(!suite.reports.empty());
  for (const CheckReport& r : suite.reports) CHECK(r.verdict == Verdict::kNotApplicable);
  CHECK(suite_exit_code(suite) == 0);
}

TEST_CASE("report serialization carries verdicts and witnesses") {
  SuiteResult suite = run_suite({complete_graph(4)});
  Json doc = suite_json(scheme_json(complete_graph(4)), Json::array(), suite);
  CHECK(doc["tool_version"] == kToolVersion);
  CHECK(doc["scheme"]["n"] == 4);
  REQUIRE(doc["reports"].is_array());
  for (const auto& r : doc["reports"]) {
    CHECK(r.contains("check_id"));
    CHECK(r.contains("verdict"));
    CHECK(r.contains("witness"));
  }
  const std::string csv = render_csv(suite);
  CHECK(csv.find("scheme,check_id,ordering,verdict") == 0);
  const std::string text = render_text(suite);
  CHECK(text.find("THM2") != std::string::npos);
}

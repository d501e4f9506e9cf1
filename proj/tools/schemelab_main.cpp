#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "schemelab/report.hpp"

namespace {

using namespace schemelab;

struct SchemeSpec {
  std::string family;
  int n = 0, m = 0, d = 0, q = 0, v = 0, k = 0;
  std::string input;
  long long cap = kDefaultVertexCap;
};

struct OutputSpec {
  std::string format = "text";
  std::string path;
};

void add_scheme_flags(CLI::App* cmd, SchemeSpec& spec) {
  cmd->add_option("--family", spec.family, "complete | cycle | hamming | johnson")
      ->check(CLI::IsMember({"complete", "cycle", "hamming", "johnson"}));
  cmd->add_option("--n", spec.n, "vertices (complete)");
  cmd->add_option("--m", spec.m, "cycle length");
  cmd->add_option("--d", spec.d, "hamming word length");
  cmd->add_option("--q", spec.q, "hamming alphabet size");
  cmd->add_option("--v", spec.v, "johnson ground-set size");
  cmd->add_option("--k", spec.k, "johnson subset size");
  cmd->add_option("--input", spec.input, "scheme text file");
  cmd->add_option("--cap", spec.cap, "vertex cap for family constructors")
      ->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
  cmd->add_option("--format", out.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--output", out.path, "write to file instead of stdout");
}

Scheme build_scheme(const SchemeSpec& spec) {
  if (!spec.input.empty()) return read_scheme_file(spec.input);
  if (spec.family == "complete") return complete_graph(spec.n);
  if (spec.family == "cycle") return cycle(spec.m);
  if (spec.family == "hamming") return hamming(spec.d, spec.q, spec.cap);
  if (spec.family == "johnson") return johnson(spec.v, spec.k, spec.cap);
  fail(Err::InvalidParameters, "need --family or --input");
}

void emit(const OutputSpec& out, const std::string& payload) {
  if (out.path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) fail(Err::IoError, "cannot open '" + out.path + "' for writing");
  f << payload;
}

Json wrap_document(const Json& scheme, const Json& orderings, const Json& reports) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["scheme"] = scheme;
  j["orderings"] = orderings;
  j["reports"] = reports;
  return j;
}

int run_info(const SchemeSpec& spec, const OutputSpec& out) {
  const Scheme s = build_scheme(spec);
  if (out.format == "text") {
    std::ostringstream t;
    t << s.label() << ": n = " << s.n() << ", D = " << s.D() << "\nvalencies:";
    for (long long k : s.valencies()) t << ' ' << k;
    t << "\nintersection numbers p^k_ij:\n";
    const auto& p = s.intersection_numbers();
    for (int k = 0; k <= s.D(); ++k) {
      t << "k = " << k << ":\n";
      for (int i = 0; i <= s.D(); ++i) {
        t << " ";
        for (int j = 0; j <= s.D(); ++j) t << ' ' << p.p(k, i, j);
        t << '\n';
      }
    }
    emit(out, t.str());
    return 0;
  }
  Json j;
  j["tool_version"] = kToolVersion;
  j["scheme"] = scheme_json(s);
  Json tensor = Json::array();
  const auto& p = s.intersection_numbers();
  for (int k = 0; k <= s.D(); ++k) {
    Json mk = Json::array();
    for (int i = 0; i <= s.D(); ++i) {
      Json row = Json::array();
      for (int jj = 0; jj <= s.D(); ++jj) row.push_back(p.p(k, i, jj));
      mk.push_back(std::move(row));
    }
    tensor.push_back(std::move(mk));
  }
  j["intersection_numbers"] = std::move(tensor);
  emit(out, j.dump(2) + "\n");
  return 0;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(double_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_spectra(const SchemeSpec& spec, const OutputSpec& out, const SpectralOptions& sopts) {
  const Scheme s = build_scheme(spec);
  const EigenData e = eigensystem(s, sopts);
  const KreinTensor kr = krein_parameters(e, sopts);
  const auto qs = q_polynomial_orderings(e, kr, sopts);
  const auto ps = p_polynomial_orderings(s);

  if (out.format == "text") {
    std::ostringstream t;
    t << s.label() << ": multiplicities:";
    for (long long m : e.multiplicities) t << ' ' << m;
    t << "\nP:\n";
    for (int i = 0; i <= e.D; ++i) {
      for (int j = 0; j <= e.D; ++j) t << (j ? " " : "  ") << format_double(e.P(i, j));
      t << '\n';
    }
    t << "Q:\n";
    for (int i = 0; i <= e.D; ++i) {
      for (int j = 0; j <= e.D; ++j) t << (j ? " " : "  ") << format_double(e.Q(i, j));
      t << '\n';
    }
    t << "P-polynomial orderings: " << ps.size() << ", Q-polynomial orderings: " << qs.size()
      << '\n';
    emit(out, t.str());
    return 0;
  }

  Json j;
  j["tool_version"] = kToolVersion;
  j["scheme"] = scheme_json(s);
  j["multiplicities"] = e.multiplicities;
  j["P"] = matrix_json(e.P);
  j["Q"] = matrix_json(e.Q);
  Json tensor = Json::array();
  for (int k = 0; k <= e.D; ++k) {
    Json mk = Json::array();
    for (int i = 0; i <= e.D; ++i) {
      Json row = Json::array();
      for (int jj = 0; jj <= e.D; ++jj) row.push_back(double_json(kr.q(k, i, jj)));
      mk.push_back(std::move(row));
    }
    tensor.push_back(std::move(mk));
  }
  j["krein"] = std::move(tensor);
  j["orderings"] = ordering_json(ps, qs);
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_modules(const SchemeSpec& spec, const OutputSpec& out, const SpectralOptions& sopts,
                const TOptions& topts, BasePointPolicy policy) {
  const Scheme s = build_scheme(spec);
  const EigenData e = eigensystem(s, sopts);
  const DualThinReport dt = is_dual_thin(s, e, policy, topts);

  if (out.format == "text") {
    std::ostringstream t;
    for (std::size_t i = 0; i < dt.base_points.size(); ++i) {
      const Decomposition& dec = dt.decompositions[i];
      t << "x = " << dec.base_point << " (residual " << format_double(dec.residual) << ")\n";
      for (const TModuleSummary& m : dec.modules) {
        t << "  dim " << m.dim << "  r = " << m.endpoint << "  d = " << m.diameter
          << "  t = " << m.dual_endpoint << "  d* = " << m.dual_diameter
          << (m.thin ? "  thin" : "") << (m.dual_thin ? "  dual-thin" : "") << '\n';
      }
    }
    t << (dt.dual_thin ? "scheme is dual-thin over the examined base points\n"
                       : "scheme is NOT dual-thin\n");
    emit(out, t.str());
    return 0;
  }

  Json pts = Json::array();
  for (std::size_t i = 0; i < dt.base_points.size(); ++i) {
    const Decomposition& dec = dt.decompositions[i];
    Json mods = Json::array();
    for (const TModuleSummary& m : dec.modules) {
      Json jm;
      jm["dim"] = m.dim;
      jm["endpoint"] = m.endpoint;
      jm["diameter"] = m.diameter;
      jm["dual_endpoint"] = m.dual_endpoint;
      jm["dual_diameter"] = m.dual_diameter;
      jm["thin"] = m.thin;
      jm["dual_thin"] = m.dual_thin;
      jm["e_profile"] = m.e_profile;
      jm["e_star_profile"] = m.e_star_profile;
      mods.push_back(std::move(jm));
    }
    Json jp;
    jp["base_point"] = dec.base_point;
    jp["residual"] = double_json(dec.residual);
    jp["modules"] = std::move(mods);
    pts.push_back(std::move(jp));
  }
  Json j;
  j["tool_version"] = kToolVersion;
  j["scheme"] = scheme_json(s);
  j["dual_thin"] = dt.dual_thin;
  j["base_points"] = std::move(pts);
  emit(out, j.dump(2) + "\n");
  return 0;
}

int run_check(const SchemeSpec& spec, const OutputSpec& out, const SuiteConfig& config) {
  const Scheme s = build_scheme(spec);
  SuiteResult suite = run_suite({s}, config);

  if (out.format == "json") {
    Json orderings = Json::array();
    if (suite.errors.empty()) {
      const EigenData e = eigensystem(s, config.spectral);
      const auto qs = q_polynomial_orderings(e, config.spectral);
      const auto ps = p_polynomial_orderings(s);
      orderings = ordering_json(ps, qs);
    }
    emit(out, suite_json(scheme_json(s), orderings, suite).dump(2) + "\n");
  } else if (out.format == "csv") {
    emit(out, render_csv(suite));
  } else {
    emit(out, render_text(suite));
  }
  return suite_exit_code(suite);
}

int run_johnson_cstar(int k, const OutputSpec& out) {
  const CheckReport r = johnson_dual_c_inequality(k);

  if (out.format == "text") {
    std::ostringstream t;
    t << "J(" << k * k << "," << k << "), natural Q-ordering:\n";
    t << "  c*_" << (k - 1) << " = " << r.witness.value("c_star_k_minus_1", "?") << '\n';
    t << "  c*_" << k << " = " << r.witness.value("c_star_k", "?") << '\n';
    t << "verdict: " << verdict_name(r.verdict);
    if (!r.notes.empty()) t << "  (" << r.notes << ')';
    t << '\n';
    emit(out, t.str());
  } else if (out.format == "csv") {
    SuiteResult one;
    one.reports.push_back(r);
    emit(out, render_csv(one));
  } else {
    Json scheme;
    scheme["label"] = r.scheme_label;
    scheme["n"] = r.witness.at("n");
    scheme["D"] = k;
    scheme["mode"] = "parameters";
    Json orderings = Json::array();
    Json nat;
    nat["type"] = "Q";
    nat["ordering"] = r.ordering;
    orderings.push_back(std::move(nat));
    Json reports = Json::array();
    reports.push_back(report_json(r));
    emit(out, wrap_document(scheme, orderings, reports).dump(2) + "\n");
  }
  return r.verdict == Verdict::kFails ? 1 : 0;
}

int run_gen(const SchemeSpec& spec, const std::string& path) {
  const Scheme s = build_scheme(spec);
  write_scheme_file(s, path);
  return 0;
}

bool numeric_failure(Err code) {
  switch (code) {
    case Err::EigenspaceSeparationFailure:
    case Err::NegativeKreinParameter:
    case Err::ClosureNotReached:
    case Err::ResidualTooLarge:
    case Err::IrreducibilitySplitFailed:
    case Err::EmptyProfile:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schemelab: association scheme eigenstructure and T-module checker"};
  app.require_subcommand(1);

  SchemeSpec spec;
  OutputSpec out;
  double tol_residual = 0, tol_zero = 0, tol_gap = 0;
  std::uint64_t seed = 0;
  std::string base_points = "all";
  bool assume_transitive = false;
  int cstar_k = 0;
  std::string gen_output;

  auto add_tolerances = [&](CLI::App* cmd) {
    cmd->add_option("--tol-residual", tol_residual, "certificate residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-zero", tol_zero, "Krein tridiagonality zero tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-gap", tol_gap, "eigenvalue grouping gap tolerance")
        ->check(CLI::PositiveNumber);
  };
  auto add_base_points = [&](CLI::App* cmd) {
    cmd->add_option("--base-points", base_points, "all | sample")
        ->check(CLI::IsMember({"all", "sample"}));
    cmd->add_flag("--assume-transitive", assume_transitive,
                  "acknowledge vertex transitivity when sampling one base point");
    cmd->add_option("--seed", seed, "decomposition coefficient seed");
  };

  CLI::App* info = app.add_subcommand("info", "scheme parameters and intersection numbers");
  add_scheme_flags(info, spec);
  add_output_flags(info, out);

  CLI::App* spectra = app.add_subcommand("spectra", "P, Q, multiplicities, Krein, orderings");
  add_scheme_flags(spectra, spec);
  add_output_flags(spectra, out);
  add_tolerances(spectra);

  CLI::App* modules = app.add_subcommand("modules", "per-base-point T-module decompositions");
  add_scheme_flags(modules, spec);
  add_output_flags(modules, out);
  add_tolerances(modules);
  add_base_points(modules);

  CLI::App* check = app.add_subcommand("check", "run the theorem suite");
  add_scheme_flags(check, spec);
  add_output_flags(check, out);
  add_tolerances(check);
  add_base_points(check);

  CLI::App* cstar = app.add_subcommand("johnson-cstar", "exact c*_{k-1} vs c*_k in J(k^2,k)");
  cstar->add_option("--k", cstar_k, "Johnson parameter k")->required();
  add_output_flags(cstar, out);

  CLI::App* gen = app.add_subcommand("gen", "write a family scheme in the text format");
  add_scheme_flags(gen, spec);
  gen->add_option("--output", gen_output, "destination path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  SpectralOptions sopts;
  if (tol_residual > 0) sopts.residual_tol = tol_residual;
  if (tol_zero > 0) sopts.krein_zero_tol = tol_zero;
  if (tol_gap > 0) sopts.gap_tol = tol_gap;
  TOptions topts;
  if (tol_residual > 0) topts.residual_tol = tol_residual;
  if (tol_gap > 0) topts.gap_tol = tol_gap;
  topts.seed = seed;

  BasePointPolicy policy = BasePointPolicy::kAll;
  if (base_points == "sample") {
    if (!assume_transitive) {
      std::cerr << "--base-points sample requires --assume-transitive\n";
      return 2;
    }
    policy = BasePointPolicy::kSampleRepresentative;
  }

  try {
    if (*info) return run_info(spec, out);
    if (*spectra) return run_spectra(spec, out, sopts);
    if (*modules) return run_modules(spec, out, sopts, topts, policy);
    if (*check) {
      SuiteConfig config;
      config.policy = policy;
      config.spectral = sopts;
      config.tmodule = topts;
      return run_check(spec, out, config);
    }
    if (*cstar) return run_johnson_cstar(cstar_k, out);
    if (*gen) return run_gen(spec, gen_output);
  } catch (const SchemeError& err) {
    std::cerr << err.what() << '\n';
    return numeric_failure(err.code()) ? 3 : 2;
  } catch (const std::exception& err) {
    std::cerr << err.what() << '\n';
    return 2;
  }
  return 2;
}

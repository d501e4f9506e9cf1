#include "schemelab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace schemelab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Json double_json(double v) {
  // round to 12 significant digits so serialized output is diff-stable
  return Json(std::strtod(format_double(v).c_str(), nullptr));
}

Json scheme_json(const Scheme& s) {
  Json j;
  j["label"] = s.label();
  j["n"] = s.n();
  j["D"] = s.D();
  j["valencies"] = s.valencies();
  return j;
}

Json ordering_json(const std::vector<PStructure>& ps, const std::vector<QStructure>& qs) {
  Json arr = Json::array();
  for (const PStructure& p : ps) {
    Json j;
    j["type"] = "P";
    j["ordering"] = p.ordering;
    j["b"] = std::vector<long long>(p.b.begin(), p.b.end() - 1);
    j["c"] = std::vector<long long>(p.c.begin() + 1, p.c.end());
    j["a"] = p.a;
    arr.push_back(std::move(j));
  }
  for (const QStructure& q : qs) {
    Json j;
    j["type"] = "Q";
    j["ordering"] = q.ordering;
    Json b = Json::array(), c = Json::array(), a = Json::array();
    for (std::size_t i = 0; i + 1 < q.dual_b.size(); ++i) b.push_back(double_json(q.dual_b[i]));
    for (std::size_t i = 1; i < q.dual_c.size(); ++i) c.push_back(double_json(q.dual_c[i]));
    for (double x : q.dual_a) a.push_back(double_json(x));
    j["dual_b"] = std::move(b);
    j["dual_c"] = std::move(c);
    j["dual_a"] = std::move(a);
    j["multiplicities"] = q.multiplicities;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json report_json(const CheckReport& r) {
  Json j;
  j["check_id"] = check_id_name(r.id);
  j["scheme"] = r.scheme_label;
  j["ordering"] = r.ordering;
  j["verdict"] = verdict_name(r.verdict);
  if (r.critical) j["critical"] = true;
  j["witness"] = r.witness;
  j["notes"] = r.notes;
  return j;
}

Json suite_json(const Json& scheme, const Json& orderings, const SuiteResult& suite) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["scheme"] = scheme;
  j["orderings"] = orderings;
  Json reports = Json::array();
  for (const CheckReport& r : suite.reports) reports.push_back(report_json(r));
  j["reports"] = std::move(reports);
  if (!suite.errors.empty()) {
    Json errs = Json::array();
    for (const SuiteError& e : suite.errors) {
      Json je;
      je["scheme"] = e.scheme_label;
      je["code"] = err_name(e.code);
      je["message"] = e.message;
      errs.push_back(std::move(je));
    }
    j["errors"] = std::move(errs);
  }
  return j;
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string ordering_str(const std::vector<int>& ord) {
  std::string s;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    if (i) s += "|";
    s += std::to_string(ord[i]);
  }
  return s;
}

}  // namespace

std::string render_csv(const SuiteResult& suite) {
  std::ostringstream out;
  out << "scheme,check_id,ordering,verdict,critical,witness,notes\n";
  for (const CheckReport& r : suite.reports) {
    out << csv_quote(r.scheme_label) << ',' << check_id_name(r.id) << ','
        << csv_quote(ordering_str(r.ordering)) << ',' << verdict_name(r.verdict) << ','
        << (r.critical ? "true" : "false") << ',' << csv_quote(r.witness.dump()) << ','
        << csv_quote(r.notes) << '\n';
  }
  for (const SuiteError& e : suite.errors)
    out << csv_quote(e.scheme_label) << ",ERROR,,error,false," << csv_quote(e.message) << ",\n";
  return out.str();
}

std::string render_text(const SuiteResult& suite) {
  std::ostringstream out;
  for (const CheckReport& r : suite.reports) {
    out << '[' << verdict_name(r.verdict) << (r.critical ? "/CRITICAL" : "") << "] "
        << check_id_name(r.id) << "  " << r.scheme_label;
    if (!r.ordering.empty()) out << "  ordering=" << ordering_str(r.ordering);
    if (!r.witness.empty()) out << "  witness=" << r.witness.dump();
    if (!r.notes.empty()) out << "  (" << r.notes << ')';
    out << '\n';
  }
  for (const SuiteError& e : suite.errors)
    out << "[error] " << e.scheme_label << "  " << e.message << '\n';
  return out.str();
}

int suite_exit_code(const SuiteResult& suite) {
  if (!suite.errors.empty()) return 3;
  for (const CheckReport& r : suite.reports)
    if (r.verdict == Verdict::kFails) return 1;
  return 0;
}

}  // namespace schemelab

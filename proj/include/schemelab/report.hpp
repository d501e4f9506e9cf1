#pragma once

#include <string>

#include "schemelab/theorems.hpp"

namespace schemelab {

#ifndef SCHEMELAB_VERSION
#define SCHEMELAB_VERSION "0.0.0"
#endif
inline constexpr const char* kToolVersion = SCHEMELAB_VERSION;

// Floating values serialize with 12 significant digits; exact rationals as "p/q".
std::string format_double(double v);
Json double_json(double v);

Json scheme_json(const Scheme& s);
Json ordering_json(const std::vector<PStructure>& ps, const std::vector<QStructure>& qs);
Json report_json(const CheckReport& r);

// Top-level document: {tool_version, scheme, orderings[], reports[]} (+errors when any).
Json suite_json(const Json& scheme, const Json& orderings, const SuiteResult& suite);

std::string render_csv(const SuiteResult& suite);
std::string render_text(const SuiteResult& suite);

// 0 = all holds/not_applicable, 1 = some check fails, 3 = numerical certificate failure
int suite_exit_code(const SuiteResult& suite);

}  // namespace schemelab

#pragma once

#include <iosfwd>
#include <string>

#include "stablesde/metrics.hpp"
#include "stablesde/ratestudy.hpp"

namespace stablesde {

// Locale-independent float text with 17 significant digits, enough to
// round-trip any double exactly.
std::string g17(double v);

// Spellings shared by the CSV footers and the command line.
std::string scheme_token(SchemeKind scheme);       // "stable" / "pareto"
SchemeKind parse_scheme_token(const std::string& text);
std::string method_token(RateMethod method);       // "mc-w1" / "cf-gap"
RateMethod parse_method_token(const std::string& text);

// Sample matrices: header "idx,x1,...,xd", one row per sample.
void write_samples_csv(std::ostream& os, const EmpiricalMeasure& m);
EmpiricalMeasure read_samples_csv(std::istream& is);

// Rate reports: header "eta,distance", data rows, then footer comments
// "# slope=... intercept=... r2=... theory=..." and
// "# scheme=... method=... alpha=...".  Lossless up to float printing, which
// g17 makes exact.
void write_rate_csv(std::ostream& os, const RateReport& report);
RateReport read_rate_csv(std::istream& is);

} // namespace stablesde

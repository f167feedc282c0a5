// Serialization of reports and certificates: JSON (round-trippable), CSV,
// human-readable text, and the versioned certificate file format.
#ifndef LPGV_REPORT_IO_HPP
#define LPGV_REPORT_IO_HPP

#include <string>
#include <vector>

#include "lpgv/asymptotics.hpp"
#include "lpgv/constructor.hpp"
#include "lpgv/exactbounds.hpp"

namespace lpgv {

// --- JSON ---------------------------------------------------------------
std::string to_json(const BoundReport& report);
std::string to_json(const ExponentResult& result);
std::string to_json(const ComparisonBound& bound);
BoundReport bound_report_from_json(const std::string& text);
ExponentResult exponent_result_from_json(const std::string& text);
ComparisonBound comparison_bound_from_json(const std::string& text);

// --- text ---------------------------------------------------------------
std::string to_text(const BoundReport& report);
std::string to_text(const ExponentResult& result);
std::string to_text(const ComparisonBound& bound);

// --- CSV ----------------------------------------------------------------
// 12 significant digits, LF line endings, header row first.
std::string curve_csv(const std::vector<CurveSample>& samples);
std::string bound_report_csv(const BoundReport& report);
std::string exponent_result_csv(const ExponentResult& result);
std::string sweep_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);
std::string format_real(double v);  // the CSV real format

// --- certificate file ---------------------------------------------------
// Versioned text record: header line, parameters, per-shell sizes, the
// guarantee, the certified minimum distance, then one line per point with
// 1-based shell index, 1-based support indices and a +/- sign string.
std::string certificate_to_string(const CodeCertificate& cert);
CodeCertificate certificate_from_string(const std::string& text);

// Writes via a temp file plus rename, so failed runs leave no partial output.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace lpgv

#endif

#pragma once

#include <iosfwd>
#include <string>

#include "lpuniq/report.hpp"
#include "lpuniq/weighted.hpp"

namespace lpuniq {

/// {check_name, params, min_margin, n_vertices, failing_vertices, verdict, ...}
/// as JSON text with 17 significant digits.
std::string report_json(const VerificationReport& r, int indent = 2);
/// "vertex,margin" rows, one per site.
void write_report_csv(std::ostream& out, const VerificationReport& r);

/// "R,partial_sum,log_partial_sum" rows.
void write_growth_csv(std::ostream& out, const GrowthEstimate& g);
/// {beta_hat, residual, verdict, overflow_radius?}
std::string growth_summary_json(const GrowthEstimate& g, int indent = 2);

}  // namespace lpuniq

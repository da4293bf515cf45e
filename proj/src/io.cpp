#include "lpuniq/io.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "lpuniq/numerics.hpp"

namespace lpuniq {

namespace {

using nlohmann::ordered_json;

// JSON has no infinities; keep them readable as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string report_json(const VerificationReport& r, int indent) {
  ordered_json j;
  j["check_name"] = r.check_name();
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params()) params[k] = number(v);
  for (const auto& [k, v] : r.labels()) params[k] = v;
  j["params"] = params;
  j["min_margin"] = number(r.min_margin());
  j["n_vertices"] = r.margins().size();
  j["failing_vertices"] = r.failing_sites();
  j["verdict"] = r.passed() ? "pass" : "fail";
  ordered_json q = ordered_json::object();
  for (const auto& [k, v] : r.quantities()) q[k] = number(v);
  j["quantities"] = q;
  j["messages"] = r.messages();
  return j.dump(indent);
}

void write_report_csv(std::ostream& out, const VerificationReport& r) {
  out << "vertex,margin\n";
  for (const auto& m : r.margins()) out << m.site << ',' << format_double(m.margin) << '\n';
}

void write_growth_csv(std::ostream& out, const GrowthEstimate& g) {
  out << "R,partial_sum,log_partial_sum\n";
  for (std::size_t i = 0; i < g.radii.size(); ++i)
    out << format_double(g.radii[i]) << ',' << format_double(g.partial_sums[i]) << ','
        << format_double(g.log_partial_sums[i]) << '\n';
}

std::string growth_summary_json(const GrowthEstimate& g, int indent) {
  ordered_json j;
  j["beta_hat"] = number(g.beta_hat);
  j["residual"] = number(g.residual);
  j["verdict"] = to_string(g.verdict);
  if (g.overflow_radius) j["overflow_radius"] = number(*g.overflow_radius);
  return j.dump(indent);
}

}  // namespace lpuniq

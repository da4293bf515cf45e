#include "lpuniq/report.hpp"

#include <algorithm>

namespace lpuniq {

double VerificationReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : margins_) m = std::min(m, e.margin);
  return m;
}

std::vector<std::string> VerificationReport::failing_sites() const {
  std::vector<std::string> out;
  for (const auto& e : margins_)
    if (e.failed()) out.push_back(e.site);
  return out;
}

bool VerificationReport::passed() const {
  return std::none_of(margins_.begin(), margins_.end(), [](const Margin& e) { return e.failed(); });
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& e : other.margins_) margins_.push_back({prefix + ":" + e.site, e.margin, e.tolerance});
  for (const auto& m : other.messages_) messages_.push_back(prefix + ": " + m);
  for (const auto& [k, v] : other.quantities_) quantities_[prefix + "." + k] = v;
}

}  // namespace lpuniq

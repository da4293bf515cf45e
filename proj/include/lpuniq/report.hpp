#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lpuniq {

/// One evaluated site of a check: a vertex, an edge, or a whole-sum term.
/// margin is (right side - left side); the site fails when margin < -tolerance.
struct Margin {
  std::string site;
  double margin = 0.0;
  double tolerance = 0.0;

  bool failed() const { return margin < -tolerance; }
};

/// Outcome of a numerical certification.
class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string check_name) : check_name_(std::move(check_name)) {}

  void add(std::string site, double margin, double tolerance) {
    margins_.push_back({std::move(site), margin, tolerance});
  }
  /// Records a structural violation (always failing).
  void violation(std::string site, std::string message) {
    margins_.push_back({site, -std::numeric_limits<double>::infinity(), 0.0});
    messages_.push_back(std::move(site) + ": " + std::move(message));
  }
  void note(std::string message) { messages_.push_back(std::move(message)); }

  void set_param(const std::string& key, double value) { params_[key] = value; }
  void set_quantity(const std::string& key, double value) { quantities_[key] = value; }
  void set_label(const std::string& key, std::string value) { labels_[key] = std::move(value); }

  const std::string& check_name() const noexcept { return check_name_; }
  const std::vector<Margin>& margins() const noexcept { return margins_; }
  const std::vector<std::string>& messages() const noexcept { return messages_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  const std::map<std::string, double>& quantities() const noexcept { return quantities_; }
  const std::map<std::string, std::string>& labels() const noexcept { return labels_; }

  double quantity(const std::string& key) const { return quantities_.at(key); }

  /// +inf when there are no sites.
  double min_margin() const;
  std::vector<std::string> failing_sites() const;
  bool passed() const;

  /// Appends another report's sites under a prefix ("prefix:site").
  void merge(const VerificationReport& other, const std::string& prefix);

 private:
  std::string check_name_;
  std::vector<Margin> margins_;
  std::vector<std::string> messages_;
  std::map<std::string, double> params_;
  std::map<std::string, double> quantities_;
  std::map<std::string, std::string> labels_;
};

}  // namespace lpuniq

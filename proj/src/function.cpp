#include "lpuniq/function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "lpuniq/errors.hpp"
#include "lpuniq/numerics.hpp"

namespace lpuniq {

GraphFunction::GraphFunction(Kind kind, Oracle oracle,
                             std::shared_ptr<const std::vector<VertexId>> support,
                             Provenance provenance, std::string name)
    : kind_(kind),
      oracle_(std::move(oracle)),
      support_(std::move(support)),
      provenance_(provenance),
      name_(std::move(name)) {
  if (support_) {
    auto idx = std::make_shared<std::unordered_map<VertexId, bool, VertexHash>>();
    idx->reserve(support_->size());
    for (const auto& v : *support_) idx->emplace(v, true);
    support_index_ = std::move(idx);
  }
}

GraphFunction GraphFunction::closed_form(Oracle f, std::string name) {
  return GraphFunction(Kind::Total, std::move(f), nullptr, Provenance::ClosedForm, std::move(name));
}

GraphFunction GraphFunction::constant(double c) {
  return closed_form([c](const VertexId&) { return c; }, "const");
}

GraphFunction GraphFunction::with_support(Oracle f, std::vector<VertexId> support, std::string name) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return GraphFunction(Kind::Finite, std::move(f),
                       std::make_shared<const std::vector<VertexId>>(std::move(support)),
                       Provenance::ClosedForm, std::move(name));
}

namespace {

std::pair<std::shared_ptr<const std::unordered_map<VertexId, double, VertexHash>>,
          std::shared_ptr<const std::vector<VertexId>>>
tabulate(std::vector<std::pair<VertexId, double>> values) {
  auto table = std::make_shared<std::unordered_map<VertexId, double, VertexHash>>();
  auto keys = std::make_shared<std::vector<VertexId>>();
  table->reserve(values.size());
  for (auto& [v, x] : values) {
    if (!table->emplace(v, x).second)
      throw PreconditionError("vertex " + v.to_string() + " given twice");
    keys->push_back(std::move(v));
  }
  std::sort(keys->begin(), keys->end());
  return {std::move(table), std::move(keys)};
}

}  // namespace

GraphFunction GraphFunction::finite(std::vector<std::pair<VertexId, double>> values,
                                    Provenance provenance, std::string name) {
  auto [table, keys] = tabulate(std::move(values));
  auto oracle = [table = table](const VertexId& x) {
    auto it = table->find(x);
    return it == table->end() ? 0.0 : it->second;
  };
  return GraphFunction(Kind::Finite, std::move(oracle), std::move(keys), provenance, std::move(name));
}

GraphFunction GraphFunction::on_domain(std::vector<std::pair<VertexId, double>> values,
                                       Provenance provenance, std::string name) {
  auto [table, keys] = tabulate(std::move(values));
  auto oracle = [table = table, name](const VertexId& x) {
    auto it = table->find(x);
    if (it == table->end())
      throw DomainError("function '" + name + "' is not defined at " + x.to_string());
    return it->second;
  };
  return GraphFunction(Kind::Domain, std::move(oracle), std::move(keys), provenance, std::move(name));
}

GraphFunction GraphFunction::indicator(const VertexId& x) {
  return finite({{x, 1.0}}, Provenance::ClosedForm, "1_{" + x.to_string() + "}");
}

double GraphFunction::operator()(const VertexId& x) const {
  if (kind_ == Kind::Finite && !support_index_->count(x)) return 0.0;
  return oracle_(x);
}

bool GraphFunction::evaluable_at(const VertexId& x) const {
  return kind_ != Kind::Domain || support_index_->count(x) != 0;
}

std::span<const VertexId> GraphFunction::support() const noexcept {
  if (!support_) return {};
  return *support_;
}

GraphFunction GraphFunction::scaled(double c) const {
  GraphFunction out = *this;
  out.oracle_ = [f = *this, c](const VertexId& x) { return c * f(x); };
  out.name_ = format_double(c) + "*" + name_;
  return out;
}

GraphFunction operator*(const GraphFunction& f, const GraphFunction& h) {
  using Kind = GraphFunction::Kind;
  auto oracle = [f, h](const VertexId& x) {
    if (f.has_finite_support() && f(x) == 0.0) return 0.0;
    if (h.has_finite_support() && h(x) == 0.0) return 0.0;
    return f(x) * h(x);
  };
  const std::string name = f.name_ + "*" + h.name_;
  const bool f_fin = f.kind_ == Kind::Finite;
  const bool h_fin = h.kind_ == Kind::Finite;
  if (f_fin || h_fin) {
    std::vector<VertexId> support;
    if (f_fin && h_fin) {
      std::set_intersection(f.support_->begin(), f.support_->end(), h.support_->begin(),
                            h.support_->end(), std::back_inserter(support));
    } else {
      support = f_fin ? *f.support_ : *h.support_;
    }
    return GraphFunction(Kind::Finite, std::move(oracle),
                         std::make_shared<const std::vector<VertexId>>(std::move(support)),
                         Provenance::ClosedForm, name);
  }
  if (f.kind_ == Kind::Domain || h.kind_ == Kind::Domain) {
    std::vector<VertexId> domain;
    if (f.kind_ == Kind::Domain && h.kind_ == Kind::Domain)
      std::set_intersection(f.support_->begin(), f.support_->end(), h.support_->begin(),
                            h.support_->end(), std::back_inserter(domain));
    else
      domain = f.kind_ == Kind::Domain ? *f.support_ : *h.support_;
    return GraphFunction(Kind::Domain, std::move(oracle),
                         std::make_shared<const std::vector<VertexId>>(std::move(domain)),
                         Provenance::ClosedForm, name);
  }
  return GraphFunction(Kind::Total, std::move(oracle), nullptr, Provenance::ClosedForm, name);
}

GraphFunction operator+(const GraphFunction& f, const GraphFunction& h) {
  using Kind = GraphFunction::Kind;
  auto oracle = [f, h](const VertexId& x) { return f(x) + h(x); };
  const std::string name = f.name_ + "+" + h.name_;
  if (f.kind_ == Kind::Finite && h.kind_ == Kind::Finite) {
    std::vector<VertexId> support;
    std::set_union(f.support_->begin(), f.support_->end(), h.support_->begin(), h.support_->end(),
                   std::back_inserter(support));
    return GraphFunction(Kind::Finite, std::move(oracle),
                         std::make_shared<const std::vector<VertexId>>(std::move(support)),
                         Provenance::ClosedForm, name);
  }
  if (f.kind_ == Kind::Domain || h.kind_ == Kind::Domain) {
    // evaluable where both are; finite-support factors are evaluable everywhere
    std::vector<VertexId> domain;
    if (f.kind_ == Kind::Domain && h.kind_ == Kind::Domain)
      std::set_intersection(f.support_->begin(), f.support_->end(), h.support_->begin(),
                            h.support_->end(), std::back_inserter(domain));
    else
      domain = f.kind_ == Kind::Domain ? *f.support_ : *h.support_;
    return GraphFunction(Kind::Domain, std::move(oracle),
                         std::make_shared<const std::vector<VertexId>>(std::move(domain)),
                         Provenance::ClosedForm, name);
  }
  return GraphFunction(Kind::Total, std::move(oracle), nullptr, Provenance::ClosedForm, name);
}

// --- file format -----------------------------------------------------------

GraphFunction read_function(std::istream& in, VertexId::Shape shape) {
  std::vector<std::pair<VertexId, double>> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string vtok, xtok, extra;
    if (!(ls >> vtok >> xtok) || (ls >> extra))
      throw FormatError("expected 'X value', got '" + line + "'", lineno);
    char* end = nullptr;
    const double x = std::strtod(xtok.c_str(), &end);
    if (end != xtok.c_str() + xtok.size() || !std::isfinite(x))
      throw FormatError("value '" + xtok + "' is not a finite decimal number", lineno);
    try {
      values.emplace_back(VertexId::parse(vtok, shape), x);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), lineno);
    }
  }
  try {
    return GraphFunction::finite(std::move(values), Provenance::File, "file");
  } catch (const PreconditionError& e) {
    throw FormatError(e.what(), lineno);
  }
}

GraphFunction load_function(const std::string& path, VertexId::Shape shape) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open function file '" + path + "'");
  return read_function(in, shape);
}

void write_function(std::ostream& out, const GraphFunction& f, std::span<const VertexId> vertices) {
  for (const auto& v : vertices) out << v.to_string() << ' ' << format_double(f(v)) << '\n';
}

}  // namespace lpuniq

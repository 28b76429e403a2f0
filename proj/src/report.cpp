#include "grover_qa/report.hpp"

#include <cstdio>

#include "grover_qa/errors.hpp"

namespace grover_qa {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view config,
                     std::initializer_list<std::string_view> columns)
    : out_(out), width_(columns.size()) {
  out_ << "# " << config << '\n';
  bool first = true;
  for (std::string_view c : columns) {
    if (!first) out_ << ',';
    out_ << c;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != width_) throw DomainError("CSV row width mismatch");
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ',';
    out_ << format_number(v);
    first = false;
  }
  out_ << '\n';
}

nlohmann::json to_json(const ScanResult& r) {
  return {{"tau_star", r.tau_star},
          {"p_at_tau_star", r.p_at_tau_star},
          {"monotone_bracket", r.monotone_bracket},
          {"evaluations", r.evaluations}};
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [x, y] : fit.points) points.push_back({x, y});
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"rms_residual", fit.rms_residual},
          {"points", points}};
}

nlohmann::json to_json(const PowerLawFit& fit) {
  return {{"exponent", fit.exponent},
          {"prefactor", fit.prefactor},
          {"rms_residual", fit.rms_residual}};
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"d1_upper", r.d1_upper},
          {"d1_asymptotic", r.d1_asymptotic},
          {"ratio_bound", r.ratio_bound},
          {"tau_required", r.tau_required}};
}

void write_report(std::ostream& out, const nlohmann::json& config,
                  const nlohmann::json& result) {
  const nlohmann::json doc = {{"config", config}, {"result", result}};
  out << doc.dump(2) << '\n';
}

}  // namespace grover_qa

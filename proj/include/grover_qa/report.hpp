#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grover_qa/bounds.hpp"
#include "grover_qa/experiments.hpp"

namespace grover_qa {

/// 17 significant digits: round-trips any double.
std::string format_number(double value);

/// CSV sink: one `#` line with the resolved configuration, one header row,
/// then data rows. Unix newlines, no quoting (all fields are numeric).
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::string_view config,
            std::initializer_list<std::string_view> columns);

  void row(std::initializer_list<double> values);

 private:
  std::ostream& out_;
  std::size_t width_;
};

nlohmann::json to_json(const ScanResult& r);
nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const PowerLawFit& fit);
nlohmann::json to_json(const BoundReport& r);

/// {"config": ..., "result": ...} followed by a newline.
void write_report(std::ostream& out, const nlohmann::json& config,
                  const nlohmann::json& result);

}  // namespace grover_qa

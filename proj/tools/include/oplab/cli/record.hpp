#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace oplab::cli {

using Json = nlohmann::ordered_json;

/// Sampled curve: one abscissa and any number of complex-valued columns.
struct Curve {
  std::string name;
  std::string x_label;
  std::vector<double> x;
  std::vector<std::pair<std::string, std::vector<std::complex<double>>>> columns;

  void add_real(const std::string& column, const std::vector<double>& values);
  bool operator==(const Curve&) const = default;
};

struct ResultRecord {
  std::string command;
  Json parameters = Json::object();
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<Curve> curves;
  std::vector<std::pair<std::string, std::string>> conventions;
  std::string status;  ///< accepted | failed | usage-error | inconclusive | error
  std::string message;
  int exit_code = 0;
  double wall_time = 0.0;

  void scalar(const std::string& name, double value) { scalars.emplace_back(name, value); }
  void label(const std::string& name, const std::string& value) { labels.emplace_back(name, value); }
  void residual(const std::string& name, double value) { residuals.emplace_back(name, value); }

  /// Lookups by name; throw std::out_of_range when absent.
  double scalar_value(const std::string& name) const;
  double residual_value(const std::string& name) const;
  const std::string& convention(const std::string& key) const;

  bool operator==(const ResultRecord&) const = default;
};

Json to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

std::string serialize_json(const ResultRecord& r);
ResultRecord parse_json(const std::string& text);

/// Long format, header `kind,name,x,re,im,text`, floats with 17 significant digits.
std::string serialize_csv(const ResultRecord& r);
std::string serialize_table(const ResultRecord& r);

}  // namespace oplab::cli

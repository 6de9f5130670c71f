#include "oplab/cli/record.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace oplab::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <class V>
Json pairs_to_json(const std::vector<std::pair<std::string, V>>& items) {
  Json j = Json::object();
  for (const auto& [k, v] : items) j[k] = v;
  return j;
}

template <class V>
std::vector<std::pair<std::string, V>> pairs_from_json(const Json& j) {
  std::vector<std::pair<std::string, V>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), it.value().template get<V>());
  return out;
}

template <class V>
const V& lookup(const std::vector<std::pair<std::string, V>>& items, const std::string& name) {
  for (const auto& [k, v] : items) {
    if (k == name) return v;
  }
  throw std::out_of_range("record has no entry '" + name + "'");
}

}  // namespace

double ResultRecord::scalar_value(const std::string& name) const { return lookup(scalars, name); }
double ResultRecord::residual_value(const std::string& name) const { return lookup(residuals, name); }
const std::string& ResultRecord::convention(const std::string& key) const { return lookup(conventions, key); }

void Curve::add_real(const std::string& column, const std::vector<double>& values) {
  std::vector<std::complex<double>> c(values.begin(), values.end());
  columns.emplace_back(column, std::move(c));
}

Json to_json(const ResultRecord& r) {
  Json j;
  j["command"] = r.command;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["message"] = r.message;
  j["parameters"] = r.parameters;
  j["scalars"] = pairs_to_json(r.scalars);
  j["labels"] = pairs_to_json(r.labels);
  j["residuals"] = pairs_to_json(r.residuals);
  j["conventions"] = pairs_to_json(r.conventions);
  Json curves = Json::array();
  for (const auto& c : r.curves) {
    Json jc;
    jc["name"] = c.name;
    jc["x_label"] = c.x_label;
    jc["x"] = c.x;
    Json cols = Json::object();
    for (const auto& [name, values] : c.columns) {
      std::vector<double> re, im;
      for (const auto& v : values) {
        re.push_back(v.real());
        im.push_back(v.imag());
      }
      cols[name] = Json{{"re", re}, {"im", im}};
    }
    jc["columns"] = std::move(cols);
    curves.push_back(std::move(jc));
  }
  j["curves"] = std::move(curves);
  j["wall_time"] = r.wall_time;
  return j;
}

ResultRecord record_from_json(const Json& j) {
  ResultRecord r;
  r.command = j.at("command").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.message = j.at("message").get<std::string>();
  r.parameters = j.at("parameters");
  r.scalars = pairs_from_json<double>(j.at("scalars"));
  r.labels = pairs_from_json<std::string>(j.at("labels"));
  r.residuals = pairs_from_json<double>(j.at("residuals"));
  r.conventions = pairs_from_json<std::string>(j.at("conventions"));
  for (const auto& jc : j.at("curves")) {
    Curve c;
    c.name = jc.at("name").get<std::string>();
    c.x_label = jc.at("x_label").get<std::string>();
    c.x = jc.at("x").get<std::vector<double>>();
    const Json& cols = jc.at("columns");
    for (auto it = cols.begin(); it != cols.end(); ++it) {
      const auto re = it.value().at("re").get<std::vector<double>>();
      const auto im = it.value().at("im").get<std::vector<double>>();
      std::vector<std::complex<double>> v(re.size());
      for (size_t i = 0; i < re.size(); ++i) v[i] = {re[i], im.at(i)};
      c.columns.emplace_back(it.key(), std::move(v));
    }
    r.curves.push_back(std::move(c));
  }
  r.wall_time = j.at("wall_time").get<double>();
  return r;
}

std::string serialize_json(const ResultRecord& r) { return to_json(r).dump(2) + "\n"; }

ResultRecord parse_json(const std::string& text) { return record_from_json(Json::parse(text)); }

std::string serialize_csv(const ResultRecord& r) {
  std::ostringstream os;
  os << "kind,name,x,re,im,text\n";
  os << "status,command,,,," << csv_text(r.command) << "\n";
  os << "status,status,,," << "," << csv_text(r.status) << "\n";
  os << "status,exit_code,," << r.exit_code << ",,\n";
  if (!r.message.empty()) os << "status,message,,,," << csv_text(r.message) << "\n";
  for (auto it = r.parameters.begin(); it != r.parameters.end(); ++it) {
    if (it.value().is_number()) {
      os << "param," << it.key() << ",," << num(it.value().get<double>()) << ",,\n";
    } else {
      os << "param," << it.key() << ",,,," << csv_text(it.value().is_string() ? it.value().get<std::string>()
                                                                             : it.value().dump())
         << "\n";
    }
  }
  for (const auto& [k, v] : r.scalars) os << "scalar," << k << ",," << num(v) << ",,\n";
  for (const auto& [k, v] : r.labels) os << "label," << k << ",,,," << csv_text(v) << "\n";
  for (const auto& [k, v] : r.residuals) os << "residual," << k << ",," << num(v) << ",,\n";
  for (const auto& c : r.curves) {
    for (const auto& [col, values] : c.columns) {
      for (size_t i = 0; i < values.size(); ++i) {
        os << "curve," << c.name << "." << col << "," << num(c.x.at(i)) << "," << num(values[i].real()) << ","
           << num(values[i].imag()) << ",\n";
      }
    }
  }
  for (const auto& [k, v] : r.conventions) os << "convention," << k << ",,,," << csv_text(v) << "\n";
  os << "status,wall_time,," << num(r.wall_time) << ",,\n";
  return os.str();
}

std::string serialize_table(const ResultRecord& r) {
  std::ostringstream os;
  os << "command   " << r.command << "\nstatus    " << r.status << " (exit " << r.exit_code << ")\n";
  if (!r.message.empty()) os << "message   " << r.message << "\n";
  os << "\nparameters\n";
  for (auto it = r.parameters.begin(); it != r.parameters.end(); ++it) {
    os << "  " << std::left << std::setw(24) << it.key() << " " << it.value().dump() << "\n";
  }
  if (!r.scalars.empty() || !r.labels.empty()) os << "\nresults\n";
  for (const auto& [k, v] : r.scalars) os << "  " << std::left << std::setw(24) << k << " " << num(v) << "\n";
  for (const auto& [k, v] : r.labels) os << "  " << std::left << std::setw(24) << k << " " << v << "\n";
  if (!r.residuals.empty()) os << "\nresiduals\n";
  for (const auto& [k, v] : r.residuals) os << "  " << std::left << std::setw(24) << k << " " << num(v) << "\n";
  for (const auto& c : r.curves) {
    os << "\ncurve " << c.name << " (" << c.x.size() << " samples)\n  " << std::setw(14) << c.x_label;
    std::vector<int> widths;
    for (const auto& [col, values] : c.columns) {
      const bool complex_column = std::any_of(values.begin(), values.end(), [](const auto& z) { return z.imag() != 0.0; });
      widths.push_back(complex_column ? 34 : 16);
    }
    for (size_t j = 0; j < c.columns.size(); ++j) os << " " << std::setw(widths[j]) << c.columns[j].first;
    os << "\n";
    const size_t rows = c.x.size();
    const size_t stride = rows > 40 ? rows / 40 + 1 : 1;
    for (size_t i = 0; i < rows; i += stride) {
      os << "  " << std::setw(14) << std::setprecision(6) << c.x[i];
      for (size_t j = 0; j < c.columns.size(); ++j) {
        const auto z = c.columns[j].second[i];
        std::ostringstream cell;
        cell << std::setprecision(8) << z.real();
        if (widths[j] > 16) cell << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
        os << " " << std::setw(widths[j]) << cell.str();
      }
      os << "\n";
    }
  }
  if (!r.conventions.empty()) os << "\nconventions\n";
  for (const auto& [k, v] : r.conventions) os << "  " << k << ": " << v << "\n";
  os << "\nwall time " << std::setprecision(4) << r.wall_time << " s\n";
  return os.str();
}

}  // namespace oplab::cli

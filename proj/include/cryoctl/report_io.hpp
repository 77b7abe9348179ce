#pragma once

// Machine-readable report output. CSV headers are fixed; see docs/formats.md.

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "cryoctl/report.hpp"
#include "cryoctl/scenario_io.hpp"

namespace cryoctl {

enum class OutputFormat { Json, Csv, Text };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw ValidationError("format must be one of json|csv|text, got '" + std::string(s) + "'");
}

/// Shortest-ish deterministic rendering used in CSV and text output.
inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline json to_json(const Report& r) {
  auto unit = [](const UnitReport& u) {
    return json{{"area_um2", u.area_um2}, {"power_w", u.power()}, {"p_analog_w", u.p_analog},
                {"p_digital_w", u.p_digital}};
  };
  auto ap = [](const AreaPower& u) { return json{{"area_um2", u.area_um2}, {"power_w", u.power_w}}; };
  json j;
  j["bias_gen"] = unit(r.bias_gen);
  j["rf_gen"] = unit(r.rf_gen);
  j["memory"] = ap(r.memory);
  j["managing"] = ap(r.managing);
  j["total"] = {{"area_um2", r.total_area_um2}, {"power_w", r.total_power_w}};
  j["derived"] = {{"f_refresh_hz", r.f_refresh},
                  {"f_clk_bias_hz", r.f_clk_bias},
                  {"f_clk_rf_hz", r.f_clk_rf},
                  {"bias_dac_noise_vrms", r.bias_dac_noise},
                  {"rf_dac_noise_vrms", r.rf_dac_noise},
                  {"hold_noise_vrms", r.hold_noise},
                  {"digital_power_w", r.digital_power_w()}};
  j["include_data_input"] = r.include_data_input;
  j["notes"] = r.notes;
  j["scenario"] = to_json(r.scenario);
  return j;
}

inline constexpr const char* kReportCsvHeader = "unit,area_um2,power_w,p_analog_w,p_digital_w";

inline void write_report_csv(std::ostream& os, const Report& r) {
  os << kReportCsvHeader << '\n';
  auto unit = [&](const char* name, const UnitReport& u) {
    os << name << ',' << fmt_num(u.area_um2) << ',' << fmt_num(u.power()) << ',' << fmt_num(u.p_analog) << ','
       << fmt_num(u.p_digital) << '\n';
  };
  auto digital = [&](const char* name, const AreaPower& u) {
    os << name << ',' << fmt_num(u.area_um2) << ',' << fmt_num(u.power_w) << ",0," << fmt_num(u.power_w) << '\n';
  };
  unit("bias_gen", r.bias_gen);
  unit("rf_gen", r.rf_gen);
  digital("memory", r.memory);
  digital("managing", r.managing);
  os << "total," << fmt_num(r.total_area_um2) << ',' << fmt_num(r.total_power_w) << ','
     << fmt_num(r.bias_gen.p_analog + r.rf_gen.p_analog) << ',' << fmt_num(r.digital_power_w()) << '\n';
}

inline void write_report_text(std::ostream& os, const Report& r) {
  os << "scenario: " << r.scenario.name << "  (" << to_string(r.scenario.memory_arch) << ", V_dd "
     << fmt_num(r.scenario.op.v_dd) << " V, T_el " << fmt_num(r.scenario.op.t_el) << " K)\n";
  os << std::left << std::setw(12) << "unit" << std::right << std::setw(14) << "area/um2" << std::setw(14)
     << "power/W" << '\n';
  auto row = [&](const char* name, double a, double p) {
    os << std::left << std::setw(12) << name << std::right << std::scientific << std::setprecision(3)
       << std::setw(14) << a << std::setw(14) << p << '\n';
  };
  row("bias_gen", r.bias_gen.area_um2, r.bias_gen.power());
  row("rf_gen", r.rf_gen.area_um2, r.rf_gen.power());
  row("memory", r.memory.area_um2, r.memory.power_w);
  row("managing", r.managing.area_um2, r.managing.power_w);
  row("total", r.total_area_um2, r.total_power_w);
  os << std::defaultfloat;
  os << "f_refresh " << fmt_num(r.f_refresh) << " Hz, f_clk_bias " << fmt_num(r.f_clk_bias) << " Hz, f_clk_rf "
     << fmt_num(r.f_clk_rf) << " Hz\n";
  for (const auto& n : r.notes) os << "note: " << n << '\n';
}

inline void write_report(std::ostream& os, const Report& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: os << to_json(r).dump(2) << '\n'; break;
    case OutputFormat::Csv: write_report_csv(os, r); break;
    case OutputFormat::Text: write_report_text(os, r); break;
  }
}

// ---------------------------------------------------------------------------

inline constexpr const char* kSweepCsvHeader =
    "param,value,valid,bias_gen_area_um2,bias_gen_power_w,rf_gen_area_um2,rf_gen_power_w,memory_area_um2,"
    "memory_power_w,managing_area_um2,managing_power_w,total_area_um2,total_power_w,error";

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline void write_sweep(std::ostream& os, SweepParam p, const std::vector<SweepRow>& rows, OutputFormat f) {
  if (f == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& row : rows) {
      json j{{"param", std::string(to_string(p))}, {"value", row.value}, {"valid", row.report.has_value()}};
      if (row.report) {
        json rep = to_json(*row.report);
        rep.erase("scenario");
        j["report"] = rep;
      } else {
        j["error"] = row.error;
      }
      arr.push_back(j);
    }
    os << arr.dump(2) << '\n';
    return;
  }
  if (f == OutputFormat::Text) {
    os << std::left << std::setw(10) << to_string(p) << std::right;
    for (const char* h : {"bias_gen_P", "rf_gen_P", "memory_P", "managing_P", "total_P", "total_A"})
      os << std::setw(12) << h;
    os << '\n';
    for (const auto& row : rows) {
      os << std::left << std::setw(10) << fmt_num(row.value) << std::right;
      if (!row.report) {
        os << "  invalid: " << row.error << '\n';
        continue;
      }
      const Report& r = *row.report;
      os << std::scientific << std::setprecision(2);
      for (double v : {r.bias_gen.power(), r.rf_gen.power(), r.memory.power_w, r.managing.power_w, r.total_power_w,
                       r.total_area_um2})
        os << std::setw(12) << v;
      os << std::defaultfloat << '\n';
    }
    return;
  }
  os << kSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    os << to_string(p) << ',' << fmt_num(row.value) << ',' << (row.report ? 1 : 0);
    if (row.report) {
      const Report& r = *row.report;
      for (double v : {r.bias_gen.area_um2, r.bias_gen.power(), r.rf_gen.area_um2, r.rf_gen.power(),
                       r.memory.area_um2, r.memory.power_w, r.managing.area_um2, r.managing.power_w,
                       r.total_area_um2, r.total_power_w})
        os << ',' << fmt_num(v);
      os << ",\n";
    } else {
      for (int i = 0; i < 10; ++i) os << ',';
      os << ',' << csv_quote(row.error) << '\n';
    }
  }
}

inline constexpr const char* kDacCsvHeader = "arch,n,area_um2,p_analog_w,p_switch_w,noise_vrms";

inline void write_dac_sweep(std::ostream& os, const std::vector<DacSweepRow>& rows, OutputFormat f) {
  if (f == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"arch", std::string(to_string(r.arch))}, {"n", r.n}, {"area_um2", r.area_um2},
                     {"p_analog_w", r.p_analog_w}, {"p_switch_w", r.p_switch_w}, {"noise_vrms", r.noise_vrms}});
    os << arr.dump(2) << '\n';
    return;
  }
  const char sep = f == OutputFormat::Csv ? ',' : '\t';
  if (f == OutputFormat::Csv) {
    os << kDacCsvHeader << '\n';
  } else {
    os << "arch\tn\tarea_um2\tp_analog_w\tp_switch_w\tnoise_vrms\n";
  }
  for (const auto& r : rows)
    os << to_string(r.arch) << sep << r.n << sep << fmt_num(r.area_um2) << sep << fmt_num(r.p_analog_w) << sep
       << fmt_num(r.p_switch_w) << sep << fmt_num(r.noise_vrms) << '\n';
}

inline constexpr const char* kBoundsCsvHeader = "name,kind,bound,design_value,satisfied";

inline void write_bounds(std::ostream& os, const std::vector<NamedBound>& bounds, OutputFormat f) {
  auto kind = [](BoundKind k) { return k == BoundKind::MinCapacitance ? "min_capacitance_f" : "max_resistance_ohm"; };
  if (f == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& b : bounds)
      arr.push_back({{"name", b.name}, {"kind", kind(b.bound.kind)}, {"bound", b.bound.value},
                     {"design_value", b.design_value}, {"satisfied", b.satisfied},
                     {"binding", {{"n", b.bound.binding.n}, {"channels", b.bound.binding.channels},
                                  {"dv", b.bound.binding.dv}, {"t", b.bound.binding.t}, {"b", b.bound.binding.b}}}});
    os << arr.dump(2) << '\n';
  } else if (f == OutputFormat::Csv) {
    os << kBoundsCsvHeader << '\n';
    for (const auto& b : bounds)
      os << b.name << ',' << kind(b.bound.kind) << ',' << fmt_num(b.bound.value) << ',' << fmt_num(b.design_value)
         << ',' << (b.satisfied ? 1 : 0) << '\n';
  } else {
    for (const auto& b : bounds)
      os << std::left << std::setw(22) << b.name << std::right << std::setw(20) << kind(b.bound.kind)
         << std::setw(14) << fmt_num(b.bound.value) << std::setw(14) << fmt_num(b.design_value)
         << (b.satisfied ? "  ok" : "  VIOLATED") << '\n';
  }
}

inline std::string sig2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

inline void write_capacity(std::ostream& os, const CapacityResult& c, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      os << json{{"budget_w", c.budget_w}, {"per_qubit_w", c.per_qubit_w}, {"n_qubits", c.n_qubits}}.dump(2)
         << '\n';
      break;
    case OutputFormat::Csv:
      os << "budget_w,per_qubit_w,n_qubits\n"
         << fmt_num(c.budget_w) << ',' << fmt_num(c.per_qubit_w) << ',' << c.n_qubits << '\n';
      break;
    case OutputFormat::Text:
      os << c.n_qubits << '\n';
      break;
  }
}

}  // namespace cryoctl

#pragma once

// JSON scenario files. Schema: docs/scenario-schema.md. Unknown keys are
// rejected so that a misspelled field never silently falls back to a default.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cryoctl/errors.hpp"
#include "cryoctl/tech.hpp"
#include "cryoctl/temperature.hpp"

namespace cryoctl {

using json = nlohmann::ordered_json;

namespace detail {

/// Reads the keys of one JSON object and remembers which were consumed, so
/// finish() can reject anything left over.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj_.is_object()) throw ParseError(where() + "expected a JSON object");
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const json& raw(const char* key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  void number(const char* key, double& out) {
    if (!obj_.contains(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) throw ParseError(where(key) + "expected a number");
    out = v.get<double>();
  }

  void integer(const char* key, int& out) {
    if (!obj_.contains(key)) return;
    const json& v = raw(key);
    if (v.is_number_integer()) {
      out = v.get<int>();
    } else if (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()))) {
      out = static_cast<int>(v.get<double>());
    } else {
      throw ParseError(where(key) + "expected an integer");
    }
  }

  /// A number, or the string "auto" for a derived value.
  void number_or_auto(const char* key, std::optional<double>& out) {
    if (!obj_.contains(key)) return;
    const json& v = raw(key);
    if (v.is_string() && v.get<std::string>() == "auto") {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      throw ParseError(where(key) + "expected a number or \"auto\"");
    }
  }

  void string(const char* key, std::string& out) {
    if (!obj_.contains(key)) return;
    const json& v = raw(key);
    if (!v.is_string()) throw ParseError(where(key) + "expected a string");
    out = v.get<std::string>();
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ParseError(where() + "unknown key '" + it.key() + "'");
    }
  }

 private:
  std::string where(const char* key = nullptr) const {
    std::string s = context_.empty() ? std::string() : context_;
    if (key) s += (s.empty() ? "" : ".") + std::string(key);
    return s.empty() ? std::string() : s + ": ";
  }

  const json& obj_;
  std::string context_;
  std::set<std::string> seen_;
};

inline void read(const json& j, SystemSpec& s) {
  FieldReader r(j, "spec");
  r.integer("n_bias_signals", s.n_bias_signals);
  r.number("v_range_bias", s.v_range_bias);
  r.number("dv_bias", s.dv_bias);
  r.integer("n_bias", s.n_bias);
  r.integer("n_rf_signals", s.n_rf_signals);
  r.number("v_range_rf", s.v_range_rf);
  r.integer("n_rf", s.n_rf);
  r.number("dv_rf", s.dv_rf);
  r.number("f_sample_rf", s.f_sample_rf);
  r.integer("l_pulse", s.l_pulse);
  r.integer("n_pulses", s.n_pulses);
  r.finish();
}

inline void read(const json& j, TechnologyParams& t) {
  FieldReader r(j, "tech");
  r.number("rho_r", t.rho_r);
  r.number("rho_c", t.rho_c);
  r.number("a_mos", t.a_mos);
  r.number("c_mos", t.c_mos);
  r.number("r_off", t.r_off);
  r.number("r_on", t.r_on);
  r.number("r_min", t.r_min);
  r.number("c_min", t.c_min);
  r.number("v_dd", t.v_dd);
  r.number("c_ff_equiv", t.c_ff_equiv);
  r.number("a_ff", t.a_ff);
  r.number("c_sram_bit", t.c_sram_bit);
  r.number("a_sram_cell", t.a_sram_cell);
  r.number("logic_area_scale", t.logic_area_scale);
  r.number("sram_area_scale", t.sram_area_scale);
  r.number("cap_density_scale", t.cap_density_scale);
  r.number("digital_cap_scale", t.digital_cap_scale);
  r.number("r_off_multiplier", t.r_off_multiplier);
  r.finish();
}

inline void read(const json& j, OperatingPoint& op) {
  FieldReader r(j, "op");
  r.number("t_el", op.t_el);
  r.number("v_dd", op.v_dd);
  r.number_or_auto("f_clk_bias", op.f_clk_bias);
  r.number_or_auto("f_clk_rf", op.f_clk_rf);
  r.number("b_bias", op.b_bias);
  r.number("b_rf", op.b_rf);
  r.number("sigma_biasmem", op.sigma_biasmem);
  r.number("sigma_rfmem", op.sigma_rfmem);
  r.number("sigma_con", op.sigma_con);
  r.finish();
}

inline void read(const json& j, DacUnits& u, const std::string& ctx) {
  FieldReader r(j, ctx);
  r.number("cap", u.cap);
  r.number("kelvin_res", u.kelvin_res);
  r.number("ladder_res", u.ladder_res);
  r.finish();
}

inline void read(const json& j, AnalogSizing& a) {
  FieldReader r(j, "sizing");
  r.number("c_hold", a.c_hold);
  if (r.has("bias_dac")) read(r.raw("bias_dac"), a.bias_dac, "sizing.bias_dac");
  if (r.has("rf_dac")) read(r.raw("rf_dac"), a.rf_dac, "sizing.rf_dac");
  r.finish();
}

inline void read(const json& j, BudgetAllowances& b) {
  FieldReader r(j, "budget");
  if (r.has("logic_allowance")) {
    FieldReader l(r.raw("logic_allowance"), "budget.logic_allowance");
    l.number("data_input_control", b.data_input_control_logic);
    l.number("clock_control", b.clock_control_logic);
    l.number("bias_control", b.bias_control_logic);
    l.number("rf_control", b.rf_control_logic);
    l.finish();
  }
  if (r.has("mux_periphery")) {
    FieldReader m(r.raw("mux_periphery"), "budget.mux_periphery");
    m.number("flip_flop", b.mux_periphery_logic_ff);
    m.number("sram", b.mux_periphery_logic_sram);
    m.finish();
  }
  r.number("sram_periphery_transistors", b.sram_periphery_transistors);
  r.number("latch_ff_fraction", b.latch_ff_fraction);
  r.finish();
}

inline std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json_text(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(origin) + ": " + line_context(text, e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline BudgetAllowances budget_from_json(const json& j) {
  BudgetAllowances b;
  detail::read(j, b);
  validate(b);
  return b;
}

inline BudgetAllowances load_budget(const std::filesystem::path& path) {
  std::string text = detail::read_file(path);
  return budget_from_json(detail::parse_json_text(text, path.string()));
}

/// Builds a validated scenario from parsed JSON. Application order: built-in
/// defaults, node scaling, explicit overrides, then temperature resizing.
/// `base_dir` resolves a budget given as a relative file path.
inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  detail::FieldReader r(j, "");
  Scenario s;
  std::string defaults = "paper";
  r.string("defaults", defaults);
  if (defaults != "paper") throw ParseError("defaults: only \"paper\" is supported");
  r.string("name", s.name);
  if (r.has("node")) {
    const json& n = r.raw("node");
    if (!n.is_string()) throw ParseError("node: expected a string");
    s.tech = apply_node(s.tech, parse_node(n.get<std::string>()));
  }
  if (r.has("spec")) detail::read(r.raw("spec"), s.spec);
  if (r.has("tech")) detail::read(r.raw("tech"), s.tech);
  if (r.has("op")) detail::read(r.raw("op"), s.op);
  if (r.has("sizing")) detail::read(r.raw("sizing"), s.sizing);
  std::string arch;
  if (r.has("memory_arch")) {
    r.string("memory_arch", arch);
    s.memory_arch = parse_memory_arch(arch);
  }
  if (r.has("bias_dac_arch")) {
    r.string("bias_dac_arch", arch);
    s.bias_dac_arch = parse_dac_arch(arch);
  }
  if (r.has("rf_dac_arch")) {
    r.string("rf_dac_arch", arch);
    s.rf_dac_arch = parse_dac_arch(arch);
  }
  if (r.has("budget")) {
    const json& b = r.raw("budget");
    if (b.is_string()) {
      s.budget = load_budget(base_dir / b.get<std::string>());
    } else {
      detail::read(b, s.budget);
    }
  }
  std::optional<double> adjust;
  if (r.has("adjust_temperature")) {
    const json& t = r.raw("adjust_temperature");
    if (!t.is_number()) throw ParseError("adjust_temperature: expected a number (kelvin)");
    adjust = t.get<double>();
  }
  r.finish();
  validate(s);
  if (adjust) s = temperature_adjust(s, *adjust);
  return s;
}

inline Scenario parse_scenario(std::string_view text, std::string_view origin = "<scenario>",
                               const std::filesystem::path& base_dir = {}) {
  return scenario_from_json(detail::parse_json_text(text, origin), base_dir);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::string text = detail::read_file(path);
  return parse_scenario(text, path.string(), path.parent_path());
}

inline json to_json(const BudgetAllowances& b) {
  json j;
  j["logic_allowance"] = {{"data_input_control", b.data_input_control_logic},
                          {"clock_control", b.clock_control_logic},
                          {"bias_control", b.bias_control_logic},
                          {"rf_control", b.rf_control_logic}};
  j["mux_periphery"] = {{"flip_flop", b.mux_periphery_logic_ff}, {"sram", b.mux_periphery_logic_sram}};
  j["sram_periphery_transistors"] = b.sram_periphery_transistors;
  j["latch_ff_fraction"] = b.latch_ff_fraction;
  return j;
}

/// Fully resolved form: every field written, no node or temperature
/// directives, so reloading yields an identical Scenario.
inline json to_json(const Scenario& s) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json("auto"); };
  auto units = [](const DacUnits& u) {
    return json{{"cap", u.cap}, {"kelvin_res", u.kelvin_res}, {"ladder_res", u.ladder_res}};
  };
  json j;
  j["name"] = s.name;
  j["spec"] = {{"n_bias_signals", s.spec.n_bias_signals}, {"v_range_bias", s.spec.v_range_bias},
               {"dv_bias", s.spec.dv_bias}, {"n_bias", s.spec.n_bias},
               {"n_rf_signals", s.spec.n_rf_signals}, {"v_range_rf", s.spec.v_range_rf},
               {"n_rf", s.spec.n_rf}, {"dv_rf", s.spec.dv_rf}, {"f_sample_rf", s.spec.f_sample_rf},
               {"l_pulse", s.spec.l_pulse}, {"n_pulses", s.spec.n_pulses}};
  const auto& t = s.tech;
  j["tech"] = {{"rho_r", t.rho_r}, {"rho_c", t.rho_c}, {"a_mos", t.a_mos}, {"c_mos", t.c_mos},
               {"r_off", t.r_off}, {"r_on", t.r_on}, {"r_min", t.r_min}, {"c_min", t.c_min},
               {"v_dd", t.v_dd}, {"c_ff_equiv", t.c_ff_equiv}, {"a_ff", t.a_ff},
               {"c_sram_bit", t.c_sram_bit}, {"a_sram_cell", t.a_sram_cell},
               {"logic_area_scale", t.logic_area_scale}, {"sram_area_scale", t.sram_area_scale},
               {"cap_density_scale", t.cap_density_scale}, {"digital_cap_scale", t.digital_cap_scale},
               {"r_off_multiplier", t.r_off_multiplier}};
  const auto& op = s.op;
  j["op"] = {{"t_el", op.t_el}, {"v_dd", op.v_dd}, {"f_clk_bias", opt(op.f_clk_bias)},
             {"f_clk_rf", opt(op.f_clk_rf)}, {"b_bias", op.b_bias}, {"b_rf", op.b_rf},
             {"sigma_biasmem", op.sigma_biasmem}, {"sigma_rfmem", op.sigma_rfmem},
             {"sigma_con", op.sigma_con}};
  j["sizing"] = {{"c_hold", s.sizing.c_hold}, {"bias_dac", units(s.sizing.bias_dac)},
                 {"rf_dac", units(s.sizing.rf_dac)}};
  j["memory_arch"] = std::string(to_string(s.memory_arch));
  j["bias_dac_arch"] = std::string(to_string(s.bias_dac_arch));
  j["rf_dac_arch"] = std::string(to_string(s.rf_dac_arch));
  j["budget"] = to_json(s.budget);
  return j;
}

inline void save_scenario(const std::filesystem::path& path, const Scenario& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << to_json(s).dump(2) << '\n';
}

}  // namespace cryoctl

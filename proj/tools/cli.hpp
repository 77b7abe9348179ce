#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code: 0 ok, 1 usage/validation error,
// 2 runtime error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cryoctl/cryoctl.hpp"

namespace cryoctl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Failure while producing output (as opposed to bad input).
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Scenario scenario_or_default(const std::string& path) {
  return path.empty() ? Scenario{} : load_scenario(path);
}

/// "a:b:n" → n evenly spaced values from a to b inclusive.
inline std::vector<double> parse_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ValidationError("--range expects start:stop:count, got '" + spec + "'");
  double a = 0, b = 0;
  long n = 0;
  try {
    a = std::stod(parts[0]);
    b = std::stod(parts[1]);
    n = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ValidationError("--range expects numbers, got '" + spec + "'");
  }
  if (n < 1) throw ValidationError("--range count must be at least 1");
  std::vector<double> v;
  for (long i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

/// Writes to `path` when given ("-" or empty means `fallback`).
template <class F>
void emit_to(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RuntimeFailure("cannot write '" + path + "'");
  write(f);
  if (!f) throw RuntimeFailure("error writing '" + path + "'");
}

inline void check_format(const std::string& f, std::initializer_list<const char*> allowed, const char* cmd) {
  for (const char* a : allowed)
    if (f == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw ValidationError(std::string(cmd) + " supports --format " + list + ", got '" + f + "'");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Area, power and noise estimator and behavioral simulator for cryogenic qubit control electronics",
               "cryoctl"};
  app.require_subcommand(1);
  app.fallthrough(false);

  // bounds
  std::string bounds_scenario, bounds_format = "text";
  auto* bounds = app.add_subcommand("bounds", "Noise-limited sizing bounds for a scenario");
  bounds->add_option("--scenario", bounds_scenario, "Scenario JSON (default: built-in defaults)");
  bounds->add_option("--format", bounds_format, "json|csv|text")->capture_default_str();

  // estimate
  std::string est_scenario, est_out, est_budget, est_format = "json";
  bool est_data_input = false;
  auto* estimate = app.add_subcommand("estimate", "Per-unit and total area/power report");
  estimate->add_option("--scenario", est_scenario, "Scenario JSON (default: built-in defaults)");
  estimate->add_flag("--include-data-input", est_data_input, "Count data input control power");
  estimate->add_option("--digital-budget", est_budget, "Budget JSON overriding the scenario's budget");
  estimate->add_option("--out", est_out, "Output file (default: stdout)");
  estimate->add_option("--format", est_format, "json|csv|text")->capture_default_str();

  // sweep
  std::string sw_scenario, sw_param = "v_dd", sw_points, sw_range, sw_csv, sw_unit = "system",
                           sw_conditions = "bias", sw_format = "csv";
  int sw_n_min = 2, sw_n_max = 16;
  unsigned sw_threads = 0;
  bool sw_data_input = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep emitting plot-ready rows");
  sweep_cmd->add_option("--scenario", sw_scenario, "Base scenario JSON (default: built-in defaults)");
  sweep_cmd->add_option("--unit", sw_unit, "system|dac")->capture_default_str();
  sweep_cmd->add_option("--param", sw_param, "n_bias|n_rf|v_dd (system sweeps)")->capture_default_str();
  auto* points_opt = sweep_cmd->add_option("--points", sw_points, "Comma-separated values");
  auto* range_opt = sweep_cmd->add_option("--range", sw_range, "start:stop:count");
  points_opt->excludes(range_opt);
  sweep_cmd->add_option("--conditions", sw_conditions, "bias|rf operating conditions (dac sweeps)")
      ->capture_default_str();
  sweep_cmd->add_option("--n-min", sw_n_min, "Lowest DAC resolution (dac sweeps)")->capture_default_str();
  sweep_cmd->add_option("--n-max", sw_n_max, "Highest DAC resolution (dac sweeps)")->capture_default_str();
  sweep_cmd->add_option("--threads", sw_threads, "Worker threads (0: hardware concurrency)");
  sweep_cmd->add_flag("--include-data-input", sw_data_input, "Count data input control power");
  sweep_cmd->add_option("--csv", sw_csv, "Output file (default: stdout)");
  sweep_cmd->add_option("--format", sw_format, "json|csv|text")->capture_default_str();

  // capacity
  std::string cap_scenario, cap_format = "text";
  double cap_budget = 0.0;
  std::optional<double> cap_per_qubit;
  auto* capacity = app.add_subcommand("capacity", "Qubits supported by a cooling budget");
  capacity->add_option("--budget", cap_budget, "Cooling power in W")->required();
  auto* cap_scen_opt = capacity->add_option("--scenario", cap_scenario, "Scenario JSON (default: built-in defaults)");
  auto* cap_pq_opt = capacity->add_option("--per-qubit", cap_per_qubit, "Per-qubit dissipation in W");
  cap_scen_opt->excludes(cap_pq_opt);
  capacity->add_option("--format", cap_format, "json|csv|text")->capture_default_str();

  // simulate
  std::string sim_scenario, sim_stimulus, sim_until = "200us", sim_trace, sim_vcd, sim_format = "text";
  bool sim_no_clock = false;
  auto* simulate = app.add_subcommand("simulate", "Cycle-level simulation of the control logic");
  simulate->add_option("--scenario", sim_scenario, "Scenario JSON (default: built-in defaults)");
  simulate->add_option("--stimulus", sim_stimulus, "Stimulus file (default: none)");
  simulate->add_option("--until", sim_until, "End time, e.g. 200us, 1ms, 5000 (ns)")->capture_default_str();
  simulate->add_option("--trace", sim_trace, "Trace CSV output ('-' for stdout)");
  simulate->add_option("--vcd", sim_vcd, "Value-change dump output");
  simulate->add_flag("--no-clock-events", sim_no_clock, "Omit clock edges from the trace");
  simulate->add_option("--format", sim_format, "json|text summary")->capture_default_str();

  if (args.empty()) {
    err << app.help();
    return kExitValidation;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitValidation;
  }

  try {
    if (*bounds) {
      detail::check_format(bounds_format, {"json", "csv", "text"}, "bounds");
      write_bounds(out, sizing_bounds(detail::scenario_or_default(bounds_scenario)), parse_format(bounds_format));
    } else if (*estimate) {
      detail::check_format(est_format, {"json", "csv", "text"}, "estimate");
      Scenario s = detail::scenario_or_default(est_scenario);
      if (!est_budget.empty()) s.budget = load_budget(est_budget);
      const Report r = assemble(s, est_data_input);
      detail::emit_to(est_out, out, [&](std::ostream& os) { write_report(os, r, parse_format(est_format)); });
    } else if (*sweep_cmd) {
      detail::check_format(sw_format, {"json", "csv", "text"}, "sweep");
      const Scenario s = detail::scenario_or_default(sw_scenario);
      const OutputFormat fmt = parse_format(sw_format);
      if (sw_unit == "dac") {
        if (sw_n_min < 2 || sw_n_max > 24 || sw_n_min > sw_n_max)
          throw ValidationError("--n-min/--n-max must satisfy 2 <= n-min <= n-max <= 24");
        DacConditions c;
        if (sw_conditions == "bias") {
          c = bias_conditions(s);
        } else if (sw_conditions == "rf") {
          c = rf_conditions(s);
        } else {
          throw ValidationError("--conditions must be bias|rf, got '" + sw_conditions + "'");
        }
        const auto rows = dac_sweep(c, s.tech, sw_n_min, sw_n_max);
        detail::emit_to(sw_csv, out, [&](std::ostream& os) { write_dac_sweep(os, rows, fmt); });
      } else if (sw_unit == "system") {
        const SweepParam p = parse_sweep_param(sw_param);
        std::vector<double> values;
        if (!sw_range.empty()) {
          values = detail::parse_range(sw_range);
        } else if (!sw_points.empty()) {
          std::stringstream ss(sw_points);
          for (std::string tok; std::getline(ss, tok, ',');) {
            try {
              values.push_back(std::stod(tok));
            } catch (const std::exception&) {
              throw ValidationError("--points expects comma-separated numbers, got '" + tok + "'");
            }
          }
        } else {
          throw ValidationError("system sweeps need --points or --range");
        }
        const auto rows = sweep(s, p, values, sw_data_input, sw_threads);
        detail::emit_to(sw_csv, out, [&](std::ostream& os) { write_sweep(os, p, rows, fmt); });
      } else {
        throw ValidationError("--unit must be system|dac, got '" + sw_unit + "'");
      }
    } else if (*capacity) {
      detail::check_format(cap_format, {"json", "csv", "text"}, "capacity");
      const CapacityResult c = cap_per_qubit
                                   ? qubit_capacity(*cap_per_qubit, cap_budget)
                                   : qubit_capacity(assemble(detail::scenario_or_default(cap_scenario)), cap_budget);
      write_capacity(out, c, parse_format(cap_format));
    } else if (*simulate) {
      detail::check_format(sim_format, {"json", "text"}, "simulate");
      const Scenario s = detail::scenario_or_default(sim_scenario);
      sim::SimOptions opt;
      opt.t_end_fs = sim::parse_duration(sim_until);
      opt.clock_events = !sim_no_clock;
      auto stim = sim_stimulus.empty() ? std::vector<sim::StimulusCommand>{} : sim::load_stimulus(sim_stimulus);
      const sim::SimResult r = sim::run_simulation(s, std::move(stim), opt);
      if (!sim_trace.empty())
        detail::emit_to(sim_trace, out, [&](std::ostream& os) { sim::write_trace_csv(os, r.trace); });
      if (!sim_vcd.empty()) detail::emit_to(sim_vcd, out, [&](std::ostream& os) { sim::write_trace_vcd(os, r.trace); });
      const auto& st = r.stats;
      if (sim_trace == "-" || sim_vcd == "-") return kExitOk;  // stdout carries the trace
      if (sim_format == "json") {
        json j{{"t_end_ns", sim::format_ns(opt.t_end_fs)},
               {"events", r.trace.size()},
               {"rf_edges", st.rf_edges},
               {"bias_edges", st.bias_edges},
               {"words_written", st.words_written},
               {"rx_errors", st.rx_errors},
               {"refreshes", st.refreshes},
               {"bias_errors", st.bias_errors},
               {"rf_samples", st.rf_samples},
               {"rf_commands", st.rf_commands},
               {"rf_backpressure", st.rf_backpressure},
               {"max_deviation_v", st.max_deviation_v},
               {"worst_electrode", st.worst_electrode},
               {"final_voltages_v", r.final_voltages}};
        out << j.dump(2) << '\n';
      } else {
        out << "simulated " << sim::format_ns(opt.t_end_fs) << " ns: " << r.trace.size() << " trace events\n"
            << "words written " << st.words_written << ", rx errors " << st.rx_errors << "\n"
            << "refreshes " << st.refreshes << ", bias errors " << st.bias_errors << "\n"
            << "rf samples " << st.rf_samples << ", commands " << st.rf_commands << ", backpressure "
            << st.rf_backpressure << "\n"
            << "max hold deviation " << fmt_num(st.max_deviation_v) << " V";
        if (st.worst_electrode >= 0) out << " (electrode " << st.worst_electrode << ")";
        out << "\n";
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace cryoctl::cli

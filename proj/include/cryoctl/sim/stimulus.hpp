#pragma once

// Line-based stimulus files:
//   <time_ns> write-bias <reg> <code>
//   <time_ns> write-rf <addr> <code>
//   <time_ns> play <idA> <idB> <idC> <idD>
//   <time_ns> ramp-mode on|off
// '#' starts a comment. Codes may be decimal or 0x-prefixed hex.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "cryoctl/errors.hpp"
#include "cryoctl/sim/protocol.hpp"
#include "cryoctl/sim/trace.hpp"

namespace cryoctl::sim {

enum class CommandKind { WriteBias, WriteRf, Play, RampMode };

struct StimulusCommand {
  TimeFs t_fs = 0;
  CommandKind kind = CommandKind::WriteBias;
  int address = 0;
  std::uint32_t code = 0;
  RfCommandWord play{};
  bool on = false;
  int line = 0;

  bool operator==(const StimulusCommand&) const = default;
};

namespace detail {

[[noreturn]] inline void stim_error(const std::string& source, int line, const std::string& msg) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
}

inline std::uint64_t parse_uint(const std::string& tok, const std::string& source, int line, const char* what) {
  if (tok.empty() || tok[0] == '-' || tok[0] == '+') stim_error(source, line, std::string("invalid ") + what + " '" + tok + "'");
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(tok, &used, 0);
  } catch (const std::exception&) {
    stim_error(source, line, std::string("invalid ") + what + " '" + tok + "'");
  }
  if (used != tok.size()) stim_error(source, line, std::string("invalid ") + what + " '" + tok + "'");
  return v;
}

}  // namespace detail

inline std::vector<StimulusCommand> parse_stimulus(std::istream& in, const std::string& source = "<stimulus>") {
  std::vector<StimulusCommand> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    StimulusCommand c;
    c.line = line;
    double t_ns = 0.0;
    try {
      std::size_t used = 0;
      t_ns = std::stod(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      detail::stim_error(source, line, "invalid time '" + tok[0] + "'");
    }
    if (!std::isfinite(t_ns) || t_ns < 0.0) detail::stim_error(source, line, "time must be a non-negative number of ns");
    c.t_fs = std::llround(t_ns * static_cast<double>(kFsPerNs));
    if (tok.size() < 2) detail::stim_error(source, line, "missing command");

    const std::string& cmd = tok[1];
    auto expect_args = [&](std::size_t n) {
      if (tok.size() != n + 2)
        detail::stim_error(source, line, cmd + " expects " + std::to_string(n) + " argument(s), got " +
                                             std::to_string(tok.size() - 2));
    };
    if (cmd == "write-bias" || cmd == "write-rf") {
      expect_args(2);
      c.kind = cmd == "write-bias" ? CommandKind::WriteBias : CommandKind::WriteRf;
      const auto addr = detail::parse_uint(tok[2], source, line, "register");
      const auto code = detail::parse_uint(tok[3], source, line, "code");
      if (addr > 255) detail::stim_error(source, line, "register " + tok[2] + " out of range");
      if (code > 0xFFFFFFFFull) detail::stim_error(source, line, "code " + tok[3] + " out of range");
      c.address = static_cast<int>(addr);
      c.code = static_cast<std::uint32_t>(code);
    } else if (cmd == "play") {
      expect_args(4);
      c.kind = CommandKind::Play;
      std::uint8_t ids[4];
      for (int i = 0; i < 4; ++i) {
        const auto id = detail::parse_uint(tok[2 + i], source, line, "sequence ID");
        if (id > 255) detail::stim_error(source, line, "sequence ID " + tok[2 + i] + " out of range");
        ids[i] = static_cast<std::uint8_t>(id);
      }
      c.play = {{ids[0], ids[1]}, {ids[2], ids[3]}};
    } else if (cmd == "ramp-mode") {
      expect_args(1);
      c.kind = CommandKind::RampMode;
      if (tok[2] == "on") {
        c.on = true;
      } else if (tok[2] != "off") {
        detail::stim_error(source, line, "ramp-mode expects on|off, got '" + tok[2] + "'");
      }
    } else {
      detail::stim_error(source, line, "unknown command '" + cmd + "'");
    }
    out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t_fs < b.t_fs; });
  return out;
}

inline std::vector<StimulusCommand> parse_stimulus(const std::string& text, const std::string& source = "<stimulus>") {
  std::istringstream in(text);
  return parse_stimulus(in, source);
}

inline std::vector<StimulusCommand> load_stimulus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stimulus file '" + path + "'");
  return parse_stimulus(in, path);
}

/// "200us", "1.5 ms", "40000" (ns) → femtoseconds.
inline TimeFs parse_duration(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("invalid duration '" + s + "'");
  }
  std::string unit = s.substr(used);
  unit.erase(std::remove(unit.begin(), unit.end(), ' '), unit.end());
  double scale = 0.0;
  if (unit.empty() || unit == "ns") scale = 1e6;
  else if (unit == "fs") scale = 1.0;
  else if (unit == "ps") scale = 1e3;
  else if (unit == "us") scale = 1e9;
  else if (unit == "ms") scale = 1e12;
  else if (unit == "s") scale = 1e15;
  else throw ValidationError("unknown duration unit '" + unit + "' (use fs|ps|ns|us|ms|s)");
  if (!std::isfinite(v) || v <= 0.0) throw ValidationError("duration must be positive");
  return std::llround(v * scale);
}

}  // namespace cryoctl::sim

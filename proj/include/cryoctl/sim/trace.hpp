#pragma once

// Value-change trace: ordered (time, signal, value) events with interned
// signal names. Time is integer femtoseconds.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cryoctl::sim {

using TimeFs = std::int64_t;

inline constexpr TimeFs kFsPerNs = 1'000'000;

struct TraceEvent {
  TimeFs t_fs = 0;
  std::uint32_t signal = 0;
  double value = 0.0;

  bool operator==(const TraceEvent&) const = default;
};

class Trace {
 public:
  void emit(TimeFs t, std::string_view signal, double value) {
    events_.push_back({t, intern(signal), value});
  }

  const std::vector<TraceEvent>& events() const { return events_; }
  const std::vector<std::string>& signals() const { return names_; }
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  /// Events of one signal, in order.
  std::vector<TraceEvent> of(std::string_view signal) const {
    std::vector<TraceEvent> out;
    auto it = ids_.find(std::string(signal));
    if (it == ids_.end()) return out;
    for (const auto& e : events_)
      if (e.signal == it->second) out.push_back(e);
    return out;
  }

  bool operator==(const Trace& o) const { return names_ == o.names_ && events_ == o.events_; }

 private:
  std::uint32_t intern(std::string_view s) {
    auto [it, inserted] = ids_.try_emplace(std::string(s), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(s);
    return it->second;
  }

  std::vector<TraceEvent> events_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Exact decimal nanoseconds from femtoseconds, six fractional digits.
inline std::string format_ns(TimeFs t) {
  const bool neg = t < 0;
  const std::uint64_t a = neg ? static_cast<std::uint64_t>(-t) : static_cast<std::uint64_t>(t);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%" PRIu64 ".%06" PRIu64, neg ? "-" : "", a / kFsPerNs, a % kFsPerNs);
  return buf;
}

inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& os, const Trace& tr) {
  os << "t_ns,signal,value\n";
  for (const auto& e : tr.events()) os << format_ns(e.t_fs) << ',' << tr.name(e.signal) << ',' << format_value(e.value) << '\n';
}

/// Value-change dump with real-valued variables and a 1 fs timescale.
inline void write_trace_vcd(std::ostream& os, const Trace& tr) {
  auto code = [](std::uint32_t id) {
    std::string c;
    do {
      c += static_cast<char>('!' + id % 94);
      id /= 94;
    } while (id != 0);
    return c;
  };
  os << "$timescale 1 fs $end\n$scope module cryoctl $end\n";
  for (std::uint32_t i = 0; i < tr.signals().size(); ++i)
    os << "$var real 64 " << code(i) << ' ' << tr.name(i) << " $end\n";
  os << "$upscope $end\n$enddefinitions $end\n";
  TimeFs last = -1;
  for (const auto& e : tr.events()) {
    if (e.t_fs != last) {
      os << '#' << e.t_fs << '\n';
      last = e.t_fs;
    }
    os << 'r' << format_value(e.value) << ' ' << code(e.signal) << '\n';
  }
}

}  // namespace cryoctl::sim

#include "delopt/delay_sim.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <utility>

namespace delopt {

namespace {

std::vector<int> validated(std::vector<int> delays) {
  if (delays.empty()) throw ScheduleError("schedule must cover at least one round");
  for (int d : delays)
    if (d < 1) throw ScheduleError("every delay must be at least 1");
  return delays;
}

int parse_positive_int(std::string_view text, const char* what) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || value < 1)
    throw ScheduleError(std::string(what) + ": expected a positive integer, got '" +
                        std::string(text) + "'");
  return value;
}

}  // namespace

DelaySchedule::DelaySchedule(Kind kind, std::vector<int> delays)
    : kind_(kind), delays_(validated(std::move(delays))) {
  max_delay_ = *std::max_element(delays_.begin(), delays_.end());
}

DelaySchedule DelaySchedule::unit(int horizon) {
  if (horizon < 1) throw ScheduleError("horizon must be at least 1");
  return DelaySchedule(Kind::unit, std::vector<int>(horizon, 1));
}

DelaySchedule DelaySchedule::constant(int delay, int horizon) {
  if (horizon < 1) throw ScheduleError("horizon must be at least 1");
  if (delay < 1) throw ScheduleError("every delay must be at least 1");
  return DelaySchedule(Kind::constant, std::vector<int>(horizon, delay));
}

DelaySchedule DelaySchedule::periodic(std::vector<int> pattern, int horizon) {
  if (horizon < 1) throw ScheduleError("horizon must be at least 1");
  pattern = validated(std::move(pattern));
  std::vector<int> delays(horizon);
  for (int t = 0; t < horizon; ++t) delays[t] = pattern[t % pattern.size()];
  return DelaySchedule(Kind::periodic, std::move(delays));
}

DelaySchedule DelaySchedule::custom(std::vector<int> delays) {
  return DelaySchedule(Kind::custom, std::move(delays));
}

int DelaySchedule::delay(int t) const {
  if (t < 1 || t > horizon())
    throw ParameterError("round index outside [1, horizon]");
  return delays_[static_cast<std::size_t>(t - 1)];
}

long long DelaySchedule::delay_sum() const {
  long long sum = 0;
  for (int d : delays_) sum += d;
  return sum;
}

DelaySchedule parse_schedule_pattern(const std::string& pattern, int horizon) {
  if (pattern == "unit") return DelaySchedule::unit(horizon);
  if (pattern.rfind("constant:", 0) == 0)
    return DelaySchedule::constant(
        parse_positive_int(std::string_view(pattern).substr(9), "constant delay"),
        horizon);
  if (pattern.rfind("periodic:", 0) == 0) {
    std::vector<int> entries;
    std::string_view rest = std::string_view(pattern).substr(9);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      entries.push_back(parse_positive_int(rest.substr(0, comma), "periodic delay"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (entries.empty()) throw ScheduleError("periodic pattern must list at least one delay");
    return DelaySchedule::periodic(std::move(entries), horizon);
  }
  throw ScheduleError("unrecognized schedule pattern '" + pattern +
                      "' (expected unit, constant:<d> or periodic:<d1,d2,...>)");
}

std::vector<int> read_delay_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schedule file '" + path + "'");
  std::vector<int> delays;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    delays.push_back(parse_positive_int(
        line, ("schedule file line " + std::to_string(lineno)).c_str()));
  }
  if (delays.empty()) throw ScheduleError("schedule file '" + path + "' is empty");
  return delays;
}

const std::vector<int>& ArrivalSets::at(int t) const {
  if (t < 1 || t > last_round())
    throw ParameterError("arrival round outside [1, T + d - 1]");
  return sets[static_cast<std::size_t>(t)];
}

ArrivalSets arrival_sets(const DelaySchedule& schedule) {
  const int horizon = schedule.horizon();
  const int last = horizon + schedule.max_delay() - 1;
  ArrivalSets out;
  out.horizon = horizon;
  out.max_delay = schedule.max_delay();
  out.sets.resize(static_cast<std::size_t>(last) + 1);
  // Walking k upward appends to each F_t in ascending order.
  for (int k = 1; k <= horizon; ++k)
    out.sets[static_cast<std::size_t>(k + schedule.delay(k) - 1)].push_back(k);
  out.first_arrival = 0;
  for (int t = 1; t <= last; ++t) {
    if (!out.sets[static_cast<std::size_t>(t)].empty()) {
      out.first_arrival = t;
      break;
    }
  }
  return out;
}

}  // namespace delopt

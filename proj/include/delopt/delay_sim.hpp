#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "delopt/errors.hpp"

namespace delopt {

// Per-round feedback delays d_t >= 1. The feedback queried at round t
// becomes available at round t + d_t - 1, so d_t = 1 means "same round".
class DelaySchedule {
 public:
  enum class Kind { unit, constant, periodic, custom };

  static DelaySchedule unit(int horizon);
  static DelaySchedule constant(int delay, int horizon);
  // Repeats the pattern cyclically until the horizon is covered.
  static DelaySchedule periodic(std::vector<int> pattern, int horizon);
  static DelaySchedule custom(std::vector<int> delays);

  Kind kind() const { return kind_; }
  int horizon() const { return static_cast<int>(delays_.size()); }
  int delay(int t) const;  // d_t for t in [1, horizon]
  int max_delay() const { return max_delay_; }
  long long delay_sum() const;  // D = sum_t d_t
  std::span<const int> delays() const { return delays_; }

 private:
  DelaySchedule(Kind kind, std::vector<int> delays);

  Kind kind_;
  std::vector<int> delays_;
  int max_delay_;
};

// Parses "unit", "constant:<d>" or "periodic:<comma separated delays>".
DelaySchedule parse_schedule_pattern(const std::string& pattern, int horizon);

// Reads one positive integer per line. Blank lines are rejected; length
// validation against a horizon happens where the schedule is built.
std::vector<int> read_delay_lines(const std::string& path);

// Arrival sets F_t = {k : k + d_k - 1 = t} for t in [1, T + d - 1], sorted
// ascending, where d is the largest delay. first_arrival is the earliest
// round with a non-empty set; it never exceeds d because round 1 feedback
// lands at round d_1 <= d.
struct ArrivalSets {
  std::vector<std::vector<int>> sets;  // index 0 unused; index t holds F_t
  int first_arrival;
  int horizon;
  int max_delay;

  int last_round() const { return horizon + max_delay - 1; }
  const std::vector<int>& at(int t) const;
};

ArrivalSets arrival_sets(const DelaySchedule& schedule);

enum class FeedbackMode { anonymous, stamped };

template <typename Payload>
struct StampedPayload {
  int stamp;  // the round the payload was queried at
  Payload payload;
};

// In-flight feedback queue. An entry enqueued at round k with delay d_k is
// held until round k + d_k - 1 and handed out exactly once. Anonymous
// buffers never record the query round, so nothing downstream can recover
// it; stamped buffers return it alongside each payload. Rounds must be
// drained in strictly increasing order. Single-owner mutable state: one
// simulation run drives one buffer.
template <typename Payload>
class FeedbackBuffer {
 public:
  explicit FeedbackBuffer(FeedbackMode mode) : mode_(mode) {}

  FeedbackMode mode() const { return mode_; }

  void enqueue(int k, int d_k, Payload payload) {
    if (k < 1) throw ParameterError("query round must be at least 1");
    if (d_k < 1) throw ScheduleError("delay must be at least 1");
    Entry entry{std::move(payload), std::nullopt};
    if (mode_ == FeedbackMode::stamped) entry.stamp = k;
    in_flight_[k + d_k - 1].push_back(std::move(entry));
  }

  // Everything arriving at round t, removed from the buffer. Entries come
  // back in enqueue order, which is ascending query round when rounds are
  // played in order.
  std::vector<Payload> deliver(int t) {
    std::vector<Entry> entries = take(t);
    std::vector<Payload> out;
    out.reserve(entries.size());
    for (Entry& e : entries) out.push_back(std::move(e.payload));
    return out;
  }

  // Like deliver() but keeps the query-round stamp. Refused on anonymous
  // buffers: the stamp was never stored, and pretending otherwise would
  // invent information the protocol withholds.
  std::vector<StampedPayload<Payload>> deliver_stamped(int t) {
    if (mode_ != FeedbackMode::stamped)
      throw ProtocolError(
          "stamped delivery requested from an anonymous feedback buffer");
    std::vector<Entry> entries = take(t);
    std::vector<StampedPayload<Payload>> out;
    out.reserve(entries.size());
    for (Entry& e : entries) out.push_back({*e.stamp, std::move(e.payload)});
    return out;
  }

  bool empty() const { return in_flight_.empty(); }

  std::size_t pending() const {
    std::size_t n = 0;
    for (const auto& [round, entries] : in_flight_) n += entries.size();
    return n;
  }

 private:
  struct Entry {
    Payload payload;
    std::optional<int> stamp;
  };

  std::vector<Entry> take(int t) {
    if (t < 1) throw ParameterError("delivery round must be at least 1");
    if (t <= last_delivered_)
      throw ProtocolError("rounds must be delivered in increasing order");
    last_delivered_ = t;
    auto it = in_flight_.find(t);
    if (it == in_flight_.end()) return {};
    std::vector<Entry> entries = std::move(it->second);
    in_flight_.erase(it);
    return entries;
  }

  FeedbackMode mode_;
  std::map<int, std::vector<Entry>> in_flight_;
  int last_delivered_ = 0;
};

}  // namespace delopt

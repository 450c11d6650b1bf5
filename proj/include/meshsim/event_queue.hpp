#pragma once

#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

#include "meshsim/types.hpp"

namespace meshsim {

enum class EventKind : std::uint8_t {
  TrafficArrival,
  TxAttemptStart,
  TxAttemptEnd,
  ControlBeacon,
  ProbeTick,
  MeasureRecompute,
  LinkChange,
  SimEnd,
};

const char* to_string(EventKind k);

struct Event {
  SimTime fire_at = 0;
  EventKind kind = EventKind::SimEnd;
  NodeId node = kNoNode;  // primary subject of the event
  int a = 0;              // kind-specific payload (flow id, tx id, ...)
  int b = 0;
  std::uint64_t seq = 0;  // insertion order, assigned by the queue
};

struct EventHandle {
  std::uint64_t seq = 0;
  bool valid() const { return seq != 0; }
};

// Time-ordered event queue.  The processing order is the total order
// (fire_at, insertion seq), so events at equal times pop FIFO.
class EventQueue {
 public:
  // Throws std::invalid_argument if ev.fire_at < now().
  EventHandle schedule(Event ev);

  // Cancelled events are skipped when popped.
  void cancel(EventHandle h);

  // Process all events with fire_at <= end in order, then advance the
  // clock to end.  Returns the final clock.  May be called repeatedly.
  SimTime run_until(SimTime end,
                    const std::function<void(const Event&)>& dispatch);

  SimTime now() const { return now_; }
  std::size_t pending() const { return heap_.size() - cancelled_.size(); }
  bool empty() const { return pending() == 0; }

 private:
  static bool later(const Event& x, const Event& y);  // heap comparator

  std::vector<Event> heap_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::uint64_t next_seq_ = 1;
  SimTime now_ = 0;
};

}  // namespace meshsim

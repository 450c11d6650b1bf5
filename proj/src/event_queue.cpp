#include "meshsim/event_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshsim {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::TrafficArrival: return "TrafficArrival";
    case EventKind::TxAttemptStart: return "TxAttemptStart";
    case EventKind::TxAttemptEnd: return "TxAttemptEnd";
    case EventKind::ControlBeacon: return "ControlBeacon";
    case EventKind::ProbeTick: return "ProbeTick";
    case EventKind::MeasureRecompute: return "MeasureRecompute";
    case EventKind::LinkChange: return "LinkChange";
    case EventKind::SimEnd: return "SimEnd";
  }
  return "?";
}

bool EventQueue::later(const Event& x, const Event& y) {
  if (x.fire_at != y.fire_at) return x.fire_at > y.fire_at;
  return x.seq > y.seq;
}

EventHandle EventQueue::schedule(Event ev) {
  if (ev.fire_at < now_) {
    throw std::invalid_argument("event scheduled in the past");
  }
  ev.seq = next_seq_++;
  heap_.push_back(ev);
  std::push_heap(heap_.begin(), heap_.end(), later);
  return EventHandle{ev.seq};
}

void EventQueue::cancel(EventHandle h) {
  if (h.valid()) cancelled_.insert(h.seq);
}

SimTime EventQueue::run_until(SimTime end,
                              const std::function<void(const Event&)>& dispatch) {
  while (!heap_.empty() && heap_.front().fire_at <= end) {
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Event ev = heap_.back();
    heap_.pop_back();
    if (auto it = cancelled_.find(ev.seq); it != cancelled_.end()) {
      cancelled_.erase(it);
      continue;
    }
    now_ = ev.fire_at;  // never decreases: heap pops in time order
    dispatch(ev);
  }
  now_ = std::max(now_, end);
  return now_;
}

}  // namespace meshsim

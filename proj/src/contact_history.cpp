#include "dtnsim/contact_history.hpp"

#include <algorithm>
#include <string>

namespace dtnsim {

ContactWindow::ContactWindow(Seconds window_size) : window_size_(window_size) {
  if (!(window_size > 0)) throw Error("contact window size must be positive");
}

void ContactWindow::record_encounter(Seconds t) {
  if (in_contact()) throw ContactStateError("encounter at " + std::to_string(t) + " while a contact is open");
  if (!intervals_.empty() && t < *intervals_.back().end)
    throw ContactStateError("encounter at " + std::to_string(t) + " overlaps the previous contact");
  intervals_.push_back({t, std::nullopt});
}

void ContactWindow::record_departure(Seconds t) {
  if (!in_contact()) throw ContactStateError("departure at " + std::to_string(t) + " without an open contact");
  if (t < intervals_.back().start)
    throw ContactStateError("departure at " + std::to_string(t) + " precedes the encounter");
  intervals_.back().end = t;
}

void ContactWindow::slide(Seconds now) {
  if (now < last_slide_) throw ContactStateError("window slid backwards");
  last_slide_ = now;
  const Seconds window_start = now - window_size_;
  std::erase_if(intervals_, [&](const ContactInterval& c) { return !c.open() && *c.end < window_start; });
  for (auto& c : intervals_) c.start = std::max(c.start, window_start);
}

double ContactWindow::link_weight(Seconds now) const {
  const Seconds window_start = now - window_size_;
  Seconds cursor = window_start;
  double integral = 0.0;
  for (const auto& c : intervals_) {
    const Seconds end = c.open() ? now : std::min(*c.end, now);
    if (end < window_start) continue;
    const Seconds gap = std::max(c.start, window_start) - cursor;
    if (gap > 0) integral += gap * gap / 2.0;
    cursor = std::max(cursor, end);
  }
  const Seconds trailing = now - cursor;
  if (trailing > 0) integral += trailing * trailing / 2.0;
  return integral == 0.0 ? kMaxLinkWeight : window_size_ / integral;
}

}  // namespace dtnsim

#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dtnsim/types.hpp"

namespace dtnsim {

/// Weight reported when a peer was in contact for the whole window. Largest
/// finite double, so it still orders correctly against every real weight.
inline constexpr double kMaxLinkWeight = std::numeric_limits<double>::max();

struct ContactInterval {
  Seconds start = 0;
  std::optional<Seconds> end;  ///< nullopt while the contact is ongoing

  [[nodiscard]] bool open() const { return !end.has_value(); }
  friend bool operator==(const ContactInterval&, const ContactInterval&) = default;
};

/// Contact history of one node with one peer, restricted to the last
/// window_size seconds.
///
/// The link weight is window_size / integral of f over the window, where f(t)
/// is the time remaining until the next encounter (0 during contact). The
/// window end acts as the next encounter for the trailing gap, so a gap of
/// length g always contributes g^2 / 2.
class ContactWindow {
 public:
  explicit ContactWindow(Seconds window_size);

  /// Opens a contact at t. Throws ContactStateError if a contact is already
  /// open or t precedes the end of the last contact.
  void record_encounter(Seconds t);
  /// Closes the open contact at t (zero-length contacts are kept).
  void record_departure(Seconds t);
  /// Clips every interval to [now - window_size, now], dropping those that
  /// ended before the window start.
  void slide(Seconds now);

  [[nodiscard]] double link_weight(Seconds now) const;

  [[nodiscard]] bool in_contact() const { return !intervals_.empty() && intervals_.back().open(); }
  [[nodiscard]] std::span<const ContactInterval> intervals() const { return intervals_; }
  [[nodiscard]] Seconds window_size() const { return window_size_; }

 private:
  Seconds window_size_;
  Seconds last_slide_ = -std::numeric_limits<double>::infinity();
  std::vector<ContactInterval> intervals_;
};

}  // namespace dtnsim

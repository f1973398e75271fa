#pragma once

// Discrete, bounded, linear time: points are the integers 0 .. size-1,
// periods are non-empty closed intervals over them.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace chronos {

using TimePoint = int;

struct Period {
  TimePoint lo = 0;
  TimePoint hi = 0;

  constexpr bool contains(TimePoint t) const { return lo <= t && t <= hi; }
  constexpr bool contains(const Period& p) const { return lo <= p.lo && p.hi <= hi; }
  constexpr int length() const { return hi - lo + 1; }

  friend constexpr auto operator<=>(const Period&, const Period&) = default;
};

std::string to_string(const Period& p);
std::ostream& operator<<(std::ostream& os, const Period& p);

/// A convex set of points: either empty or a period.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr PointSet(Period p) : period_(p) {}  // NOLINT(google-explicit-constructor)

  static constexpr PointSet empty_set() { return {}; }

  constexpr bool empty() const { return !period_.has_value(); }
  constexpr bool is_period() const { return period_.has_value(); }
  const Period& period() const { return period_.value(); }
  const std::optional<Period>& as_optional() const { return period_; }

  friend constexpr bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::optional<Period> period_;
};

std::string to_string(const PointSet& s);
std::ostream& operator<<(std::ostream& os, const PointSet& s);

class Timeline {
 public:
  /// Throws ModelError when size < 1.
  explicit Timeline(int size = 1);

  int size() const { return size_; }
  TimePoint first() const { return 0; }
  TimePoint last() const { return size_ - 1; }
  bool on_timeline(TimePoint t) const { return t >= 0 && t < size_; }
  bool on_timeline(const Period& p) const {
    return p.lo >= 0 && p.lo <= p.hi && p.hi < size_;
  }
  Period all() const { return {0, size_ - 1}; }

  /// Undefined (nullopt) at the edges of time.
  std::optional<TimePoint> next(TimePoint t) const;
  std::optional<TimePoint> prev(TimePoint t) const;

  /// Every period ordered by (lo, hi).
  std::vector<Period> periods() const;

  /// Point set of {t | lower <(=) t <(=) upper}; Empty when the bounds cross.
  PointSet interval(TimePoint lower, TimePoint upper, bool lower_closed,
                    bool upper_closed) const;

  friend bool operator==(const Timeline&, const Timeline&) = default;

 private:
  int size_;
};

PointSet intersect(const PointSet& a, const PointSet& b);

/// True iff both are periods and a is contained in b.
bool subper(const PointSet& a, const PointSet& b);

/// Proper subperiod.
bool proper_subper(const Period& a, const Period& b);

/// Members of s not properly contained in another member, in input order.
std::vector<Period> mxlpers(std::span<const Period> s);

}  // namespace chronos

#include "chronos/time.hpp"

#include <algorithm>

#include "chronos/error.hpp"

namespace chronos {

std::string to_string(const Period& p) {
  return "[" + std::to_string(p.lo) + "," + std::to_string(p.hi) + "]";
}

std::ostream& operator<<(std::ostream& os, const Period& p) { return os << to_string(p); }

std::string to_string(const PointSet& s) {
  return s.empty() ? std::string("{}") : to_string(s.period());
}

std::ostream& operator<<(std::ostream& os, const PointSet& s) { return os << to_string(s); }

Timeline::Timeline(int size) : size_(size) {
  if (size < 1) throw ModelError("timeline size must be at least 1");
}

std::optional<TimePoint> Timeline::next(TimePoint t) const {
  if (t < last()) return t + 1;
  return std::nullopt;
}

std::optional<TimePoint> Timeline::prev(TimePoint t) const {
  if (t > first()) return t - 1;
  return std::nullopt;
}

std::vector<Period> Timeline::periods() const {
  std::vector<Period> out;
  out.reserve(static_cast<std::size_t>(size_) * (size_ + 1) / 2);
  for (TimePoint lo = 0; lo < size_; ++lo)
    for (TimePoint hi = lo; hi < size_; ++hi) out.push_back({lo, hi});
  return out;
}

PointSet Timeline::interval(TimePoint lower, TimePoint upper, bool lower_closed,
                            bool upper_closed) const {
  TimePoint lo = std::max(lower_closed ? lower : lower + 1, first());
  TimePoint hi = std::min(upper_closed ? upper : upper - 1, last());
  if (lo > hi) return PointSet::empty_set();
  return Period{lo, hi};
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) return PointSet::empty_set();
  TimePoint lo = std::max(a.period().lo, b.period().lo);
  TimePoint hi = std::min(a.period().hi, b.period().hi);
  if (lo > hi) return PointSet::empty_set();
  return Period{lo, hi};
}

bool subper(const PointSet& a, const PointSet& b) {
  return a.is_period() && b.is_period() && b.period().contains(a.period());
}

bool proper_subper(const Period& a, const Period& b) { return b.contains(a) && a != b; }

std::vector<Period> mxlpers(std::span<const Period> s) {
  std::vector<Period> out;
  for (const Period& p : s) {
    bool dominated = std::any_of(s.begin(), s.end(),
                                 [&](const Period& q) { return proper_subper(p, q); });
    if (!dominated && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace chronos

#pragma once

#include <optional>

#include "chronos/model.hpp"
#include "chronos/top.hpp"

namespace chronos::top {

/// Evaluation index: speech time, event time, localisation time.
struct EvalIndex {
  TimePoint st = 0;
  Period et;
  PointSet lt;
};

/// Throws UnknownFunctor / UnknownPartitioning / UnknownConstant if f
/// mentions something m does not define.
void check_references(const TopModel& m, const Formula& f);

/// Truth of f at a fixed index. g must bind every variable of f
/// (UnboundVariable otherwise).
bool eval_at(const TopModel& m, const EvalIndex& idx, const Assignment& g, const Formula& f);

struct Witness {
  Assignment g;
  Period et;
};

/// Searches every event time and every assignment of f's variables into
/// OBJS, with lt = PTS. Returns the first witness in enumeration order.
std::optional<Witness> find_witness(const TopModel& m, TimePoint st, const Formula& f);

inline bool denot(const TopModel& m, TimePoint st, const Formula& f) {
  return find_witness(m, st, f).has_value();
}

}  // namespace chronos::top

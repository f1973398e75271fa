#pragma once

#include <optional>

#include "chronos/bot.hpp"
#include "chronos/model.hpp"

namespace chronos::bot {

/// Throws UnknownFunctor / UnknownPartitioning / UnknownConstant.
void check_references(const BotModel& m, const Formula& f);

/// nullopt is Undefined (e.g. succ(end), earliest of an empty set).
std::optional<TimePoint> eval_point(const BotModel& m, TimePoint st, const Assignment& g,
                                    const PointExpr& e);

/// nullopt is Undefined; an empty PointSet is a defined value.
std::optional<PointSet> eval_period(const BotModel& m, TimePoint st, const Assignment& g,
                                    const PeriodExpr& e);

/// Atomic formulas with Undefined (or empty where a period is required)
/// arguments are false. Throws UnboundVariable if g misses a variable.
bool eval(const BotModel& m, TimePoint st, const Assignment& g, const Formula& f);

/// First assignment of f's variables into OBJS satisfying f, if any.
std::optional<Assignment> find_witness(const BotModel& m, TimePoint st, const Formula& f);

inline bool denot(const BotModel& m, TimePoint st, const Formula& f) {
  return find_witness(m, st, f).has_value();
}

}  // namespace chronos::bot

#pragma once

#include "chronos/model.hpp"

namespace fixture {

/// Timeline 10, tank5 empty over [2,5], d_jan = [3,4], building spread over
/// [1,2] and [4,5] and culminating.
inline chronos::TopModel m0(std::vector<chronos::Period> empty_periods = {{2, 5}}) {
  using namespace chronos;
  TopModel m;
  m.timeline = Timeline(10);
  m.domain.atoms = {"tank5", "housecorp", "bridge2", "jadams", "ba737"};
  for (const auto& a : m.domain.atoms) m.consts[a] = Atom{a};
  m.consts["d_jan"] = Period{3, 4};
  m.consts["y1997"] = Period{0, 6};
  m.preds[{"empty", 1}][{Atom{"tank5"}}] = std::move(empty_periods);
  m.preds[{"building", 2}][{Atom{"housecorp"}, Atom{"bridge2"}}] = {{1, 2}, {4, 5}};
  m.culms[{"building", 2}][{Atom{"housecorp"}, Atom{"bridge2"}}] = true;
  m.preds[{"inspecting", 2}];
  m.cparts["minute"] = uniform_partitioning(m.timeline, 1);
  m.gparts["fivepm"] = {PartitionKind::Gappy, {{3, 3}, {7, 7}}};
  return m;
}

constexpr chronos::TimePoint st0 = 7;

}  // namespace fixture

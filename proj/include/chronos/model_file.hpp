#pragma once

// Line-oriented text format for TOP models:
//
//   timeline 10            # points 0..9
//   speech 7
//   object tank5
//   periodconst d_jan = [3,4]
//   pred empty/1
//   maximal empty(tank5) = [2,5]
//   culm building(housecorp, bridge2) = true
//   cpart minute = blocks 1
//   gpart fivepm = [3,3] [7,7]

#include <cstdint>
#include <string>
#include <string_view>

#include "chronos/model.hpp"

namespace chronos {

struct ModelFile {
  TopModel model;
  TimePoint speech = 0;

  friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

/// Throws ModelError (with line number) on malformed input or when the
/// compiled model fails validate_model.
ModelFile parse_model_file(std::string_view text);
ModelFile load_model_file(const std::string& path);

/// Canonical text; parse_model_file(serialize_model(f)) == f.
std::string serialize_model(const ModelFile& file);
/// Model declarations only (no speech line).
std::string serialize_model(const TopModel& m);

/// FNV-1a over the canonical serialization.
std::uint64_t model_digest(const TopModel& m);

}  // namespace chronos

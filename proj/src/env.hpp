#pragma once

// Variable environments and the pruned exhaustive search shared by the
// TOP and BOT denotation routines.

#include <optional>
#include <string>
#include <vector>

#include "chronos/model.hpp"

namespace chronos::detail {

/// Kleene truth values; U means "depends on a variable not yet bound".
enum class Tri { F, T, U };

inline Tri tri(bool b) { return b ? Tri::T : Tri::F; }

inline Tri conj(Tri a, Tri b) {
  if (a == Tri::F || b == Tri::F) return Tri::F;
  if (a == Tri::T && b == Tri::T) return Tri::T;
  return Tri::U;
}

class MapEnv {
 public:
  explicit MapEnv(const Assignment& g) : g_(g) {}
  const Object* lookup(const std::string& name) const {
    auto it = g_.find(name);
    return it == g_.end() ? nullptr : &it->second;
  }

 private:
  const Assignment& g_;
};

/// Fixed list of variables, bound in order during search.
class SlotEnv {
 public:
  explicit SlotEnv(std::vector<std::string> names)
      : names_(std::move(names)), values_(names_.size()) {}

  const Object* lookup(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return values_[i] ? &*values_[i] : nullptr;
    return nullptr;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  void bind(std::size_t i, const Object& o) { values_[i] = o; }
  void unbind(std::size_t i) { values_[i].reset(); }

  Assignment to_assignment() const {
    Assignment g;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (values_[i]) g.emplace(names_[i], *values_[i]);
    return g;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::optional<Object>> values_;
};

/// Binds slots left to right over `objects`, calling test() after every
/// binding; subtrees where test() is F are skipped. Returns true with the
/// satisfying bindings left in env.
template <class Test>
bool search(SlotEnv& env, const std::vector<Object>& objects, Test&& test,
            std::size_t slot = 0) {
  Tri t = test();
  if (t == Tri::F) return false;
  if (slot == env.size()) return t == Tri::T;
  for (const Object& o : objects) {
    env.bind(slot, o);
    if (search(env, objects, test, slot + 1)) return true;
  }
  env.unbind(slot);
  return false;
}

}  // namespace chronos::detail

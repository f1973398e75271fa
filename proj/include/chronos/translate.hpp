#pragma once

#include <set>
#include <string>
#include <vector>

#include "chronos/bot.hpp"
#include "chronos/model.hpp"
#include "chronos/top.hpp"

namespace chronos {

/// Deliberate rule corruptions, used to show the equivalence harness can
/// detect semantic drift.
enum class Mutation {
  None,
  DropPastNarrowing,  // Past no longer intersects lambda with [beg,now)
};

struct TranslateOptions {
  EtaMapping eta;
  Mutation mutation = Mutation::None;
};

/// Fresh-name source and eta configuration threaded through one translation.
class TransContext {
 public:
  TransContext(std::set<std::string> used, TranslateOptions options);

  /// `?_<prefix><n>` with n from a single shared counter; never returns a
  /// name in use or previously issued.
  std::string fresh(const std::string& prefix);

  std::pair<std::string, std::string> eta(const std::string& functor) const;
  Mutation mutation() const { return options_.mutation; }

 private:
  std::set<std::string> used_;
  unsigned counter_ = 0;
  TranslateOptions options_;
};

/// One rewrite step: trans(f, eps, lam) as a right-nested conjunction.
bot::Formula trans(const top::Formula& f, const bot::Term& eps, const bot::PeriodExpr& lam,
                   TransContext& ctx);

/// trans(f, eps0, [beg,end]) with eps0 the first fresh variable.
/// Throws EtaCollision if a functor of f clashes with an eta image.
bot::Formula translate(const top::Formula& f, const TranslateOptions& options = {});

}  // namespace chronos

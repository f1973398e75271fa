#include "chronos/translate.hpp"

#include "chronos/error.hpp"

namespace chronos {

namespace {

using bot::Formula;
using bot::PeriodExpr;
using bot::PointExpr;
using bot::Term;

PeriodExpr whole_timeline() { return bot::Interval{bot::Beg{}, bot::End{}, true, true}; }
PeriodExpr now_period() { return bot::Interval{bot::Now{}, bot::Now{}, true, true}; }

PointExpr earliest(const Term& t) { return bot::Earliest{bot::as_period_expr(t)}; }
PointExpr latest(const Term& t) { return bot::Latest{bot::as_period_expr(t)}; }

Term var(const std::string& name) { return Ref::variable(name); }

std::vector<Term> terms(const std::vector<top::Term>& args) {
  return {args.begin(), args.end()};
}

class Rewriter {
 public:
  explicit Rewriter(TransContext& ctx) : ctx_(ctx) {}

  void emit(const top::Formula& f, const Term& eps, const PeriodExpr& lam) {
    std::visit([&](const auto& n) { rule(n, eps, lam); }, f.node);
  }

  std::vector<Formula> out;

 private:
  void add(Formula f) { out.push_back(std::move(f)); }

  void rule(const top::Literal& n, const Term& eps, const PeriodExpr& lam) {
    std::string beta = ctx_.fresh("p");
    add(bot::Subper{bot::as_period_expr(eps), lam});
    auto args = terms(n.args);
    args.push_back(var(beta));
    add(bot::Literal{n.functor, std::move(args)});
    add(bot::Subper{bot::as_period_expr(eps), Ref::variable(beta)});
  }

  void rule(const top::And& n, const Term& eps, const PeriodExpr& lam) {
    emit(*n.lhs, eps, lam);
    emit(*n.rhs, eps, lam);
  }

  void rule(const top::Part& n, const Term&, const PeriodExpr&) {
    add(bot::PartOf{n.partition, var(n.var)});
  }

  void rule(const top::Pres& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::Subper{now_period(), bot::as_period_expr(eps)});
    emit(*n.body, eps, lam);
  }

  void rule(const top::Past& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::Eq{var(n.var), eps});
    if (ctx_.mutation() == Mutation::DropPastNarrowing) {
      emit(*n.body, eps, lam);
      return;
    }
    PeriodExpr past = bot::Interval{bot::Beg{}, bot::Now{}, true, false};
    emit(*n.body, eps, bot::Intersect{lam, past});
  }

  void rule(const top::Culm& n, const Term& eps, const PeriodExpr& lam) {
    auto [culm, span] = ctx_.eta(n.literal.functor);
    add(bot::Subper{bot::as_period_expr(eps), lam});
    add(bot::Literal{culm, terms(n.literal.args)});
    auto args = terms(n.literal.args);
    args.push_back(eps);
    add(bot::Literal{span, std::move(args)});
  }

  void rule(const top::At& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::IsPeriod{n.term});
    emit(*n.body, eps, bot::Intersect{lam, PeriodExpr(n.term)});
  }

  void rule(const top::Before& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::IsPeriod{n.term});
    PeriodExpr before = bot::Interval{bot::Beg{}, earliest(n.term), true, false};
    emit(*n.body, eps, bot::Intersect{lam, before});
  }

  void rule(const top::After& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::IsPeriod{n.term});
    PeriodExpr after = bot::Interval{latest(n.term), bot::End{}, false, true};
    emit(*n.body, eps, bot::Intersect{lam, after});
  }

  void rule(const top::Fills& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::Eq{eps, lam});
    emit(*n.body, eps, lam);
  }

  void rule(const top::NtenseVar& n, const Term&, const PeriodExpr&) {
    add(bot::IsPeriod{var(n.var)});
    emit(*n.body, var(n.var), whole_timeline());
  }

  void rule(const top::NtenseNow& n, const Term&, const PeriodExpr&) {
    emit(*n.body, now_period(), whole_timeline());
  }

  void rule(const top::For& n, const Term& eps, const PeriodExpr& lam) {
    std::vector<std::string> blocks;
    for (int i = 0; i < n.quantity; ++i) blocks.push_back(ctx_.fresh("b"));
    for (const auto& b : blocks) add(bot::PartOf{n.partition, var(b)});
    add(bot::Eq{earliest(var(blocks.front())), earliest(eps)});
    for (std::size_t i = 1; i < blocks.size(); ++i)
      add(bot::Eq{PointExpr(bot::Succ{latest(var(blocks[i - 1]))}), earliest(var(blocks[i]))});
    add(bot::Eq{latest(var(blocks.back())), latest(eps)});
    emit(*n.body, eps, lam);
  }

  void rule(const top::Perf& n, const Term& eps, const PeriodExpr& lam) {
    add(bot::Subper{bot::as_period_expr(eps), lam});
    add(bot::IsPeriod{var(n.var)});
    add(bot::Prec{latest(var(n.var)), earliest(eps)});
    emit(*n.body, var(n.var), whole_timeline());
  }

  TransContext& ctx_;
};

}  // namespace

TransContext::TransContext(std::set<std::string> used, TranslateOptions options)
    : used_(std::move(used)), options_(std::move(options)) {}

std::string TransContext::fresh(const std::string& prefix) {
  for (;;) {
    std::string name = "_" + prefix + std::to_string(counter_++);
    if (used_.insert(name).second) return name;
  }
}

std::pair<std::string, std::string> TransContext::eta(const std::string& functor) const {
  return chronos::eta(functor, used_, options_.eta);
}

Formula trans(const top::Formula& f, const Term& eps, const PeriodExpr& lam, TransContext& ctx) {
  Rewriter r(ctx);
  r.emit(f, eps, lam);
  return bot::conjoin(r.out);
}

Formula translate(const top::Formula& f, const TranslateOptions& options) {
  std::set<std::string> used = top::free_vars(f);
  std::set<std::string> functor_names;
  for (const auto& [functor, arity] : top::functors(f)) functor_names.insert(functor);
  used.insert(functor_names.begin(), functor_names.end());

  TransContext ctx(used, options);
  for (const auto& functor : functor_names) ctx.eta(functor);

  std::string eps = ctx.fresh("et");
  return trans(f, Ref::variable(eps), whole_timeline(), ctx);
}

}  // namespace chronos

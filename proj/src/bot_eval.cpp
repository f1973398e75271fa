#include <algorithm>

#include "chronos/bot_eval.hpp"
#include "chronos/error.hpp"
#include "env.hpp"

namespace chronos::bot {

namespace {

struct Undefined {
  friend bool operator==(Undefined, Undefined) = default;
};

/// Denotation of a term: an atom, a point set, a time-point or Undefined.
using Value = std::variant<Undefined, Atom, PointSet, TimePoint>;

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};

template <class Env>
class Evaluator {
 public:
  Evaluator(const BotModel& m, TimePoint st, const Env& env) : m_(m), st_(st), env_(env) {}

  std::optional<TimePoint> point(const PointExpr& e) const {
    return std::visit(
        Overload{
            [&](const Beg&) -> std::optional<TimePoint> { return m_.timeline.first(); },
            [&](const Now&) -> std::optional<TimePoint> { return st_; },
            [&](const End&) -> std::optional<TimePoint> { return m_.timeline.last(); },
            [&](const Earliest& x) -> std::optional<TimePoint> {
              auto p = period(*x.of);
              if (!p || p->empty()) return std::nullopt;
              return p->period().lo;
            },
            [&](const Latest& x) -> std::optional<TimePoint> {
              auto p = period(*x.of);
              if (!p || p->empty()) return std::nullopt;
              return p->period().hi;
            },
            [&](const Succ& x) -> std::optional<TimePoint> {
              auto t = point(*x.of);
              if (!t) return std::nullopt;
              return m_.timeline.next(*t);
            },
        },
        e.node);
  }

  std::optional<PointSet> period(const PeriodExpr& e) const {
    return std::visit(
        Overload{
            [&](const Interval& i) -> std::optional<PointSet> {
              auto lo = point(*i.lo);
              auto hi = point(*i.hi);
              if (!lo || !hi) return std::nullopt;
              return m_.timeline.interval(*lo, *hi, i.lo_closed, i.hi_closed);
            },
            [&](const Intersect& i) -> std::optional<PointSet> {
              auto a = period(*i.lhs);
              auto b = period(*i.rhs);
              if (!a || !b) return std::nullopt;
              return intersect(*a, *b);
            },
            [&](const Ref& r) -> std::optional<PointSet> {
              const Period* p = as_period(object(r));
              if (!p) return std::nullopt;
              return PointSet(*p);
            },
        },
        e.node);
  }

  Value value(const Term& t) const {
    return std::visit(Overload{
                          [&](const Ref& r) -> Value {
                            const Object& o = object(r);
                            if (const auto* a = std::get_if<Atom>(&o)) return *a;
                            return PointSet(std::get<Period>(o));
                          },
                          [&](const PeriodExpr& p) -> Value {
                            auto s = period(p);
                            if (!s) return Undefined{};
                            return *s;
                          },
                          [&](const PointExpr& p) -> Value {
                            auto t = point(p);
                            if (!t) return Undefined{};
                            return *t;
                          },
                      },
                      t.node);
  }

  bool atom(const Formula& f) const {
    return std::visit(
        Overload{
            [&](const Literal& l) {
              PredicateKey key{l.functor, l.args.size()};
              if (!m_.preds.contains(key)) throw UnknownFunctor(l.functor, l.args.size());
              Tuple args;
              args.reserve(l.args.size());
              for (const Term& t : l.args) {
                auto o = as_object(value(t));
                if (!o) return false;
                args.push_back(std::move(*o));
              }
              return m_.holds(key, args);
            },
            [&](const And& a) { return atom(*a.lhs) && atom(*a.rhs); },
            [&](const Subper& s) {
              auto a = period(s.sub);
              auto b = period(s.super);
              return a && b && subper(*a, *b);
            },
            [&](const Eq& e) {
              Value a = value(e.lhs);
              Value b = value(e.rhs);
              if (std::holds_alternative<Undefined>(a) || std::holds_alternative<Undefined>(b))
                return false;
              return a == b;
            },
            [&](const IsPeriod& p) {
              Value v = value(p.term);
              const auto* s = std::get_if<PointSet>(&v);
              return s && s->is_period();
            },
            [&](const PartOf& p) {
              const Partitioning* part = m_.partitioning(p.partition);
              if (!part) throw UnknownPartitioning(p.partition);
              Value v = value(p.term);
              const auto* s = std::get_if<PointSet>(&v);
              return s && s->is_period() && part->contains(s->period());
            },
            [&](const Prec& p) {
              auto a = point(p.lhs);
              auto b = point(p.rhs);
              return a && b && *a < *b;
            },
        },
        f.node);
  }

 private:
  const Object& object(const Ref& r) const {
    if (r.is_variable()) {
      const Object* o = env_.lookup(r.name);
      if (!o) throw UnboundVariable(r.name);
      return *o;
    }
    auto it = m_.consts.find(r.name);
    if (it == m_.consts.end()) throw UnknownConstant(r.name);
    return it->second;
  }

  static std::optional<Object> as_object(const Value& v) {
    if (const auto* a = std::get_if<Atom>(&v)) return Object(*a);
    if (const auto* s = std::get_if<PointSet>(&v); s && s->is_period()) return Object(s->period());
    return std::nullopt;
  }

  const BotModel& m_;
  TimePoint st_;
  const Env& env_;
};

struct Conjunct {
  Formula formula;
  std::vector<std::string> vars;
};

/// Greedy variable order: next is the variable that completes the most
/// conjuncts, ties broken by first occurrence.
std::vector<std::string> search_order(const std::vector<Conjunct>& cs,
                                      const std::vector<std::string>& vars) {
  std::vector<std::string> order;
  std::vector<std::string> remaining = vars;
  auto bound = [&](const std::string& v) {
    return std::find(order.begin(), order.end(), v) != order.end();
  };
  while (!remaining.empty()) {
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      int score = 0;
      for (const Conjunct& c : cs) {
        if (std::find(c.vars.begin(), c.vars.end(), remaining[i]) == c.vars.end()) continue;
        bool completes = std::all_of(c.vars.begin(), c.vars.end(), [&](const std::string& v) {
          return v == remaining[i] || bound(v);
        });
        if (completes) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

class Search {
 public:
  Search(const BotModel& m, TimePoint st, const Formula& f)
      : objects_(m.domain.objects(m.timeline)), env_(order(f)), eval_(m, st, env_) {
    levels_.resize(env_.size() + 1);
    for (Conjunct& c : conjuncts_) {
      std::size_t level = 0;
      for (const auto& v : c.vars) {
        for (std::size_t i = 0; i < env_.size(); ++i)
          if (env_.name(i) == v) level = std::max(level, i + 1);
      }
      levels_[level].push_back(&c.formula);
    }
  }

  std::optional<Assignment> run() {
    if (!holds(0)) return std::nullopt;
    if (descend(0)) return env_.to_assignment();
    return std::nullopt;
  }

 private:
  std::vector<std::string> order(const Formula& f) {
    for (const Formula& c : conjuncts(f)) conjuncts_.push_back({c, variables_in_order(c)});
    return search_order(conjuncts_, variables_in_order(f));
  }

  bool holds(std::size_t level) const {
    return std::all_of(levels_[level].begin(), levels_[level].end(),
                       [&](const Formula* c) { return eval_.atom(*c); });
  }

  bool descend(std::size_t slot) {
    if (slot == env_.size()) return true;
    for (const Object& o : objects_) {
      env_.bind(slot, o);
      if (holds(slot + 1) && descend(slot + 1)) return true;
    }
    env_.unbind(slot);
    return false;
  }

  std::vector<Conjunct> conjuncts_;
  std::vector<Object> objects_;
  detail::SlotEnv env_;
  Evaluator<detail::SlotEnv> eval_;
  std::vector<std::vector<const Formula*>> levels_;
};

}  // namespace

void check_references(const BotModel& m, const Formula& f) {
  for (const auto& [functor, arity] : functors(f))
    if (!m.preds.contains({functor, arity})) throw UnknownFunctor(functor, arity);
  for (const auto& name : partition_names(f))
    if (!m.partitioning(name)) throw UnknownPartitioning(name);
}

std::optional<TimePoint> eval_point(const BotModel& m, TimePoint st, const Assignment& g,
                                    const PointExpr& e) {
  detail::MapEnv env(g);
  return Evaluator<detail::MapEnv>(m, st, env).point(e);
}

std::optional<PointSet> eval_period(const BotModel& m, TimePoint st, const Assignment& g,
                                    const PeriodExpr& e) {
  detail::MapEnv env(g);
  return Evaluator<detail::MapEnv>(m, st, env).period(e);
}

bool eval(const BotModel& m, TimePoint st, const Assignment& g, const Formula& f) {
  check_references(m, f);
  for (const auto& v : variables_in_order(f))
    if (!g.contains(v)) throw UnboundVariable(v);
  detail::MapEnv env(g);
  return Evaluator<detail::MapEnv>(m, st, env).atom(f);
}

std::optional<Assignment> find_witness(const BotModel& m, TimePoint st, const Formula& f) {
  check_references(m, f);
  return Search(m, st, f).run();
}

}  // namespace chronos::bot

#pragma once

// Test-only oracles. Point sets are std::set<int>, every clause is a direct
// transcription of the set-theoretic definitions, and denotations are
// computed by plain enumeration of every assignment and event time. Nothing
// here calls the library's evaluators or its PointSet arithmetic.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <variant>

#include "chronos/bot.hpp"
#include "chronos/model.hpp"
#include "chronos/top.hpp"

namespace ref {

using Pts = std::set<int>;

inline Pts points(const chronos::Period& p) {
  Pts s;
  for (int t = p.lo; t <= p.hi; ++t) s.insert(t);
  return s;
}

inline Pts all_points(int size) { return points({0, size - 1}); }

inline bool convex_nonempty(const Pts& s) {
  return !s.empty() && *s.rbegin() - *s.begin() + 1 == static_cast<int>(s.size());
}

inline bool subset(const Pts& a, const Pts& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Pts meet(const Pts& a, const Pts& b) {
  Pts out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline Pts filter(int size, const std::function<bool(int)>& keep) {
  Pts s;
  for (int t = 0; t < size; ++t)
    if (keep(t)) s.insert(t);
  return s;
}

/// subper per definition: both periods, a ⊆ b.
inline bool subper(const Pts& a, const Pts& b) {
  return convex_nonempty(a) && convex_nonempty(b) && subset(a, b);
}

/// Every object: atoms, then all non-empty convex subsets of the timeline.
inline std::vector<chronos::Object> objects(const chronos::TopModel& m) {
  std::vector<chronos::Object> out;
  for (const auto& a : m.domain.atoms) out.emplace_back(chronos::Atom{a});
  int n = m.timeline.size();
  for (int lo = 0; lo < n; ++lo)
    for (int hi = lo; hi < n; ++hi) out.emplace_back(chronos::Period{lo, hi});
  return out;
}

inline std::vector<chronos::Period> all_periods(int size) {
  std::vector<chronos::Period> out;
  for (int lo = 0; lo < size; ++lo)
    for (int hi = lo; hi < size; ++hi) out.push_back({lo, hi});
  return out;
}

/// Calls visit(g) for every assignment of `vars` into `objs`; stops when it
/// returns true.
inline bool for_each_assignment(const std::vector<std::string>& vars,
                                const std::vector<chronos::Object>& objs,
                                const std::function<bool(const chronos::Assignment&)>& visit) {
  chronos::Assignment g;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) return visit(g);
    for (const auto& o : objs) {
      g.insert_or_assign(vars[i], o);
      if (rec(i + 1)) return true;
    }
    g.erase(vars[i]);
    return false;
  };
  return rec(0);
}

// TOP ---------------------------------------------------------------------

class TopRef {
 public:
  TopRef(const chronos::TopModel& m, int st) : m_(m), st_(st), n_(m.timeline.size()) {}

  bool eval(const Pts& et, const Pts& lt, const chronos::Assignment& g,
            const chronos::top::Formula& f) const {
    using namespace chronos::top;
    if (const auto* l = f.get_if<Literal>()) return literal(et, lt, g, *l);
    if (const auto* a = f.get_if<And>()) return eval(et, lt, g, *a->lhs) && eval(et, lt, g, *a->rhs);
    if (const auto* p = f.get_if<Part>()) {
      const chronos::Period* q = chronos::as_period(g.at(p->var));
      return q && block_set(p->partition).contains(points(*q));
    }
    if (const auto* p = f.get_if<Pres>()) return et.contains(st_) && eval(et, lt, g, *p->body);
    if (const auto* p = f.get_if<Past>()) {
      const auto* q = chronos::as_period(g.at(p->var));
      Pts past = filter(n_, [&](int t) { return t < st_; });
      return q && points(*q) == et && eval(et, meet(lt, past), g, *p->body);
    }
    if (const auto* c = f.get_if<Culm>()) {
      if (!subper(et, lt)) return false;
      auto args = tuple(g, c->literal.args);
      chronos::PredicateKey key{c->literal.functor, args.size()};
      if (!m_.culminates(key, args)) return false;
      Pts s;
      for (const auto& p : m_.maximal_periods(key, args)) s.merge(points(p));
      if (s.empty()) return false;
      return et == points({*s.begin(), *s.rbegin()});
    }
    if (const auto* a = f.get_if<At>()) {
      auto tau = term_period(g, a->term);
      return tau && eval(et, meet(lt, *tau), g, *a->body);
    }
    if (const auto* b = f.get_if<Before>()) {
      auto tau = term_period(g, b->term);
      if (!tau) return false;
      int first = *tau->begin();
      return eval(et, meet(lt, filter(n_, [&](int t) { return t < first; })), g, *b->body);
    }
    if (const auto* a = f.get_if<After>()) {
      auto tau = term_period(g, a->term);
      if (!tau) return false;
      int last = *tau->rbegin();
      return eval(et, meet(lt, filter(n_, [&](int t) { return t > last; })), g, *a->body);
    }
    if (const auto* fl = f.get_if<Fills>()) return et == lt && eval(et, lt, g, *fl->body);
    if (const auto* nt = f.get_if<NtenseVar>()) {
      const auto* q = chronos::as_period(g.at(nt->var));
      return q && eval(points(*q), all_points(n_), g, *nt->body);
    }
    if (const auto* nt = f.get_if<NtenseNow>()) return eval({st_}, all_points(n_), g, *nt->body);
    if (const auto* fo = f.get_if<For>()) return eval(et, lt, g, *fo->body) && chain(et, *fo);
    if (const auto* pf = f.get_if<Perf>()) {
      if (!subper(et, lt)) return false;
      const auto* q = chronos::as_period(g.at(pf->var));
      return q && q->hi < *et.begin() && eval(points(*q), all_points(n_), g, *pf->body);
    }
    return false;
  }

  /// Some assignment of the variables and some et make f true, with lt = PTS.
  bool denot(const chronos::top::Formula& f) const {
    auto vars = chronos::top::variables_in_order(f);
    auto objs = objects(m_);
    for (const auto& et : all_periods(n_))
      if (for_each_assignment(vars, objs, [&](const chronos::Assignment& g) {
            return eval(points(et), all_points(n_), g, f);
          }))
        return true;
    return false;
  }

 private:
  chronos::Object denote(const chronos::Assignment& g, const chronos::Ref& t) const {
    return t.is_variable() ? g.at(t.name) : m_.consts.at(t.name);
  }

  chronos::Tuple tuple(const chronos::Assignment& g, const std::vector<chronos::Ref>& args) const {
    chronos::Tuple out;
    for (const auto& a : args) out.push_back(denote(g, a));
    return out;
  }

  std::optional<Pts> term_period(const chronos::Assignment& g, const chronos::Ref& t) const {
    chronos::Object o = denote(g, t);
    if (const auto* p = chronos::as_period(o)) return points(*p);
    return std::nullopt;
  }

  bool literal(const Pts& et, const Pts& lt, const chronos::Assignment& g,
               const chronos::top::Literal& l) const {
    if (!subper(et, lt)) return false;
    auto args = tuple(g, l.args);
    for (const auto& p : m_.maximal_periods({l.functor, args.size()}, args))
      if (subper(et, points(p))) return true;
    return false;
  }

  std::set<Pts> block_set(const std::string& name) const {
    std::set<Pts> out;
    for (const auto& b : m_.partitioning(name)->blocks) out.insert(points(b));
    return out;
  }

  // some p1..pn in the cpart with minpt(p1)=minpt(et), next(maxpt(pi)) =
  // minpt(pi+1), maxpt(pn)=maxpt(et); searched over all block sequences
  bool chain(const Pts& et, const chronos::top::For& f) const {
    const auto& blocks = m_.cparts.at(f.partition).blocks;
    std::vector<chronos::Period> seq;
    std::function<bool()> rec = [&]() {
      if (static_cast<int>(seq.size()) == f.quantity) {
        if (seq.front().lo != *et.begin() || seq.back().hi != *et.rbegin()) return false;
        for (std::size_t i = 1; i < seq.size(); ++i) {
          if (seq[i - 1].hi + 1 >= n_) return false;  // next undefined at t_last
          if (seq[i - 1].hi + 1 != seq[i].lo) return false;
        }
        return true;
      }
      for (const auto& b : blocks) {
        seq.push_back(b);
        if (rec()) return true;
        seq.pop_back();
      }
      return false;
    };
    return rec();
  }

  const chronos::TopModel& m_;
  int st_;
  int n_;
};

// BOT ---------------------------------------------------------------------

struct Undef {
  bool operator==(const Undef&) const = default;
};
using Value = std::variant<Undef, chronos::Atom, Pts, int>;

/// Truth of a BOT literal, given as functor, args.
using LiteralOracle = std::function<bool(const std::string&, const chronos::Tuple&)>;

/// The BOT reading of a TOP model: pi(args, p) iff p is a maximal period,
/// cmp_pi(args) iff culminates, max_pi(args, p) iff p spans all maximal
/// periods. Computed directly from the TOP model.
inline LiteralOracle derived_literals(const chronos::TopModel& m) {
  return [&m](const std::string& functor, const chronos::Tuple& args) {
    auto strip = [&](const std::string& prefix) -> std::optional<std::string> {
      if (functor.rfind(prefix, 0) == 0) return functor.substr(prefix.size());
      return std::nullopt;
    };
    if (auto base = strip("cmp_"); base && m.preds.contains({*base, args.size()}))
      return m.culminates({*base, args.size()}, args);
    chronos::Tuple head(args.begin(), args.end() - 1);
    const auto* last = chronos::as_period(args.back());
    if (auto base = strip("max_"); base && m.preds.contains({*base, head.size()})) {
      Pts s;
      for (const auto& p : m.maximal_periods({*base, head.size()}, head)) s.merge(points(p));
      return last && !s.empty() && points(*last) == points({*s.begin(), *s.rbegin()});
    }
    if (!last) return false;
    const auto& ps = m.maximal_periods({functor, head.size()}, head);
    return std::find(ps.begin(), ps.end(), *last) != ps.end();
  };
}

class BotRef {
 public:
  BotRef(const chronos::TopModel& m, int st, LiteralOracle lit)
      : m_(m), st_(st), n_(m.timeline.size()), lit_(std::move(lit)) {}

  std::optional<int> point(const chronos::Assignment& g, const chronos::bot::PointExpr& e) const {
    using namespace chronos::bot;
    if (std::holds_alternative<Beg>(e.node)) return 0;
    if (std::holds_alternative<Now>(e.node)) return st_;
    if (std::holds_alternative<End>(e.node)) return n_ - 1;
    if (const auto* x = std::get_if<Earliest>(&e.node)) {
      auto s = period(g, *x->of);
      if (!s || s->empty()) return std::nullopt;
      return *s->begin();
    }
    if (const auto* x = std::get_if<Latest>(&e.node)) {
      auto s = period(g, *x->of);
      if (!s || s->empty()) return std::nullopt;
      return *s->rbegin();
    }
    const auto& x = std::get<Succ>(e.node);
    auto t = point(g, *x.of);
    if (!t || *t + 1 >= n_) return std::nullopt;
    return *t + 1;
  }

  std::optional<Pts> period(const chronos::Assignment& g, const chronos::bot::PeriodExpr& e) const {
    using namespace chronos::bot;
    if (const auto* i = std::get_if<Interval>(&e.node)) {
      auto lo = point(g, *i->lo);
      auto hi = point(g, *i->hi);
      if (!lo || !hi) return std::nullopt;
      return filter(n_, [&](int t) {
        return (i->lo_closed ? *lo <= t : *lo < t) && (i->hi_closed ? t <= *hi : t < *hi);
      });
    }
    if (const auto* i = std::get_if<Intersect>(&e.node)) {
      auto a = period(g, *i->lhs);
      auto b = period(g, *i->rhs);
      if (!a || !b) return std::nullopt;
      return meet(*a, *b);
    }
    chronos::Object o = object(g, std::get<chronos::Ref>(e.node));
    if (const auto* p = chronos::as_period(o)) return points(*p);
    return std::nullopt;
  }

  Value value(const chronos::Assignment& g, const chronos::bot::Term& t) const {
    using namespace chronos::bot;
    if (const auto* r = std::get_if<chronos::Ref>(&t.node)) {
      chronos::Object o = object(g, *r);
      if (const auto* p = chronos::as_period(o)) return points(*p);
      return std::get<chronos::Atom>(o);
    }
    if (const auto* p = std::get_if<PeriodExpr>(&t.node)) {
      auto s = period(g, *p);
      if (!s) return Undef{};
      return *s;
    }
    auto x = point(g, std::get<PointExpr>(t.node));
    if (!x) return Undef{};
    return *x;
  }

  bool eval(const chronos::Assignment& g, const chronos::bot::Formula& f) const {
    using namespace chronos::bot;
    if (const auto* a = f.get_if<And>()) return eval(g, *a->lhs) && eval(g, *a->rhs);
    if (const auto* l = f.get_if<Literal>()) {
      chronos::Tuple args;
      for (const auto& t : l->args) {
        Value v = value(g, t);
        if (const auto* a = std::get_if<chronos::Atom>(&v))
          args.emplace_back(*a);
        else if (const auto* s = std::get_if<Pts>(&v); s && convex_nonempty(*s))
          args.emplace_back(chronos::Period{*s->begin(), *s->rbegin()});
        else
          return false;
      }
      return lit_(l->functor, args);
    }
    if (const auto* s = f.get_if<Subper>()) {
      auto a = period(g, s->sub);
      auto b = period(g, s->super);
      return a && b && subper(*a, *b);
    }
    if (const auto* e = f.get_if<Eq>()) {
      Value a = value(g, e->lhs);
      Value b = value(g, e->rhs);
      return !std::holds_alternative<Undef>(a) && !std::holds_alternative<Undef>(b) && a == b;
    }
    if (const auto* p = f.get_if<IsPeriod>()) {
      Value v = value(g, p->term);
      const auto* s = std::get_if<Pts>(&v);
      return s && convex_nonempty(*s);
    }
    if (const auto* p = f.get_if<PartOf>()) {
      Value v = value(g, p->term);
      const auto* s = std::get_if<Pts>(&v);
      if (!s || !convex_nonempty(*s)) return false;
      for (const auto& b : m_.partitioning(p->partition)->blocks)
        if (points(b) == *s) return true;
      return false;
    }
    const auto& pr = std::get<Prec>(f.node);
    auto a = point(g, pr.lhs);
    auto b = point(g, pr.rhs);
    return a && b && *a < *b;
  }

  bool denot(const chronos::bot::Formula& f) const {
    return for_each_assignment(chronos::bot::variables_in_order(f), objects(m_),
                               [&](const chronos::Assignment& g) { return eval(g, f); });
  }

 private:
  chronos::Object object(const chronos::Assignment& g, const chronos::Ref& r) const {
    return r.is_variable() ? g.at(r.name) : m_.consts.at(r.name);
  }

  const chronos::TopModel& m_;
  int st_;
  int n_;
  LiteralOracle lit_;
};

}  // namespace ref

#include <algorithm>

#include "chronos/error.hpp"
#include "chronos/top_eval.hpp"
#include "env.hpp"

namespace chronos::top {

namespace {

using detail::Tri;

template <class Env>
class Evaluator {
 public:
  Evaluator(const TopModel& m, const Env& env) : m_(m), env_(env) {}

  Tri eval(const Formula& f, TimePoint st, const Period& et, const PointSet& lt) const {
    return std::visit([&](const auto& n) { return clause(n, st, et, lt); }, f.node);
  }

 private:
  // nullptr when the variable is not bound yet
  const Object* denote(const Term& t) const {
    if (!t.is_variable()) {
      auto it = m_.consts.find(t.name);
      if (it == m_.consts.end()) throw UnknownConstant(t.name);
      return &it->second;
    }
    return env_.lookup(t.name);
  }

  // false when some argument is unbound
  bool denote_args(const Literal& l, Tuple& out) const {
    out.clear();
    out.reserve(l.args.size());
    for (const Term& t : l.args) {
      const Object* o = denote(t);
      if (!o) return false;
      out.push_back(*o);
    }
    return true;
  }

  const PeriodExtension& extension(const Literal& l) const {
    PredicateKey key{l.functor, l.args.size()};
    auto it = m_.preds.find(key);
    if (it == m_.preds.end()) throw UnknownFunctor(l.functor, l.args.size());
    return it->second;
  }

  const Partitioning& partitioning(const std::string& name) const {
    const Partitioning* p = m_.partitioning(name);
    if (!p) throw UnknownPartitioning(name);
    return *p;
  }

  Tri clause(const Literal& n, TimePoint, const Period& et, const PointSet& lt) const {
    const PeriodExtension& ext = extension(n);
    if (!subper(et, lt)) return Tri::F;
    Tuple args;
    if (!denote_args(n, args)) return Tri::U;
    auto it = ext.find(args);
    if (it == ext.end()) return Tri::F;
    bool inside = std::any_of(it->second.begin(), it->second.end(),
                              [&](const Period& p) { return p.contains(et); });
    return detail::tri(inside);
  }

  Tri clause(const And& n, TimePoint st, const Period& et, const PointSet& lt) const {
    Tri a = eval(*n.lhs, st, et, lt);
    if (a == Tri::F) return Tri::F;
    return detail::conj(a, eval(*n.rhs, st, et, lt));
  }

  Tri clause(const Part& n, TimePoint, const Period&, const PointSet&) const {
    const Partitioning& part = partitioning(n.partition);
    const Object* o = env_.lookup(n.var);
    if (!o) return Tri::U;
    const Period* p = as_period(*o);
    return detail::tri(p && part.contains(*p));
  }

  Tri clause(const Pres& n, TimePoint st, const Period& et, const PointSet& lt) const {
    if (!et.contains(st)) return Tri::F;
    return eval(*n.body, st, et, lt);
  }

  Tri clause(const Past& n, TimePoint st, const Period& et, const PointSet& lt) const {
    Tri binder = Tri::U;
    if (const Object* o = env_.lookup(n.var)) {
      const Period* p = as_period(*o);
      binder = detail::tri(p && *p == et);
      if (binder == Tri::F) return Tri::F;
    }
    PointSet past = m_.timeline.interval(m_.timeline.first(), st, true, false);
    return detail::conj(binder, eval(*n.body, st, et, intersect(lt, past)));
  }

  Tri clause(const Culm& n, TimePoint, const Period& et, const PointSet& lt) const {
    const PeriodExtension& ext = extension(n.literal);
    if (!subper(et, lt)) return Tri::F;
    Tuple args;
    if (!denote_args(n.literal, args)) return Tri::U;
    if (!m_.culminates({n.literal.functor, n.literal.args.size()}, args)) return Tri::F;
    auto it = ext.find(args);
    if (it == ext.end() || it->second.empty()) return Tri::F;
    TimePoint lo = it->second.front().lo;
    TimePoint hi = it->second.front().hi;
    for (const Period& p : it->second) {
      lo = std::min(lo, p.lo);
      hi = std::max(hi, p.hi);
    }
    return detail::tri(et == Period{lo, hi});
  }

  // At, Before and After: the term must denote a period; lt is narrowed.
  template <class Narrow>
  Tri located(const Term& term, const Formula& body, TimePoint st, const Period& et,
              const PointSet& lt, Narrow narrow) const {
    const Object* o = denote(term);
    if (!o) return Tri::U;
    const Period* p = as_period(*o);
    if (!p) return Tri::F;
    return eval(body, st, et, intersect(lt, narrow(*p)));
  }

  Tri clause(const At& n, TimePoint st, const Period& et, const PointSet& lt) const {
    return located(n.term, *n.body, st, et, lt, [](const Period& p) { return PointSet(p); });
  }

  Tri clause(const Before& n, TimePoint st, const Period& et, const PointSet& lt) const {
    return located(n.term, *n.body, st, et, lt, [&](const Period& p) {
      return m_.timeline.interval(m_.timeline.first(), p.lo, true, false);
    });
  }

  Tri clause(const After& n, TimePoint st, const Period& et, const PointSet& lt) const {
    return located(n.term, *n.body, st, et, lt, [&](const Period& p) {
      return m_.timeline.interval(p.hi, m_.timeline.last(), false, true);
    });
  }

  Tri clause(const Fills& n, TimePoint st, const Period& et, const PointSet& lt) const {
    if (lt != PointSet(et)) return Tri::F;
    return eval(*n.body, st, et, lt);
  }

  Tri clause(const NtenseVar& n, TimePoint st, const Period&, const PointSet&) const {
    const Object* o = env_.lookup(n.var);
    if (!o) return Tri::U;
    const Period* p = as_period(*o);
    if (!p) return Tri::F;
    return eval(*n.body, st, *p, m_.timeline.all());
  }

  Tri clause(const NtenseNow& n, TimePoint st, const Period&, const PointSet&) const {
    return eval(*n.body, st, Period{st, st}, m_.timeline.all());
  }

  Tri clause(const For& n, TimePoint st, const Period& et, const PointSet& lt) const {
    auto it = m_.cparts.find(n.partition);
    if (it == m_.cparts.end()) throw UnknownPartitioning(n.partition);
    if (!covered_by_blocks(it->second, et, n.quantity)) return Tri::F;
    return eval(*n.body, st, et, lt);
  }

  // p1 starts where et starts, each next block starts right after the
  // previous one ends, and the qty-th block ends where et ends.
  bool covered_by_blocks(const Partitioning& part, const Period& et, int quantity) const {
    TimePoint start = et.lo;
    for (int k = 1; k <= quantity; ++k) {
      int idx = part.block_starting_at(start);
      if (idx < 0) return false;
      const Period& block = part.blocks[static_cast<std::size_t>(idx)];
      if (k == quantity) return block.hi == et.hi;
      auto next = m_.timeline.next(block.hi);
      if (!next) return false;
      start = *next;
    }
    return false;
  }

  Tri clause(const Perf& n, TimePoint st, const Period& et, const PointSet& lt) const {
    if (!subper(et, lt)) return Tri::F;
    const Object* o = env_.lookup(n.var);
    if (!o) return Tri::U;
    const Period* earlier = as_period(*o);
    if (!earlier || !(earlier->hi < et.lo)) return Tri::F;
    return eval(*n.body, st, *earlier, m_.timeline.all());
  }

  const TopModel& m_;
  const Env& env_;
};

}  // namespace

void check_references(const TopModel& m, const Formula& f) {
  for (const auto& [functor, arity] : functors(f))
    if (!m.preds.contains({functor, arity})) throw UnknownFunctor(functor, arity);
  for (const auto& name : partition_names(f))
    if (!m.partitioning(name)) throw UnknownPartitioning(name);
}

bool eval_at(const TopModel& m, const EvalIndex& idx, const Assignment& g, const Formula& f) {
  check_references(m, f);
  for (const auto& v : variables_in_order(f))
    if (!g.contains(v)) throw UnboundVariable(v);
  detail::MapEnv env(g);
  return Evaluator<detail::MapEnv>(m, env).eval(f, idx.st, idx.et, idx.lt) == Tri::T;
}

std::optional<Witness> find_witness(const TopModel& m, TimePoint st, const Formula& f) {
  check_references(m, f);
  detail::SlotEnv env(variables_in_order(f));
  Evaluator<detail::SlotEnv> evaluator(m, env);
  const std::vector<Object> objects = m.domain.objects(m.timeline);
  const PointSet everything = m.timeline.all();

  for (const Period& et : m.timeline.periods()) {
    auto test = [&] { return evaluator.eval(f, st, et, everything); };
    if (detail::search(env, objects, test)) return Witness{env.to_assignment(), et};
  }
  return std::nullopt;
}

}  // namespace chronos::top

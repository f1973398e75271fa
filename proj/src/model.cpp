#include "chronos/model.hpp"

#include <algorithm>

#include "chronos/error.hpp"

namespace chronos {

namespace {

const std::vector<Period> kNoPeriods;

}  // namespace

std::string to_string(const Object& o) {
  if (const auto* a = std::get_if<Atom>(&o)) return a->name;
  return to_string(std::get<Period>(o));
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + ")";
}

std::string to_string(const Assignment& g) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : g) {
    if (!first) out += ", ";
    first = false;
    out += "?" + name + "=" + to_string(value);
  }
  return out + "}";
}

std::string to_string(const PredicateKey& k) {
  return k.functor + "/" + std::to_string(k.arity);
}

bool Partitioning::contains(const Period& p) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), p);
  return it != blocks.end() && *it == p;
}

int Partitioning::block_starting_at(TimePoint t) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), Period{t, t},
                             [](const Period& a, const Period& b) { return a.lo < b.lo; });
  if (it == blocks.end() || it->lo != t) return -1;
  return static_cast<int>(it - blocks.begin());
}

Partitioning uniform_partitioning(const Timeline& timeline, int length) {
  if (length < 1 || timeline.size() % length != 0)
    throw ModelError("block length " + std::to_string(length) +
                     " does not divide timeline size " + std::to_string(timeline.size()));
  Partitioning part{PartitionKind::Complete, {}};
  for (TimePoint lo = 0; lo < timeline.size(); lo += length)
    part.blocks.push_back({lo, lo + length - 1});
  return part;
}

bool ObjectDomain::has_atom(const std::string& name) const {
  return std::find(atoms.begin(), atoms.end(), name) != atoms.end();
}

std::vector<Object> ObjectDomain::objects(const Timeline& timeline) const {
  std::vector<Object> out;
  for (const auto& a : atoms) out.emplace_back(Atom{a});
  for (const Period& p : timeline.periods()) out.emplace_back(p);
  return out;
}

const std::vector<Period>& TopModel::maximal_periods(const PredicateKey& key,
                                                     const Tuple& args) const {
  auto pit = preds.find(key);
  if (pit == preds.end()) return kNoPeriods;
  auto tit = pit->second.find(args);
  return tit == pit->second.end() ? kNoPeriods : tit->second;
}

bool TopModel::culminates(const PredicateKey& key, const Tuple& args) const {
  auto cit = culms.find(key);
  if (cit == culms.end()) return false;
  auto tit = cit->second.find(args);
  return tit != cit->second.end() && tit->second;
}

const Partitioning* TopModel::partitioning(const std::string& name) const {
  if (auto it = cparts.find(name); it != cparts.end()) return &it->second;
  if (auto it = gparts.find(name); it != gparts.end()) return &it->second;
  return nullptr;
}

bool BotModel::holds(const PredicateKey& key, const Tuple& args) const {
  auto pit = preds.find(key);
  if (pit == preds.end()) return false;
  auto tit = pit->second.find(args);
  return tit != pit->second.end() && tit->second;
}

const Partitioning* BotModel::partitioning(const std::string& name) const {
  if (auto it = cparts.find(name); it != cparts.end()) return &it->second;
  if (auto it = gparts.find(name); it != gparts.end()) return &it->second;
  return nullptr;
}

std::pair<std::string, std::string> eta(const std::string& functor,
                                        const std::set<std::string>& used,
                                        const EtaMapping& mapping) {
  std::string culm = mapping.culm(functor);
  std::string span = mapping.span(functor);
  if (used.contains(culm)) throw EtaCollision(culm);
  if (used.contains(span)) throw EtaCollision(span);
  return {culm, span};
}

BotModel derive_bot_model(const TopModel& m, const EtaMapping& mapping) {
  BotModel b;
  b.timeline = m.timeline;
  b.domain = m.domain;
  b.consts = m.consts;
  b.cparts = m.cparts;
  b.gparts = m.gparts;

  std::set<std::string> used;
  for (const auto& [key, ext] : m.preds) used.insert(key.functor);

  for (const auto& [key, ext] : m.preds) {
    auto [culm_name, span_name] = eta(key.functor, used, mapping);
    auto& located = b.preds[{key.functor, key.arity + 1}];
    auto& spans = b.preds[{span_name, key.arity + 1}];
    auto& culms = b.preds[{culm_name, key.arity}];

    for (const auto& [args, periods] : ext) {
      if (periods.empty()) continue;
      TimePoint lo = periods.front().lo;
      TimePoint hi = periods.front().hi;
      for (const Period& p : periods) {
        Tuple row = args;
        row.emplace_back(p);
        located[std::move(row)] = true;
        lo = std::min(lo, p.lo);
        hi = std::max(hi, p.hi);
      }
      Tuple row = args;
      row.emplace_back(Period{lo, hi});
      spans[std::move(row)] = true;
    }
    if (auto cit = m.culms.find(key); cit != m.culms.end())
      for (const auto& [args, flag] : cit->second) culms[args] = flag;
  }
  return b;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidPeriod: return "InvalidPeriod";
    case ViolationKind::MergeablePeriods: return "MergeablePeriods";
    case ViolationKind::ArityMismatch: return "ArityMismatch";
    case ViolationKind::UnknownObject: return "UnknownObject";
    case ViolationKind::DuplicateAtom: return "DuplicateAtom";
    case ViolationKind::OverlappingBlocks: return "OverlappingBlocks";
    case ViolationKind::IncompletePartitioning: return "IncompletePartitioning";
    case ViolationKind::CompleteGappyPartitioning: return "CompleteGappyPartitioning";
    case ViolationKind::CulmWithoutPredicate: return "CulmWithoutPredicate";
  }
  return "?";
}

namespace {

class Validator {
 public:
  explicit Validator(const TopModel& m) : m_(m) {}

  std::vector<Violation> run() {
    check_atoms();
    for (const auto& [name, obj] : m_.consts) check_object(obj, "constant " + name);
    for (const auto& [key, ext] : m_.preds) check_predicate(key, ext);
    for (const auto& [key, ext] : m_.culms) check_culms(key, ext);
    for (const auto& [name, part] : m_.cparts) check_partitioning("cpart " + name, part, true);
    for (const auto& [name, part] : m_.gparts) check_partitioning("gpart " + name, part, false);
    return std::move(out_);
  }

 private:
  void add(ViolationKind kind, std::string where) { out_.push_back({kind, std::move(where)}); }

  void check_atoms() {
    std::set<std::string> seen;
    for (const auto& a : m_.domain.atoms)
      if (!seen.insert(a).second) add(ViolationKind::DuplicateAtom, "object " + a);
  }

  void check_period(const Period& p, const std::string& where) {
    if (!m_.timeline.on_timeline(p)) add(ViolationKind::InvalidPeriod, where + " " + to_string(p));
  }

  void check_object(const Object& o, const std::string& where) {
    if (const auto* a = std::get_if<Atom>(&o)) {
      if (!m_.domain.has_atom(a->name)) add(ViolationKind::UnknownObject, where + " " + a->name);
    } else {
      check_period(std::get<Period>(o), where);
    }
  }

  void check_tuple(const PredicateKey& key, const Tuple& args, const std::string& where) {
    if (args.size() != key.arity) add(ViolationKind::ArityMismatch, where);
    for (const auto& o : args) check_object(o, where);
  }

  void check_predicate(const PredicateKey& key, const PeriodExtension& ext) {
    for (const auto& [args, periods] : ext) {
      std::string where = key.functor + to_string(args);
      check_tuple(key, args, where);
      std::vector<Period> sorted = periods;
      std::sort(sorted.begin(), sorted.end());
      for (const Period& p : sorted) check_period(p, where);
      for (std::size_t i = 1; i < sorted.size(); ++i) {
        // p1 ∪ p2 convex unless a gap of at least one point separates them
        if (sorted[i - 1].hi + 1 >= sorted[i].lo)
          add(ViolationKind::MergeablePeriods,
              where + " " + to_string(sorted[i - 1]) + " " + to_string(sorted[i]));
      }
    }
  }

  void check_culms(const PredicateKey& key, const TruthExtension& ext) {
    if (!m_.preds.contains(key)) add(ViolationKind::CulmWithoutPredicate, to_string(key));
    for (const auto& [args, flag] : ext) check_tuple(key, args, key.functor + to_string(args));
  }

  void check_partitioning(const std::string& where, const Partitioning& part, bool complete) {
    for (const Period& p : part.blocks) check_period(p, where);
    for (std::size_t i = 1; i < part.blocks.size(); ++i)
      if (part.blocks[i - 1].hi >= part.blocks[i].lo)
        add(ViolationKind::OverlappingBlocks,
            where + " " + to_string(part.blocks[i - 1]) + " " + to_string(part.blocks[i]));
    int covered = 0;
    for (const Period& p : part.blocks) covered += p.length();
    bool covers_all = covered == m_.timeline.size() && !part.blocks.empty() &&
                      part.blocks.front().lo == 0 && part.blocks.back().hi == m_.timeline.last();
    if (complete && !covers_all) add(ViolationKind::IncompletePartitioning, where);
    if (!complete && covers_all) add(ViolationKind::CompleteGappyPartitioning, where);
  }

  const TopModel& m_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_model(const TopModel& m) { return Validator(m).run(); }

}  // namespace chronos

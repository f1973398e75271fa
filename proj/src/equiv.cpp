#include "chronos/equiv.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "chronos/bot_eval.hpp"
#include "chronos/error.hpp"
#include "chronos/model_file.hpp"

namespace chronos::equiv {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

Period random_period(Rng& rng, const Timeline& t) {
  int lo = uniform(rng, 0, t.last());
  int hi = uniform(rng, lo, std::min(t.last(), lo + uniform(rng, 0, 3)));
  return {lo, hi};
}

bool separated(const Period& a, const Period& b) { return a.hi + 1 < b.lo || b.hi + 1 < a.lo; }

std::vector<Period> random_maximal_periods(Rng& rng, const Timeline& t, int max_count) {
  std::vector<Period> out;
  int want = uniform(rng, 1, max_count);
  for (int attempt = 0; attempt < 8 && static_cast<int>(out.size()) < want; ++attempt) {
    Period p = random_period(rng, t);
    if (std::all_of(out.begin(), out.end(), [&](const Period& q) { return separated(p, q); }))
      out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Blocks obtained by cutting between t and t+1 with probability `cut`.
std::vector<Period> random_blocks(Rng& rng, const Timeline& t, double cut) {
  std::vector<Period> out;
  TimePoint lo = 0;
  for (TimePoint x = 0; x < t.last(); ++x) {
    if (chance(rng, cut)) {
      out.push_back({lo, x});
      lo = x + 1;
    }
  }
  out.push_back({lo, t.last()});
  return out;
}

void all_tuples(const std::vector<std::string>& atoms, std::size_t arity, Tuple& prefix,
                std::vector<Tuple>& out) {
  if (prefix.size() == arity) {
    out.push_back(prefix);
    return;
  }
  for (const auto& a : atoms) {
    prefix.push_back(Atom{a});
    all_tuples(atoms, arity, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const std::vector<std::string> kTemporalVars = {"e0", "e1", "e2"};
const std::vector<std::string> kEntityVars = {"x0", "x1"};

class FormulaGen {
 public:
  FormulaGen(const GenParams& p, const TopModel& m, Rng& rng) : p_(p), m_(m), rng_(rng) {
    for (const auto& [key, ext] : m.preds) preds_.push_back(key);
    for (const auto& [name, obj] : m.consts)
      (is_period(obj) ? period_consts_ : atom_consts_).push_back(name);
    for (const auto& [name, part] : m.cparts) cparts_.push_back(name);
    parts_ = cparts_;
    for (const auto& [name, part] : m.gparts) parts_.push_back(name);
  }

  top::Formula formula(int depth) {
    if (depth <= 1) {
      if (chance(rng_, 0.8)) return literal();
      return top::Part{pick(rng_, parts_), pick(rng_, kTemporalVars)};
    }
    static const std::vector<int> weights = {12, 18, 14, 12, 6, 6, 5, 5, 5, 4, 3, 3, 4, 3};
    std::discrete_distribution<int> op(weights.begin(), weights.end());
    int d = depth - 1;
    switch (op(rng_)) {
      case 0: return literal();
      case 1: return top::Past{pick(rng_, kTemporalVars), formula(d)};
      case 2: return top::At{temporal_term(), formula(d)};
      case 3: return top::And{formula(d), formula(d)};
      case 4: return top::Pres{formula(d)};
      case 5: return top::Perf{pick(rng_, kTemporalVars), formula(d)};
      case 6: return top::Culm{literal_node()};
      case 7: return top::Before{temporal_term(), formula(d)};
      case 8: return top::After{temporal_term(), formula(d)};
      case 9: return top::Fills{formula(d)};
      case 10: return top::NtenseVar{pick(rng_, kTemporalVars), formula(d)};
      case 11: return top::NtenseNow{formula(d)};
      case 12: return top::For{pick(rng_, cparts_), uniform(rng_, 1, 3), formula(d)};
      default: return top::Part{pick(rng_, parts_), pick(rng_, kTemporalVars)};
    }
  }

  top::Literal literal_node() {
    const PredicateKey& key = pick(rng_, preds_);
    top::Literal lit{key.functor, {}};
    for (std::size_t i = 0; i < key.arity; ++i) {
      if (atom_consts_.empty() || chance(rng_, 0.15))
        lit.args.push_back(top::Term::variable(pick(rng_, kEntityVars)));
      else
        lit.args.push_back(top::Term::constant(pick(rng_, atom_consts_)));
    }
    return lit;
  }

 private:
  top::Formula literal() { return literal_node(); }

  top::Term temporal_term() {
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.7 && !period_consts_.empty()) return top::Term::constant(pick(rng_, period_consts_));
    if (r < 0.8 && !atom_consts_.empty()) return top::Term::constant(pick(rng_, atom_consts_));
    return top::Term::variable(pick(rng_, kTemporalVars));
  }

  const GenParams& p_;
  const TopModel& m_;
  Rng& rng_;
  std::vector<PredicateKey> preds_;
  std::vector<std::string> atom_consts_, period_consts_, cparts_, parts_;
};

// Shrinking -----------------------------------------------------------------

template <class Node>
void rebuild_unary(const Node& n, std::vector<top::Formula>& out) {
  for (const auto& child : formula_shrinks(*n.body)) {
    Node copy = n;
    copy.body = child;
    out.emplace_back(std::move(copy));
  }
}

std::optional<Period> clip(const Period& p, TimePoint last) {
  if (p.lo > last) return std::nullopt;
  return Period{p.lo, std::min(p.hi, last)};
}

std::optional<TopModel> shorten_timeline(const TopModel& m) {
  if (m.timeline.size() < 2) return std::nullopt;
  TopModel s = m;
  s.timeline = Timeline(m.timeline.size() - 1);
  TimePoint last = s.timeline.last();
  for (auto& [name, obj] : s.consts)
    if (const Period* p = as_period(obj)) obj = clip(*p, last).value_or(Period{last, last});
  for (auto& [key, ext] : s.preds) {
    PeriodExtension clipped;
    for (const auto& [args, periods] : ext) {
      Tuple a = args;
      for (auto& o : a)
        if (const Period* p = as_period(o)) o = clip(*p, last).value_or(Period{last, last});
      std::vector<Period> kept;
      for (const Period& p : periods)
        if (auto c = clip(p, last)) kept.push_back(*c);
      if (!kept.empty()) clipped[a] = kept;
    }
    ext = std::move(clipped);
  }
  auto clip_blocks = [&](Partitioning& part) {
    std::vector<Period> kept;
    for (const Period& p : part.blocks)
      if (auto c = clip(p, last)) kept.push_back(*c);
    part.blocks = std::move(kept);
  };
  for (auto& [name, part] : s.cparts) clip_blocks(part);
  for (auto& [name, part] : s.gparts) {
    clip_blocks(part);
    int covered = 0;
    for (const Period& p : part.blocks) covered += p.length();
    if (covered == s.timeline.size() && !part.blocks.empty()) part.blocks.pop_back();
  }
  return s;
}

std::vector<TopModel> model_shrinks(const TopModel& m) {
  std::vector<TopModel> out;
  if (auto s = shorten_timeline(m)) out.push_back(std::move(*s));
  for (const auto& [key, ext] : m.preds) {
    for (const auto& [args, periods] : ext) {
      for (std::size_t i = 0; i < periods.size(); ++i) {
        {
          TopModel s = m;
          auto& ps = s.preds[key][args];
          ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(i));
          if (ps.empty()) s.preds[key].erase(args);
          out.push_back(std::move(s));
        }
        if (periods[i].length() > 1) {
          TopModel a = m;
          a.preds[key][args][i].lo += 1;
          out.push_back(std::move(a));
          TopModel b = m;
          b.preds[key][args][i].hi -= 1;
          out.push_back(std::move(b));
        }
      }
    }
  }
  for (const auto& [key, ext] : m.culms)
    for (const auto& [args, flag] : ext)
      if (flag) {
        TopModel s = m;
        s.culms[key].erase(args);
        out.push_back(std::move(s));
      }
  return out;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void check_params(const GenParams& p) {
  auto bound = [](const char* name, int value, int max) {
    if (value < 1 || value > max)
      throw Error(std::string(name) + " must be in 1.." + std::to_string(max) + ", got " +
                  std::to_string(value));
  };
  bound("timeline size", p.timeline_size, 10);
  bound("atom count", p.atom_count, 4);
  bound("predicate count", p.pred_count, 3);
  bound("max arity", p.max_arity, 2);
  bound("max depth", p.max_depth, 4);
  bound("max periods per tuple", p.max_periods_per_tuple, 2);
  bound("max free variables", p.max_free_vars, 3);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix(splitmix(seed) ^ splitmix(index + 0x632be59bd9b4e019ULL));
}

TopModel gen_model(const GenParams& p) {
  check_params(p);
  Rng rng(p.seed);
  TopModel m;
  m.timeline = Timeline(uniform(rng, std::min(3, p.timeline_size), p.timeline_size));
  const Timeline& t = m.timeline;

  int atoms = uniform(rng, 1, p.atom_count);
  for (int i = 0; i < atoms; ++i) {
    std::string name = "a" + std::to_string(i);
    m.domain.atoms.push_back(name);
    m.consts.emplace(name, Atom{name});
  }
  int period_consts = uniform(rng, 1, 2);
  for (int i = 0; i < period_consts; ++i)
    m.consts.emplace("c" + std::to_string(i), random_period(rng, t));

  int preds = uniform(rng, 1, p.pred_count);
  for (int i = 0; i < preds; ++i) {
    PredicateKey key{"p" + std::to_string(i), static_cast<std::size_t>(uniform(rng, 1, p.max_arity))};
    std::vector<Tuple> tuples;
    Tuple prefix;
    all_tuples(m.domain.atoms, key.arity, prefix, tuples);
    auto& ext = m.preds[key];
    for (const Tuple& args : tuples)
      if (chance(rng, 0.6)) ext[args] = random_maximal_periods(rng, t, p.max_periods_per_tuple);
    if (ext.empty()) ext[pick(rng, tuples)] = random_maximal_periods(rng, t, p.max_periods_per_tuple);
    for (const auto& [args, periods] : ext) m.culms[key][args] = chance(rng, 0.5);
  }

  m.cparts.emplace("cp0", Partitioning{PartitionKind::Complete, random_blocks(rng, t, 0.4)});
  if (chance(rng, 0.5)) m.cparts.emplace("cp1", uniform_partitioning(t, 1));

  std::vector<Period> gappy;
  for (const Period& b : random_blocks(rng, t, 0.5))
    if (chance(rng, 0.5)) gappy.push_back(b);
  int covered = 0;
  for (const Period& b : gappy) covered += b.length();
  if (covered == t.size()) gappy.erase(gappy.begin() + uniform(rng, 0, static_cast<int>(gappy.size()) - 1));
  m.gparts.emplace("gp0", Partitioning{PartitionKind::Gappy, gappy});
  return m;
}

top::Formula gen_formula(const GenParams& p, const TopModel& m) {
  check_params(p);
  Rng rng(splitmix(p.seed ^ 0xf0e1d2c3b4a59687ULL));
  FormulaGen gen(p, m, rng);
  for (int attempt = 0; attempt < 100; ++attempt) {
    // deeper targets are likelier: weight d for depth d
    std::vector<int> weights;
    for (int d = 1; d <= p.max_depth; ++d) weights.push_back(d);
    std::discrete_distribution<int> target(weights.begin(), weights.end());
    top::Formula f = gen.formula(target(rng) + 1);
    if (static_cast<int>(top::free_vars(f).size()) <= p.max_free_vars) return f;
  }
  return gen.literal_node();
}

Verdict check_equivalence(const TopModel& m, TimePoint st, const top::Formula& f,
                          const TranslateOptions& options) {
  Verdict v;
  v.top_witness = top::find_witness(m, st, f);
  v.top_value = v.top_witness.has_value();
  BotModel b = derive_bot_model(m, options.eta);
  v.bot_witness = bot::find_witness(b, st, translate(f, options));
  v.bot_value = v.bot_witness.has_value();
  v.agree = v.top_value == v.bot_value;
  return v;
}

Case make_case(const GenParams& p, std::uint64_t index) {
  GenParams q = p;
  q.seed = sub_seed(p.seed, index);
  Case c;
  c.index = index;
  c.model = gen_model(q);
  Rng rng(splitmix(q.seed ^ 0x5bd1e9955bd1e995ULL));
  int size = c.model.timeline.size();
  c.st = size >= 3 && chance(rng, 0.75) ? uniform(rng, 1, size - 2) : uniform(rng, 0, size - 1);
  c.formula = gen_formula(q, c.model);
  return c;
}

std::vector<top::Formula> formula_shrinks(const top::Formula& f) {
  std::vector<top::Formula> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, top::And>) {
          out.push_back(*n.lhs);
          out.push_back(*n.rhs);
          for (const auto& l : formula_shrinks(*n.lhs)) out.emplace_back(top::And{l, n.rhs});
          for (const auto& r : formula_shrinks(*n.rhs)) out.emplace_back(top::And{n.lhs, r});
        } else if constexpr (std::is_same_v<T, top::Culm>) {
          out.emplace_back(n.literal);
        } else if constexpr (requires { n.body; }) {
          out.push_back(*n.body);
          rebuild_unary(n, out);
        }
      },
      f.node);
  return out;
}

Counterexample shrink(const Counterexample& c, const TranslateOptions& options) {
  Counterexample best = c;
  auto try_candidate = [&](const TopModel& m, TimePoint st, const top::Formula& f) {
    if (!validate_model(m).empty() || !m.timeline.on_timeline(st)) return false;
    try {
      Verdict v = check_equivalence(m, st, f, options);
      if (v.agree) return false;
      best.model = m;
      best.st = st;
      best.formula = f;
      best.verdict = std::move(v);
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& f : formula_shrinks(best.formula))
      if (try_candidate(best.model, best.st, f)) {
        progress = true;
        break;
      }
    if (progress) continue;
    for (const auto& m : model_shrinks(best.model)) {
      TimePoint st = std::min(best.st, m.timeline.last());
      if (try_candidate(m, st, best.formula)) {
        progress = true;
        break;
      }
    }
  }
  return best;
}

std::string Report::text() const {
  std::string out;
  for (const auto& d : disagreements) {
    out += "disagreement seed=" + std::to_string(seed) + " case=" + std::to_string(d.index) +
           " st=" + std::to_string(d.st) + " top=" + (d.verdict.top_value ? "true" : "false") +
           " bot=" + (d.verdict.bot_value ? "true" : "false") + " model=" +
           hex(model_digest(d.model)) + " formula=" + top::print(d.formula) + "\n";
  }
  out += "cases=" + std::to_string(cases) + " disagreements=" + std::to_string(disagreements.size()) +
         "\n";
  return out;
}

Report run_campaign(const GenParams& p, std::size_t cases, const CampaignOptions& options) {
  check_params(p);
  std::vector<std::optional<Counterexample>> results(cases);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cases) return;
      try {
        Case c = make_case(p, i);
        Verdict v = check_equivalence(c.model, c.st, c.formula, options.translate);
        if (v.agree) continue;
        Counterexample ce{i, std::move(c.model), c.st, std::move(c.formula), std::move(v)};
        results[i] = options.shrink ? shrink(ce, options.translate) : std::move(ce);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cases;
        return;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cases, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  Report report;
  report.seed = p.seed;
  report.cases = cases;
  for (auto& r : results)
    if (r) report.disagreements.push_back(std::move(*r));
  return report;
}

}  // namespace chronos::equiv

#include <algorithm>
#include <map>

#include "chronos/bot.hpp"
#include "chronos/error.hpp"
#include "lexer.hpp"

namespace chronos::bot {

Term::Term(PeriodExpr p) {
  if (auto* r = std::get_if<Ref>(&p.node))
    node = std::move(*r);
  else
    node = std::move(p);
}

PeriodExpr as_period_expr(const Term& t) {
  if (const auto* r = std::get_if<Ref>(&t.node)) return *r;
  if (const auto* p = std::get_if<PeriodExpr>(&t.node)) return *p;
  throw Error("point expression used where a period is required");
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("conjoin: empty conjunction");
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = And{*it, acc};
  return acc;
}

namespace {

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (const auto* a = f.get_if<And>()) {
    collect_conjuncts(*a->lhs, out);
    collect_conjuncts(*a->rhs, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

const std::set<std::string, std::less<>> kReserved = {
    "subper", "eq", "period", "part", "prec", "beg", "now", "end", "earliest", "latest", "succ",
    "intersect"};

const std::set<std::string, std::less<>> kPointWords = {"beg", "now", "end", "earliest", "latest",
                                                       "succ"};

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(text) {}

  Formula parse_all() {
    Formula f = conjunction();
    if (!ts_.at(Tok::End)) ts_.fail("unexpected " + describe(ts_.peek()) + " after formula");
    return f;
  }

 private:
  Formula conjunction() {
    std::vector<Formula> units;
    units.push_back(unit());
    while (ts_.accept(Tok::Amp)) units.push_back(unit());
    return conjoin(units);
  }

  Formula unit() {
    if (ts_.accept(Tok::LParen)) {
      Formula f = conjunction();
      ts_.expect(Tok::RParen, "')'");
      return f;
    }
    const Token& head = ts_.peek();
    if (head.kind != Tok::Ident) ts_.fail("expected a formula, found " + describe(head));
    std::string word = ts_.take().text;
    if (kPointWords.contains(word) || word == "intersect")
      ts_.fail("'" + word + "' is not a formula");
    ts_.expect(Tok::LParen, ("'(' after " + word).c_str());
    Formula f = atom_body(word);
    ts_.expect(Tok::RParen, "')'");
    return f;
  }

  Formula atom_body(const std::string& word) {
    if (word == "subper") {
      PeriodExpr a = period();
      ts_.expect(Tok::Comma, "','");
      return Subper{a, period()};
    }
    if (word == "eq") {
      Term a = term();
      ts_.expect(Tok::Comma, "','");
      return Eq{a, term()};
    }
    if (word == "period") return IsPeriod{term()};
    if (word == "part") {
      const Token& t = ts_.peek();
      if (t.kind != Tok::Ident || kReserved.contains(t.text))
        ts_.fail("expected partitioning name, found " + describe(t));
      std::string name = ts_.take().text;
      ts_.expect(Tok::Comma, "','");
      return PartOf{name, term()};
    }
    if (word == "prec") {
      PointExpr a = point();
      ts_.expect(Tok::Comma, "','");
      return Prec{a, point()};
    }
    Literal lit{word, {}};
    lit.args.push_back(term());
    while (ts_.accept(Tok::Comma)) lit.args.push_back(term());
    return lit;
  }

  Term term() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Var) return Ref::variable(ts_.take().text);
    if (t.kind == Tok::LBracket || t.kind == Tok::LParen) return period();
    if (t.kind == Tok::Ident) {
      if (t.text == "intersect") return period();
      if (kPointWords.contains(t.text)) return point();
      if (kReserved.contains(t.text)) ts_.fail("reserved word '" + t.text + "' used as a term");
      return Ref::constant(ts_.take().text);
    }
    ts_.fail("expected a term, found " + describe(t));
  }

  PeriodExpr period() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::LBracket || t.kind == Tok::LParen) {
      bool lo_closed = ts_.take().kind == Tok::LBracket;
      PointExpr lo = point();
      ts_.expect(Tok::Comma, "','");
      PointExpr hi = point();
      const Token& close = ts_.peek();
      if (close.kind != Tok::RBracket && close.kind != Tok::RParen)
        ts_.fail("expected ']' or ')' closing a period, found " + describe(close));
      bool hi_closed = ts_.take().kind == Tok::RBracket;
      return Interval{lo, hi, lo_closed, hi_closed};
    }
    if (t.kind == Tok::Var) return Ref::variable(ts_.take().text);
    if (t.kind == Tok::Ident) {
      if (t.text == "intersect") {
        ts_.take();
        ts_.expect(Tok::LParen, "'(' after intersect");
        PeriodExpr a = period();
        ts_.expect(Tok::Comma, "','");
        PeriodExpr b = period();
        ts_.expect(Tok::RParen, "')'");
        return Intersect{a, b};
      }
      if (kReserved.contains(t.text)) ts_.fail("expected a period, found " + describe(t));
      return Ref::constant(ts_.take().text);
    }
    ts_.fail("expected a period, found " + describe(t));
  }

  PointExpr point() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident || !kPointWords.contains(t.text))
      ts_.fail("expected a time-point expression, found " + describe(t));
    std::string word = ts_.take().text;
    if (word == "beg") return Beg{};
    if (word == "now") return Now{};
    if (word == "end") return End{};
    ts_.expect(Tok::LParen, ("'(' after " + word).c_str());
    PointExpr result = word == "succ" ? PointExpr(Succ{point()})
                       : word == "earliest" ? PointExpr(Earliest{period()})
                                            : PointExpr(Latest{period()});
    ts_.expect(Tok::RParen, "')'");
    return result;
  }

  TokenStream ts_;
};

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};

}  // namespace

std::string print(const PointExpr& p) {
  return std::visit(Overload{
                        [](const Beg&) -> std::string { return "beg"; },
                        [](const Now&) -> std::string { return "now"; },
                        [](const End&) -> std::string { return "end"; },
                        [](const Earliest& e) { return "earliest(" + print(*e.of) + ")"; },
                        [](const Latest& e) { return "latest(" + print(*e.of) + ")"; },
                        [](const Succ& e) { return "succ(" + print(*e.of) + ")"; },
                    },
                    p.node);
}

std::string print(const PeriodExpr& p) {
  return std::visit(Overload{
                        [](const Interval& i) {
                          return std::string(i.lo_closed ? "[" : "(") + print(*i.lo) + "," +
                                 print(*i.hi) + (i.hi_closed ? "]" : ")");
                        },
                        [](const Intersect& i) {
                          return "intersect(" + print(*i.lhs) + ", " + print(*i.rhs) + ")";
                        },
                        [](const Ref& r) { return r.text(); },
                    },
                    p.node);
}

std::string print(const Term& t) {
  return std::visit([](const auto& n) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(n)>, Ref>)
      return n.text();
    else
      return print(n);
  }, t.node);
}

std::string print(const Formula& f) {
  auto args = [](const std::vector<Term>& ts) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) out += ", ";
      out += print(ts[i]);
    }
    return out;
  };
  return std::visit(
      Overload{
          [&](const Literal& l) { return l.functor + "(" + args(l.args) + ")"; },
          [](const And& a) {
            std::string lhs = print(*a.lhs);
            if (a.lhs->get_if<And>()) lhs = "(" + lhs + ")";
            return lhs + " & " + print(*a.rhs);
          },
          [](const Subper& s) { return "subper(" + print(s.sub) + ", " + print(s.super) + ")"; },
          [](const Eq& e) { return "eq(" + print(e.lhs) + ", " + print(e.rhs) + ")"; },
          [](const IsPeriod& p) { return "period(" + print(p.term) + ")"; },
          [](const PartOf& p) { return "part(" + p.partition + ", " + print(p.term) + ")"; },
          [](const Prec& p) { return "prec(" + print(p.lhs) + ", " + print(p.rhs) + ")"; },
      },
      f.node);
}

namespace {

struct VarCollector {
  std::vector<std::string> out;

  void ref(const Ref& r) {
    if (r.is_variable() && std::find(out.begin(), out.end(), r.name) == out.end())
      out.push_back(r.name);
  }
  void point(const PointExpr& p) {
    std::visit(Overload{
                   [](const Beg&) {}, [](const Now&) {}, [](const End&) {},
                   [&](const Earliest& e) { period(*e.of); },
                   [&](const Latest& e) { period(*e.of); },
                   [&](const Succ& e) { point(*e.of); },
               },
               p.node);
  }
  void period(const PeriodExpr& p) {
    std::visit(Overload{
                   [&](const Interval& i) {
                     point(*i.lo);
                     point(*i.hi);
                   },
                   [&](const Intersect& i) {
                     period(*i.lhs);
                     period(*i.rhs);
                   },
                   [&](const Ref& r) { ref(r); },
               },
               p.node);
  }
  void term(const Term& t) {
    std::visit(Overload{
                   [&](const Ref& r) { ref(r); },
                   [&](const PeriodExpr& p) { period(p); },
                   [&](const PointExpr& p) { point(p); },
               },
               t.node);
  }
  void formula(const Formula& f) {
    std::visit(Overload{
                   [&](const Literal& l) {
                     for (const auto& a : l.args) term(a);
                   },
                   [&](const And& a) {
                     formula(*a.lhs);
                     formula(*a.rhs);
                   },
                   [&](const Subper& s) {
                     period(s.sub);
                     period(s.super);
                   },
                   [&](const Eq& e) {
                     term(e.lhs);
                     term(e.rhs);
                   },
                   [&](const IsPeriod& p) { term(p.term); },
                   [&](const PartOf& p) { term(p.term); },
                   [&](const Prec& p) {
                     point(p.lhs);
                     point(p.rhs);
                   },
               },
               f.node);
  }
};

/// Structural comparison modulo a bijective renaming of non-fixed variables.
class AlphaMatcher {
 public:
  explicit AlphaMatcher(const std::set<std::string>& fixed) : fixed_(fixed) {}

  bool ref(const Ref& a, const Ref& b) {
    if (a.kind != b.kind) return false;
    if (!a.is_variable()) return a.name == b.name;
    bool fa = fixed_.contains(a.name);
    bool fb = fixed_.contains(b.name);
    if (fa || fb) return fa && fb && a.name == b.name;
    auto [it1, new1] = forward_.emplace(a.name, b.name);
    auto [it2, new2] = backward_.emplace(b.name, a.name);
    return it1->second == b.name && it2->second == a.name;
  }

  bool point(const PointExpr& a, const PointExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(Overload{
                          [](const Beg&) { return true; },
                          [](const Now&) { return true; },
                          [](const End&) { return true; },
                          [&](const Earliest& e) { return period(*e.of, *std::get<Earliest>(b.node).of); },
                          [&](const Latest& e) { return period(*e.of, *std::get<Latest>(b.node).of); },
                          [&](const Succ& e) { return point(*e.of, *std::get<Succ>(b.node).of); },
                      },
                      a.node);
  }

  bool period(const PeriodExpr& a, const PeriodExpr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(Overload{
                          [&](const Interval& i) {
                            const auto& j = std::get<Interval>(b.node);
                            return i.lo_closed == j.lo_closed && i.hi_closed == j.hi_closed &&
                                   point(*i.lo, *j.lo) && point(*i.hi, *j.hi);
                          },
                          [&](const Intersect& i) {
                            const auto& j = std::get<Intersect>(b.node);
                            return period(*i.lhs, *j.lhs) && period(*i.rhs, *j.rhs);
                          },
                          [&](const Ref& r) { return ref(r, std::get<Ref>(b.node)); },
                      },
                      a.node);
  }

  bool term(const Term& a, const Term& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(Overload{
                          [&](const Ref& r) { return ref(r, std::get<Ref>(b.node)); },
                          [&](const PeriodExpr& p) { return period(p, std::get<PeriodExpr>(b.node)); },
                          [&](const PointExpr& p) { return point(p, std::get<PointExpr>(b.node)); },
                      },
                      a.node);
  }

  bool formula(const Formula& a, const Formula& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        Overload{
            [&](const Literal& l) {
              const auto& k = std::get<Literal>(b.node);
              if (l.functor != k.functor || l.args.size() != k.args.size()) return false;
              for (std::size_t i = 0; i < l.args.size(); ++i)
                if (!term(l.args[i], k.args[i])) return false;
              return true;
            },
            [&](const And& x) {
              const auto& y = std::get<And>(b.node);
              return formula(*x.lhs, *y.lhs) && formula(*x.rhs, *y.rhs);
            },
            [&](const Subper& s) {
              const auto& t = std::get<Subper>(b.node);
              return period(s.sub, t.sub) && period(s.super, t.super);
            },
            [&](const Eq& e) {
              const auto& t = std::get<Eq>(b.node);
              return term(e.lhs, t.lhs) && term(e.rhs, t.rhs);
            },
            [&](const IsPeriod& p) { return term(p.term, std::get<IsPeriod>(b.node).term); },
            [&](const PartOf& p) {
              const auto& q = std::get<PartOf>(b.node);
              return p.partition == q.partition && term(p.term, q.term);
            },
            [&](const Prec& p) {
              const auto& q = std::get<Prec>(b.node);
              return point(p.lhs, q.lhs) && point(p.rhs, q.rhs);
            },
        },
        a.node);
  }

 private:
  const std::set<std::string>& fixed_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
};

}  // namespace

Formula parse(std::string_view text) {
  Formula f = Parser(text).parse_all();
  functors(f);
  return f;
}

std::vector<std::string> variables_in_order(const Formula& f) {
  VarCollector c;
  c.formula(f);
  return std::move(c.out);
}

std::vector<std::string> variables_in_order(const Term& t) {
  VarCollector c;
  c.term(t);
  return std::move(c.out);
}

std::set<std::string> free_vars(const Formula& f) {
  auto v = variables_in_order(f);
  return {v.begin(), v.end()};
}

std::set<std::pair<std::string, std::size_t>> functors(const Formula& f) {
  std::map<std::string, std::size_t> arity;
  for (const Formula& c : conjuncts(f)) {
    const auto* l = c.get_if<Literal>();
    if (!l) continue;
    auto [it, inserted] = arity.emplace(l->functor, l->args.size());
    if (!inserted && it->second != l->args.size())
      throw ArityError("functor " + l->functor + " used with arities " +
                       std::to_string(it->second) + " and " + std::to_string(l->args.size()));
  }
  return {arity.begin(), arity.end()};
}

std::set<std::string> partition_names(const Formula& f) {
  std::set<std::string> out;
  for (const Formula& c : conjuncts(f))
    if (const auto* p = c.get_if<PartOf>()) out.insert(p->partition);
  return out;
}

bool alpha_equivalent(const Formula& f, const Formula& g, const std::set<std::string>& fixed) {
  return AlphaMatcher(fixed).formula(f, g);
}

}  // namespace chronos::bot

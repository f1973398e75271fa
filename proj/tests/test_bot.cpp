#include "doctest.h"

#include <random>

#include "bot_gen.hpp"
#include "chronos/bot.hpp"
#include "chronos/bot_eval.hpp"
#include "chronos/equiv.hpp"
#include "chronos/error.hpp"
#include "chronos/translate.hpp"
#include "fixtures.hpp"
#include "reference.hpp"

using namespace chronos;
using namespace chronos::bot;

namespace {

Ref c(std::string n) { return Ref::constant(std::move(n)); }
Ref v(std::string n) { return Ref::variable(std::move(n)); }

const BotModel& b0() {
  static const BotModel b = derive_bot_model(fixture::m0());
  return b;
}

bool eval_b0(const std::string& text, const Assignment& g = {}, TimePoint st = 7) {
  return eval(b0(), st, g, parse(text));
}

std::optional<PointSet> period_of(const std::string& text, TimePoint st = 7) {
  auto f = parse("period(" + text + ")");
  return eval_period(b0(), st, {}, as_period_expr(f.get_if<IsPeriod>()->term));
}

std::optional<TimePoint> point_of(const std::string& text, TimePoint st = 7) {
  auto f = parse("prec(" + text + ", beg)");
  return eval_point(b0(), st, {}, f.get_if<Prec>()->lhs);
}

// Every point and period expression over {beg, now, end, c} up to depth 3.
struct Exprs {
  std::vector<PointExpr> points;
  std::vector<PeriodExpr> periods;
};

Exprs enumerate_exprs(const std::string& constant) {
  std::vector<PointExpr> p1{Beg{}, Now{}, End{}};
  std::vector<PeriodExpr> r1{PeriodExpr(c(constant))};
  auto grow = [](const std::vector<PointExpr>& pts, const std::vector<PeriodExpr>& pers) {
    Exprs out;
    out.points = {Beg{}, Now{}, End{}};
    for (const auto& r : pers) {
      out.points.push_back(Earliest{r});
      out.points.push_back(Latest{r});
    }
    for (const auto& p : pts) out.points.push_back(Succ{p});
    out.periods = pers;
    for (const auto& a : pts)
      for (const auto& b : pts)
        for (int k = 0; k < 4; ++k) out.periods.push_back(Interval{a, b, (k & 1) != 0, (k & 2) != 0});
    for (const auto& a : pers)
      for (const auto& b : pers) out.periods.push_back(Intersect{a, b});
    return out;
  };
  Exprs d2 = grow(p1, r1);
  Exprs d3 = grow(d2.points, d2.periods);
  return d3;
}

}  // namespace

TEST_SUITE("bot") {

TEST_CASE("parse examples") {
  CHECK(parse("empty(tank5, ?p) & subper(?e, ?p)") ==
        Formula(And{Literal{"empty", {c("tank5"), v("p")}}, Subper{v("e"), v("p")}}));
  CHECK(parse("eq(succ(latest(?m1)), earliest(?m2))") ==
        Formula(Eq{PointExpr(Succ{Latest{v("m1")}}), PointExpr(Earliest{v("m2")})}));
  Formula f = parse("subper(?e, intersect([beg,end], [beg,now)))");
  CHECK(f == Formula(Subper{v("e"), Intersect{Interval{Beg{}, End{}, true, true},
                                                Interval{Beg{}, Now{}, true, false}}}));
  CHECK(parse("part(minute, ?b) & prec(latest(?x), earliest(?y)) & period(d_jan)") ==
        Formula(And{PartOf{"minute", v("b")},
                    And{Prec{Latest{v("x")}, Earliest{v("y")}}, IsPeriod{c("d_jan")}}}));
  CHECK(parse("eq(?e, (now,end])") == Formula(Eq{v("e"), PeriodExpr(Interval{Now{}, End{}, false, true})}));
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(parse("subper(?e)"), SyntaxError);
  CHECK_THROWS_AS(parse("subper(?e, now)"), SyntaxError);
  CHECK_THROWS_AS(parse("prec(?e, now)"), SyntaxError);
  CHECK_THROWS_AS(parse("eq(?e, [beg,end)"), SyntaxError);
  CHECK_THROWS_AS(parse("p(a) & p(a, b)"), ArityError);
}

TEST_CASE("print examples") {
  CHECK(print(parse("subper(?e,intersect([beg,end],[beg,now)))")) == "subper(?e, intersect([beg,end], [beg,now)))");
  CHECK(print(parse("eq(succ(latest(?m1)),earliest(?m2))")) == "eq(succ(latest(?m1)), earliest(?m2))");
}

TEST_CASE("point and period expressions") {
  CHECK(point_of("now") == 7);
  CHECK(point_of("beg") == 0);
  CHECK(point_of("end") == 9);
  CHECK_FALSE(point_of("succ(latest([beg,end]))").has_value());
  CHECK_FALSE(point_of("earliest(intersect(d_jan, [now,end]))").has_value());
  CHECK(point_of("succ(latest(d_jan))") == 5);
  CHECK_FALSE(point_of("earliest(tank5)").has_value());

  CHECK(period_of("[beg, now)") == PointSet(Period{0, 6}));
  CHECK(period_of("intersect([beg,end], [beg,now))") == PointSet(Period{0, 6}));
  CHECK(period_of("[now, beg]") == PointSet::empty_set());
  CHECK(period_of("(now, end]") == PointSet(Period{8, 9}));
  CHECK(period_of("(beg, succ(beg))") == PointSet::empty_set());
  CHECK_FALSE(period_of("[now, succ(end)]").has_value());
  CHECK_FALSE(period_of("tank5").has_value());
  CHECK(period_of("d_jan") == PointSet(Period{3, 4}));
}

TEST_CASE("eval examples on the derived model") {
  std::string bot20 =
      "empty(tank5, ?p) & subper(?e, ?p) & subper(?e, intersect(intersect([beg,end], d_jan), [beg,now)))";
  CHECK(eval_b0(bot20, {{"p", Period{2, 5}}, {"e", Period{3, 4}}}));
  CHECK_FALSE(eval_b0("empty(tank5, ?p)", {{"p", Period{2, 4}}}));
  CHECK_FALSE(eval_b0("period(tank5)"));
  CHECK(eval_b0("period(d_jan)"));
  CHECK(eval_b0("part(fivepm, [now,now])"));
  CHECK_FALSE(eval_b0("part(fivepm, [beg,now])"));
  CHECK(eval_b0("cmp_building(housecorp, bridge2) & max_building(housecorp, bridge2, [succ(beg), end))",
                {}, 7) == false);
  CHECK(eval_b0("max_building(housecorp, bridge2, ?m)", {{"m", Period{1, 5}}}));

  CHECK(denot(b0(), 7, parse(bot20)));
  CHECK_FALSE(denot(b0(), 2, parse(bot20)));
  CHECK(denot(b0(), 7, parse("eq(?x, ?x)")));
  auto w = find_witness(b0(), 7, parse("empty(tank5, ?p)"));
  REQUIRE(w);
  CHECK(w->at("p") == Object(Period{2, 5}));

  TopModel m0 = fixture::m0();
  CHECK(ref::BotRef(m0, 7, ref::derived_literals(m0)).denot(parse(bot20)));
  CHECK_FALSE(ref::BotRef(m0, 2, ref::derived_literals(m0)).denot(parse(bot20)));
}

TEST_CASE("eval errors") {
  CHECK_THROWS_AS(eval_b0("subper(?e, [beg,end])"), UnboundVariable);
  CHECK_THROWS_AS(eval_b0("full(tank5, d_jan)"), UnknownFunctor);
  CHECK_THROWS_AS(eval_b0("part(hour, d_jan)"), UnknownPartitioning);
  CHECK_THROWS_AS(eval_b0("period(d_feb)"), UnknownConstant);
}

TEST_CASE("Undefined and Empty arguments make every atomic form false") {
  const std::string undef_point = "succ(end)";
  const std::string undef_period = "[now, succ(end)]";
  const std::string empty_period = "[now, beg]";
  CHECK_FALSE(eval_b0("eq(" + undef_point + ", " + undef_point + ")"));
  CHECK_FALSE(eval_b0("eq(" + undef_period + ", " + undef_period + ")"));
  CHECK_FALSE(eval_b0("eq(now, " + undef_point + ")"));
  CHECK_FALSE(eval_b0("prec(" + undef_point + ", now)"));
  CHECK_FALSE(eval_b0("prec(beg, " + undef_point + ")"));
  CHECK_FALSE(eval_b0("prec(beg, earliest(" + empty_period + "))"));
  for (const auto& bad : {undef_period, empty_period}) {
    CHECK_FALSE(eval_b0("subper(" + bad + ", [beg,end])"));
    CHECK_FALSE(eval_b0("subper([now,now], " + bad + ")"));
    CHECK_FALSE(eval_b0("period(" + bad + ")"));
    CHECK_FALSE(eval_b0("part(minute, " + bad + ")"));
    CHECK_FALSE(eval_b0("empty(tank5, " + bad + ")"));
    CHECK_FALSE(eval_b0("subper(intersect(" + bad + ", [beg,end]), [beg,end])"));
    CHECK_FALSE(eval_b0("subper([earliest(" + bad + "), end], [beg,end])"));
  }
  CHECK_FALSE(eval_b0("period(" + undef_point + ")"));
  // two empty sets are the same (defined) value
  CHECK(eval_b0("eq(" + empty_period + ", [end, beg])"));
}

TEST_CASE("period expressions denote Empty, Undefined or a period") {
  auto m = fixture::m0();
  Exprs ex = enumerate_exprs("d_jan");
  CHECK(ex.periods.size() > 1500);
  for (int n = 1; n <= 6; ++n) {
    TopModel small = m;
    small.timeline = Timeline(n);
    small.consts["d_jan"] = Period{std::min(1, n - 1), std::min(2, n - 1)};
    small.preds.clear();
    small.culms.clear();
    small.cparts = {{"minute", uniform_partitioning(small.timeline, 1)}};
    small.gparts.clear();
    BotModel b = derive_bot_model(small);
    for (int st = 0; st < n; ++st) {
      ref::BotRef oracle(small, st, ref::derived_literals(small));
      for (const auto& e : ex.periods) {
        auto s = eval_period(b, st, {}, e);
        auto expect = oracle.period({}, e);
        REQUIRE(s.has_value() == expect.has_value());
        if (s) {
          // convexity: the oracle works on raw point sets
          CHECK((expect->empty() || ref::convex_nonempty(*expect)));
          CHECK((s->empty() ? ref::Pts{} : ref::points(s->period())) == *expect);
        }
      }
      for (const auto& e : ex.points) REQUIRE(eval_point(b, st, {}, e) == oracle.point({}, e));
    }
  }
}

TEST_CASE("eq is an equivalence and prec a strict order on defined values") {
  Exprs ex = enumerate_exprs("d_jan");
  std::vector<PointExpr> pts(ex.points.begin(), ex.points.begin() + std::min<std::size_t>(ex.points.size(), 40));
  std::vector<Term> terms;
  for (const auto& p : pts) terms.emplace_back(p);
  for (std::size_t i = 0; i < 40 && i < ex.periods.size(); ++i) terms.emplace_back(ex.periods[i * 37 % ex.periods.size()]);
  auto eq = [](const Term& a, const Term& b) { return eval(b0(), 7, {}, Eq{a, b}); };
  auto prec = [](const PointExpr& a, const PointExpr& b) { return eval(b0(), 7, {}, Prec{a, b}); };
  for (const auto& a : terms) {
    bool defined = eq(a, a);
    for (const auto& b : terms) {
      if (eq(a, b)) CHECK(eq(b, a));
      if (!defined) CHECK_FALSE(eq(a, b));
      for (const auto& c : terms)
        if (eq(a, b) && eq(b, c)) CHECK(eq(a, c));
    }
  }
  for (const auto& a : pts) {
    CHECK_FALSE(prec(a, a));
    for (const auto& b : pts)
      for (const auto& c : pts)
        if (prec(a, b) && prec(b, c)) CHECK(prec(a, c));
  }
}

TEST_CASE("eval agrees with the reference evaluator on generated formulas") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    equiv::GenParams p;
    p.seed = seed;
    p.timeline_size = 6;
    TopModel m = equiv::gen_model(p);
    BotModel b = derive_bot_model(m);
    botgen::Generator gen(b, seed);
    auto objs = ref::objects(m);
    for (int k = 0; k < 20; ++k) {
      Formula f = gen.formula(4);
      int st = std::uniform_int_distribution<int>(0, m.timeline.size() - 1)(rng);
      Assignment g;
      for (const auto& x : variables_in_order(f))
        g[x] = objs[std::uniform_int_distribution<std::size_t>(0, objs.size() - 1)(rng)];
      ref::BotRef oracle(m, st, ref::derived_literals(m));
      REQUIRE_MESSAGE(eval(b, st, g, f) == oracle.eval(g, f), print(f));
    }
  }
}

TEST_CASE("witness search agrees with naive enumeration") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 200 && compared < 150; ++seed) {
    equiv::GenParams p;
    p.seed = seed;
    p.timeline_size = 4;
    p.max_depth = 3;
    TopModel m = equiv::gen_model(p);
    BotModel b = derive_bot_model(m);
    Formula f = translate(equiv::gen_formula(p, m));
    if (variables_in_order(f).size() > 4) continue;
    for (int st = 0; st < m.timeline.size(); ++st) {
      ref::BotRef oracle(m, st, ref::derived_literals(m));
      auto w = find_witness(b, st, f);
      REQUIRE_MESSAGE(w.has_value() == oracle.denot(f), print(f));
      if (w) CHECK(oracle.eval(*w, f));
    }
    ++compared;
  }
  CHECK(compared >= 100);
}

TEST_CASE("true literals on the derived model name maximal periods") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    equiv::GenParams p;
    p.seed = seed;
    p.timeline_size = 5;
    TopModel m = equiv::gen_model(p);
    BotModel b = derive_bot_model(m);
    for (const auto& [key, ext] : m.preds) {
      Formula f = Literal{key.functor, {}};
      auto& args = std::get<Literal>(f.node).args;
      for (std::size_t i = 0; i <= key.arity; ++i) args.emplace_back(v("a" + std::to_string(i)));
      ref::for_each_assignment(variables_in_order(f), ref::objects(m), [&](const Assignment& g) {
        if (!eval(b, 0, g, f)) return false;
        Tuple head;
        for (std::size_t i = 0; i < key.arity; ++i) head.push_back(g.at("a" + std::to_string(i)));
        const auto& ps = m.maximal_periods(key, head);
        REQUIRE(std::find(ps.begin(), ps.end(), *as_period(g.at("a" + std::to_string(key.arity)))) != ps.end());
        return false;
      });
    }
  }
}

TEST_CASE("print then parse is the identity on generated formulas") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    equiv::GenParams p;
    p.seed = seed;
    TopModel m = equiv::gen_model(p);
    BotModel b = derive_bot_model(m);
    botgen::Generator gen(b, seed);
    Formula f = gen.formula(5);
    REQUIRE(parse(print(f)) == f);
    Formula t = translate(equiv::gen_formula(p, m));
    REQUIRE(parse(print(t)) == t);
  }
}

TEST_CASE("alpha equivalence") {
  Formula a = parse("subper(?_et0, [beg,end]) & empty(tank5, ?_p1) & subper(?_et0, ?_p1)");
  CHECK(alpha_equivalent(a, parse("subper(?x, [beg,end]) & empty(tank5, ?y) & subper(?x, ?y)")));
  CHECK_FALSE(alpha_equivalent(a, parse("subper(?x, [beg,end]) & empty(tank5, ?x) & subper(?x, ?x)")));
  CHECK_FALSE(alpha_equivalent(a, parse("subper(?x, [beg,end]) & empty(tank5, ?y) & subper(?y, ?x)")));
  Formula b = parse("eq(?e, ?_et0)");
  CHECK(alpha_equivalent(b, parse("eq(?e, ?et)"), {"e"}));
  CHECK_FALSE(alpha_equivalent(b, parse("eq(?f, ?et)"), {"e"}));
}

}  // TEST_SUITE

#include <algorithm>
#include <map>

#include "chronos/error.hpp"
#include "chronos/top.hpp"
#include "lexer.hpp"

namespace chronos::top {

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

const std::set<std::string, std::less<>> kKeywords = {
    "Part", "Pres", "Past", "Perf", "Culm", "At", "Before", "After", "Fills", "Ntense", "For", "now"};

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
    Formula acc = units.back();
    for (auto it = units.rbegin() + 1; it != units.rend(); ++it) acc = And{*it, acc};
    return acc;
  }

  Formula unit() {
    if (ts_.accept(Tok::LParen)) {
      Formula f = conjunction();
      ts_.expect(Tok::RParen, "')'");
      return f;
    }
    const Token& head = ts_.peek();
    if (head.kind != Tok::Ident) ts_.fail("expected a formula, found " + describe(head));
    if (!kKeywords.contains(head.text)) return literal();

    Token op = ts_.take();
    if (op.text == "now") ts_.fail_at(op, "'now' is only allowed as the first argument of Ntense");
    ts_.expect(Tok::LBracket, ("'[' after " + op.text).c_str());
    Formula result = operator_body(op);
    ts_.expect(Tok::RBracket, "']'");
    return result;
  }

  Formula operator_body(const Token& op) {
    const std::string& name = op.text;
    if (name == "Part") {
      std::string partition = identifier("partitioning name");
      ts_.expect(Tok::Comma, "','");
      std::string var = variable();
      return Part{partition, var};
    }
    if (name == "Pres") return Pres{conjunction()};
    if (name == "Fills") return Fills{conjunction()};
    if (name == "Past" || name == "Perf") {
      std::string var = variable();
      ts_.expect(Tok::Comma, "','");
      Formula body = conjunction();
      if (name == "Past") return Past{var, body};
      return Perf{var, body};
    }
    if (name == "Culm") {
      const Token& t = ts_.peek();
      if (t.kind != Tok::Ident || kKeywords.contains(t.text) || ts_.peek(1).kind != Tok::LParen)
        ts_.fail("Culm requires a literal argument");
      Literal lit = literal_node();
      if (!ts_.at(Tok::RBracket)) ts_.fail("Culm requires a single literal argument");
      return Culm{lit};
    }
    if (name == "At" || name == "Before" || name == "After") {
      Term t = term();
      ts_.expect(Tok::Comma, "','");
      Formula body = conjunction();
      if (name == "At") return At{t, body};
      if (name == "Before") return Before{t, body};
      return After{t, body};
    }
    if (name == "Ntense") {
      if (ts_.at(Tok::Ident) && ts_.peek().text == "now") {
        ts_.take();
        ts_.expect(Tok::Comma, "','");
        return NtenseNow{conjunction()};
      }
      std::string var = variable();
      ts_.expect(Tok::Comma, "','");
      return NtenseVar{var, conjunction()};
    }
    // For
    std::string partition = identifier("partitioning name");
    ts_.expect(Tok::Comma, "','");
    Token qty = ts_.expect(Tok::Int, "a positive quantity");
    int quantity = 0;
    try {
      quantity = std::stoi(qty.text);
    } catch (const std::exception&) {
      ts_.fail_at(qty, "quantity out of range");
    }
    if (quantity < 1) ts_.fail_at(qty, "For quantity must be at least 1");
    ts_.expect(Tok::Comma, "','");
    return For{partition, quantity, conjunction()};
  }

  Formula literal() { return literal_node(); }

  Literal literal_node() {
    Token functor = ts_.take();
    if (!ts_.at(Tok::LParen))
      ts_.fail("expected '(' after functor " + functor.text);
    ts_.take();
    Literal lit{functor.text, {}};
    lit.args.push_back(term());
    while (ts_.accept(Tok::Comma)) lit.args.push_back(term());
    ts_.expect(Tok::RParen, "')'");
    return lit;
  }

  Term term() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Var) return Term::variable(ts_.take().text);
    if (t.kind == Tok::Ident) {
      if (kKeywords.contains(t.text)) ts_.fail("reserved word '" + t.text + "' used as a term");
      return Term::constant(ts_.take().text);
    }
    ts_.fail("expected a term, found " + describe(t));
  }

  std::string variable() { return ts_.expect(Tok::Var, "a variable").text; }

  std::string identifier(const char* what) {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident || kKeywords.contains(t.text))
      ts_.fail(std::string("expected ") + what + ", found " + describe(t));
    return ts_.take().text;
  }

  TokenStream ts_;
};

struct Printer {
  std::string out;

  void literal(const Literal& l) {
    out += l.functor + "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ", ";
      out += l.args[i].text();
    }
    out += ")";
  }

  void op(const char* name, const std::string& first, const Formula& body) {
    out += name;
    out += "[" + first + ", ";
    print(body);
    out += "]";
  }

  void op(const char* name, const Formula& body) {
    out += name;
    out += "[";
    print(body);
    out += "]";
  }

  void print(const Formula& f) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Literal>) {
            literal(n);
          } else if constexpr (std::is_same_v<T, And>) {
            bool wrap = n.lhs->template get_if<And>() != nullptr;
            if (wrap) out += "(";
            print(*n.lhs);
            if (wrap) out += ")";
            out += " & ";
            print(*n.rhs);
          } else if constexpr (std::is_same_v<T, Part>) {
            out += "Part[" + n.partition + ", ?" + n.var + "]";
          } else if constexpr (std::is_same_v<T, Pres>) {
            op("Pres", *n.body);
          } else if constexpr (std::is_same_v<T, Past>) {
            op("Past", "?" + n.var, *n.body);
          } else if constexpr (std::is_same_v<T, Perf>) {
            op("Perf", "?" + n.var, *n.body);
          } else if constexpr (std::is_same_v<T, Culm>) {
            out += "Culm[";
            literal(n.literal);
            out += "]";
          } else if constexpr (std::is_same_v<T, At>) {
            op("At", n.term.text(), *n.body);
          } else if constexpr (std::is_same_v<T, Before>) {
            op("Before", n.term.text(), *n.body);
          } else if constexpr (std::is_same_v<T, After>) {
            op("After", n.term.text(), *n.body);
          } else if constexpr (std::is_same_v<T, Fills>) {
            op("Fills", *n.body);
          } else if constexpr (std::is_same_v<T, NtenseVar>) {
            op("Ntense", "?" + n.var, *n.body);
          } else if constexpr (std::is_same_v<T, NtenseNow>) {
            op("Ntense", "now", *n.body);
          } else if constexpr (std::is_same_v<T, For>) {
            op("For", n.partition + ", " + std::to_string(n.quantity), *n.body);
          }
        },
        f.node);
  }
};

template <class Fn>
void walk(const Formula& f, Fn&& visit) {
  visit(f);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, And>) {
          walk(*n.lhs, visit);
          walk(*n.rhs, visit);
        } else if constexpr (requires { n.body; }) {
          walk(*n.body, visit);
        }
      },
      f.node);
}

void add_var(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

void add_term(std::vector<std::string>& out, const Term& t) {
  if (t.is_variable()) add_var(out, t.name);
}

}  // namespace

Formula parse(std::string_view text) {
  Formula f = Parser(text).parse_all();
  functors(f);
  return f;
}

std::string print(const Formula& f) {
  Printer p;
  p.print(f);
  return p.out;
}

std::vector<std::string> variables_in_order(const Formula& f) {
  std::vector<std::string> out;
  walk(f, [&](const Formula& g) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Literal>) {
            for (const auto& a : n.args) add_term(out, a);
          } else if constexpr (std::is_same_v<T, Culm>) {
            for (const auto& a : n.literal.args) add_term(out, a);
          } else if constexpr (std::is_same_v<T, At> || std::is_same_v<T, Before> ||
                               std::is_same_v<T, After>) {
            add_term(out, n.term);
          } else if constexpr (requires { n.var; }) {
            add_var(out, n.var);
          }
        },
        g.node);
  });
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  auto ordered = variables_in_order(f);
  return {ordered.begin(), ordered.end()};
}

std::set<std::pair<std::string, std::size_t>> functors(const Formula& f) {
  std::map<std::string, std::size_t> arity;
  auto note = [&](const Literal& l) {
    auto [it, inserted] = arity.emplace(l.functor, l.args.size());
    if (!inserted && it->second != l.args.size())
      throw ArityError("functor " + l.functor + " used with arities " +
                       std::to_string(it->second) + " and " + std::to_string(l.args.size()));
  };
  walk(f, [&](const Formula& g) {
    if (const auto* l = g.get_if<Literal>()) note(*l);
    if (const auto* c = g.get_if<Culm>()) note(c->literal);
  });
  return {arity.begin(), arity.end()};
}

std::set<std::string> partition_names(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (const auto* p = g.get_if<Part>()) out.insert(p->partition);
    if (const auto* p = g.get_if<For>()) out.insert(p->partition);
  });
  return out;
}

int depth(const Formula& f) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, And>) {
          return 1 + std::max(depth(*n.lhs), depth(*n.rhs));
        } else if constexpr (std::is_same_v<T, Culm>) {
          return 2;
        } else if constexpr (requires { n.body; }) {
          return 1 + depth(*n.body);
        } else {
          return 1;
        }
      },
      f.node);
}

}  // namespace chronos::top

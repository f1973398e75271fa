#include "chronos/model_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "chronos/error.hpp"

namespace chronos {

namespace {

/// Tokenizer for a single declaration line.
class LineReader {
 public:
  LineReader(std::string_view text, int line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ModelError("line " + std::to_string(line_) + ": " + message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    std::string w = word();
    for (char c : w)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number, found " + w);
    try {
      return std::stoi(w);
    } catch (const std::exception&) {
      fail("number out of range: " + w);
    }
  }

  Period period() {
    expect('[');
    int lo = integer();
    expect(',');
    int hi = integer();
    expect(']');
    return {lo, hi};
  }

  std::vector<Period> periods() {
    std::vector<Period> out;
    while (peek('[')) out.push_back(period());
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

class Compiler {
 public:
  ModelFile run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      LineReader r(raw, line);
      if (r.done()) continue;
      directive(r);
    }
    if (!have_timeline_) throw ModelError("missing 'timeline' declaration");
    if (!have_speech_) throw ModelError("missing 'speech' declaration");
    if (!file_.model.timeline.on_timeline(file_.speech))
      throw ModelError("speech time " + std::to_string(file_.speech) + " is not on the timeline");
    auto violations = validate_model(file_.model);
    if (!violations.empty()) {
      std::string msg = "invalid model:";
      for (const auto& v : violations) msg += " " + to_string(v.kind) + "(" + v.location + ")";
      throw ModelError(msg);
    }
    return std::move(file_);
  }

 private:
  TopModel& m() { return file_.model; }

  void directive(LineReader& r) {
    std::string kw = r.word();
    if (kw != "timeline" && !have_timeline_) r.fail("'timeline' must come first");
    if (kw == "timeline") {
      if (have_timeline_) r.fail("duplicate 'timeline'");
      try {
        m().timeline = Timeline(r.integer());
      } catch (const ModelError& e) {
        r.fail(e.what());
      }
      have_timeline_ = true;
    } else if (kw == "speech") {
      file_.speech = r.integer();
      have_speech_ = true;
    } else if (kw == "object") {
      declare_atom(r, r.word());
    } else if (kw == "periodconst") {
      std::string name = r.word();
      r.expect('=');
      define_const(r, name, r.period());
    } else if (kw == "const") {
      std::string name = r.word();
      r.expect('=');
      define_const(r, name, r.peek('[') ? Object(r.period()) : object_named(r, r.word()));
    } else if (kw == "pred") {
      std::string name = r.word();
      r.expect('/');
      int arity = r.integer();
      if (arity < 1) r.fail("predicate arity must be at least 1");
      m().preds[{name, static_cast<std::size_t>(arity)}];
    } else if (kw == "maximal") {
      auto [key, args] = atom_head(r);
      r.expect('=');
      auto& periods = m().preds[key][args];
      for (const Period& p : r.periods()) periods.push_back(p);
    } else if (kw == "culm") {
      auto [key, args] = atom_head(r);
      r.expect('=');
      std::string value = r.word();
      if (value != "true" && value != "false") r.fail("culm value must be true or false");
      m().culms[key][args] = value == "true";
    } else if (kw == "cpart" || kw == "gpart") {
      partitioning(r, kw == "cpart");
    } else {
      r.fail("unknown declaration '" + kw + "'");
    }
    if (!r.done()) r.fail("trailing input");
  }

  void declare_atom(LineReader& r, const std::string& name) {
    if (m().domain.has_atom(name)) r.fail("duplicate object " + name);
    if (m().consts.contains(name)) r.fail("name " + name + " already names a constant");
    m().domain.atoms.push_back(name);
    m().consts.emplace(name, Atom{name});
  }

  void define_const(LineReader& r, const std::string& name, Object value) {
    if (!m().consts.emplace(name, std::move(value)).second) r.fail("duplicate constant " + name);
  }

  Object object_named(LineReader& r, const std::string& name) {
    auto it = m().consts.find(name);
    if (it != m().consts.end()) return it->second;
    declare_atom(r, name);
    return Atom{name};
  }

  std::pair<PredicateKey, Tuple> atom_head(LineReader& r) {
    std::string functor = r.word();
    r.expect('(');
    Tuple args;
    do {
      args.push_back(r.peek('[') ? Object(r.period()) : object_named(r, r.word()));
    } while (r.accept(','));
    r.expect(')');
    PredicateKey key{functor, args.size()};
    if (!m().preds.contains(key))
      r.fail("predicate " + to_string(key) + " is not declared with 'pred'");
    return {key, std::move(args)};
  }

  void partitioning(LineReader& r, bool complete) {
    std::string name = r.word();
    if (m().cparts.contains(name) || m().gparts.contains(name))
      r.fail("duplicate partitioning " + name);
    r.expect('=');
    Partitioning part{complete ? PartitionKind::Complete : PartitionKind::Gappy, {}};
    if (!r.peek('[') && !r.done()) {
      std::string kw = r.word();
      if (kw != "blocks" || !complete) r.fail("expected a block list");
      try {
        part = uniform_partitioning(m().timeline, r.integer());
      } catch (const ModelError& e) {
        r.fail(e.what());
      }
    } else {
      part.blocks = r.periods();
    }
    (complete ? m().cparts : m().gparts).emplace(name, std::move(part));
  }

  ModelFile file_;
  bool have_timeline_ = false;
  bool have_speech_ = false;
};

std::string object_text(const Object& o) { return to_string(o); }

std::string head_text(const PredicateKey& key, const Tuple& args) {
  std::string out = key.functor + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += object_text(args[i]);
  }
  return out + ")";
}

std::string period_list(const std::vector<Period>& ps) {
  std::string out;
  for (const Period& p : ps) out += " " + to_string(p);
  return out;
}

}  // namespace

ModelFile parse_model_file(std::string_view text) { return Compiler().run(text); }

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

std::string serialize_model(const TopModel& m) {
  std::string out = "timeline " + std::to_string(m.timeline.size()) + "\n";
  for (const auto& a : m.domain.atoms) out += "object " + a + "\n";
  for (const auto& [name, value] : m.consts) {
    if (const auto* p = as_period(value)) {
      out += "periodconst " + name + " = " + to_string(*p) + "\n";
    } else if (std::get<Atom>(value).name != name) {
      out += "const " + name + " = " + std::get<Atom>(value).name + "\n";
    }
  }
  for (const auto& [key, ext] : m.preds) {
    out += "pred " + key.functor + "/" + std::to_string(key.arity) + "\n";
    for (const auto& [args, periods] : ext)
      out += "maximal " + head_text(key, args) + " =" + period_list(periods) + "\n";
  }
  for (const auto& [key, ext] : m.culms)
    for (const auto& [args, flag] : ext)
      out += "culm " + head_text(key, args) + " = " + (flag ? "true" : "false") + "\n";
  for (const auto& [name, part] : m.cparts) out += "cpart " + name + " =" + period_list(part.blocks) + "\n";
  for (const auto& [name, part] : m.gparts) out += "gpart " + name + " =" + period_list(part.blocks) + "\n";
  return out;
}

std::string serialize_model(const ModelFile& file) {
  std::string body = serialize_model(file.model);
  auto first_newline = body.find('\n');
  return body.substr(0, first_newline + 1) + "speech " + std::to_string(file.speech) + "\n" +
         body.substr(first_newline + 1);
}

std::uint64_t model_digest(const TopModel& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_model(m)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace chronos

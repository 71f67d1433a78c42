#include "oodn/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "oodn/inheritance.hpp"

namespace oodn {

std::string ParseError::message() const {
  std::ostringstream out;
  out << span.file << ":" << span.line << ":" << span.column << ": error: ";
  if (expected.empty()) {
    out << found;
  } else {
    out << "expected " << expected << ", found " << found;
  }
  return out.str();
}

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "class", "hetclass", "object", "relation", "prop", "method",
    "inherits", "all", "only", "true", "false"};

enum class Tok { Ident, Int, Real, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;  // lexeme; unescaped contents for strings
  SourceSpan span;
};

struct Failure {
  ParseError error;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", span_at(pos_, 0)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  SourceSpan span_at(std::size_t start, std::size_t len) const {
    SourceSpan s;
    s.file = file_;
    s.offset = start;
    s.length = len;
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), start);
    s.line = static_cast<std::size_t>(it - line_starts_.begin());
    s.column = start - *(it - 1) + 1;
    return s;
  }

  [[noreturn]] void fail(std::size_t start, std::size_t len, std::string expected,
                         std::string found) const {
    throw Failure{{span_at(start, len), std::move(expected), std::move(found)}};
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

  Token next() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (is_alpha(c)) {
      while (pos_ < text_.size() &&
             (is_alpha(text_[pos_]) || is_digit(text_[pos_]) || text_[pos_] == '_')) {
        ++pos_;
      }
      return make(Tok::Ident, start);
    }
    if (is_digit(c) || (c == '-' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
      ++pos_;
      bool real = false;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
        real = true;
        ++pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t p = pos_ + 1;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        if (p < text_.size() && is_digit(text_[p])) {
          real = true;
          pos_ = p;
          while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
      }
      return make(real ? Tok::Real : Tok::Int, start);
    }
    if (c == '"') {
      ++pos_;
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char ch = text_[pos_];
        if (ch == '\n') fail(start, pos_ - start, "closing '\"'", "end of line");
        if (ch == '\\') {
          if (pos_ + 1 >= text_.size()) break;
          const char esc = text_[++pos_];
          switch (esc) {
            case 'n': ch = '\n'; break;
            case 't': ch = '\t'; break;
            case '"': ch = '"'; break;
            case '\\': ch = '\\'; break;
            default: fail(pos_ - 1, 2, "escape sequence", std::string("'\\") + esc + "'");
          }
        }
        value += ch;
        ++pos_;
      }
      if (pos_ >= text_.size()) fail(start, pos_ - start, "closing '\"'", "end of input");
      ++pos_;
      Token t = make(Tok::String, start);
      t.text = std::move(value);
      return t;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return make(Tok::Punct, start);
    }
    if (std::string_view("{}():;=/,@").find(c) != std::string_view::npos) {
      ++pos_;
      return make(Tok::Punct, start);
    }
    fail(start, 1, "token", "'" + std::string(1, c) + "'");
  }

  Token make(Tok kind, std::size_t start) const {
    return {kind, std::string(text_.substr(start, pos_ - start)), span_at(start, pos_ - start)};
  }

  std::string_view text_;
  std::string file_;
  std::vector<std::size_t> line_starts_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

Rational parse_decimal(const Token& t) {
  // Integer or plain decimal literal, exactly.
  const std::string& s = t.text;
  if (s.find_first_of("eE") != std::string::npos) {
    throw Failure{{t.span, "decimal or fraction", describe(t)}};
  }
  const bool negative = !s.empty() && s[0] == '-';
  const std::string body = negative ? s.substr(1) : s;
  const auto dot = body.find('.');
  const std::string digits = dot == std::string::npos ? body : body.substr(0, dot) + body.substr(dot + 1);
  const std::size_t scale_digits = dot == std::string::npos ? 0 : body.size() - dot - 1;
  if (digits.size() > 18) throw Failure{{t.span, "number with at most 18 digits", describe(t)}};
  std::int64_t num = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), num);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < scale_digits; ++i) den *= 10;
  return Rational(negative ? -num : num, den);
}

struct Spans {
  std::map<std::string, SourceSpan> entity;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Spans& spans) : toks_(std::move(tokens)), spans_(spans) {}

  void parse_kb(Network& net) {
    while (!at_end()) parse_decl(net);
  }

  InheritancePlan parse_single_plan() {
    const Token heir = expect_ident("class name");
    InheritancePlan plan = parse_plan_rest(heir.text);
    if (is_punct(";")) take();
    if (!at_end()) fail("end of plan");
    return plan;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  [[noreturn]] void fail(std::string expected) const {
    throw Failure{{peek().span, std::move(expected), describe(peek())}};
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    take();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail("'" + std::string(w) + "'");
    take();
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident || kReserved.count(peek().text) != 0) fail(what);
    return take();
  }
  Token expect_string(const std::string& what) {
    if (peek().kind != Tok::String) fail(what);
    return take();
  }

  void record(const std::string& entity, const SourceSpan& span) {
    spans_.entity.emplace(entity, span);
  }

  void parse_decl(Network& net) {
    if (is_word("class")) return parse_class(net);
    if (is_word("hetclass")) return parse_het(net);
    if (is_word("object")) return parse_object(net);
    if (is_word("relation")) return parse_relation(net);
    if (peek().kind == Tok::Ident && is_word("inherits", 1)) {
      const Token heir = expect_ident("class name");
      record("plan " + heir.text, heir.span);
      net.plans.push_back(parse_plan_rest(heir.text));
      if (is_punct(";")) take();
      return;
    }
    fail("declaration");
  }

  TypeTag parse_type() {
    if (peek().kind != Tok::Ident) fail("type");
    auto tag = parse_type_tag(peek().text);
    if (!tag) fail("type (int, real, text, bool, fuzzy)");
    take();
    return *tag;
  }

  Rational parse_rational() {
    if (peek().kind != Tok::Int && peek().kind != Tok::Real) fail("number");
    const Token num = take();
    Rational r = parse_decimal(num);
    if (num.kind == Tok::Int && is_punct("/") && peek(1).kind == Tok::Int) {
      take();
      const Token den = take();
      const Rational d = parse_decimal(den);
      if (d == Rational(0)) throw Failure{{den.span, "non-zero denominator", describe(den)}};
      r /= d;
    }
    return r;
  }

  Degree parse_degree() {
    expect_punct("/");
    const Token& at = peek();
    const Rational r = parse_rational();
    if (r <= Rational(0) || r > Rational(1)) {
      throw Failure{{at.span, "degree in (0, 1]", format_rational(r)}};
    }
    return Degree(r);
  }

  FuzzyLabel parse_label() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        if (kReserved.count(t.text) != 0) fail("fuzzy-set element");
        return take().text;
      case Tok::String: return take().text;
      case Tok::Int: {
        std::int64_t v = 0;
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        take();
        return v;
      }
      case Tok::Real: {
        const double v = std::stod(t.text);
        take();
        return v;
      }
      default: fail("fuzzy-set element");
    }
  }

  PropertyValue parse_value() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) fail("integer in range");
      take();
      return v;
    }
    if (t.kind == Tok::Real) {
      const double v = std::stod(t.text);
      take();
      return v;
    }
    if (t.kind == Tok::String) return take().text;
    if (is_word("true")) {
      take();
      return true;
    }
    if (is_word("false")) {
      take();
      return false;
    }
    if (is_punct("{")) {
      take();
      FuzzySet set;
      while (!is_punct("}")) {
        FuzzyElement e;
        e.element = parse_label();
        expect_punct("/");
        const Token& at = peek();
        e.membership = parse_rational();
        if (e.membership < Rational(0) || e.membership > Rational(1)) {
          throw Failure{{at.span, "membership in [0, 1]", format_rational(e.membership)}};
        }
        set.elements.push_back(std::move(e));
        if (!is_punct(",")) break;
        take();
      }
      expect_punct("}");
      return set;
    }
    fail("value");
  }

  // prop/method declaration; `context` is the default owner.
  DegreedMember parse_member(const std::string& context) {
    DegreedMember out;
    if (is_word("prop")) {
      take();
      const Token name = expect_ident("property name");
      expect_punct(":");
      const TypeTag type = parse_type();
      expect_punct("=");
      PropertyValue value = parse_value();
      if (type == TypeTag::Real) {
        if (const auto* i = std::get_if<std::int64_t>(&value)) value = static_cast<double>(*i);
      }
      out.member = Member::property(name.text, context, type, std::move(value));
    } else if (is_word("method")) {
      take();
      const Token name = expect_ident("method name");
      expect_punct("(");
      std::vector<Parameter> params;
      while (!is_punct(")")) {
        const Token pname = expect_ident("parameter name");
        expect_punct(":");
        params.push_back({pname.text, parse_type()});
        if (!is_punct(",")) break;
        take();
      }
      expect_punct(")");
      std::optional<TypeTag> returns;
      if (is_punct("->")) {
        take();
        returns = parse_type();
      }
      out.member = Member::method(name.text, context, std::move(params), returns);
    } else {
      fail("'prop' or 'method'");
    }
    if (is_punct("/")) out.degree = parse_degree();
    if (is_punct("@")) {
      take();
      out.member.owner = expect_ident("owner name").text;
    }
    expect_punct(";");
    return out;
  }

  void add_member(MemberSet& set, DegreedMember m, const SourceSpan& span) {
    if (set.contains(m.name())) {
      throw Failure{{span, "unique member name", "duplicate '" + m.name() + "'"}};
    }
    set.add(std::move(m));
  }

  void declare(Network& net, const Token& name, ClassEntry entry) {
    if (net.has_entity(name.text)) {
      throw Failure{{name.span, "unique entity name", "redeclared '" + name.text + "'"}};
    }
    record(name.text, name.span);
    net.classes.emplace(name.text, std::move(entry));
  }

  void parse_class(Network& net) {
    expect_word("class");
    const Token name = expect_ident("class name");
    HomClass cls;
    cls.name = name.text;
    expect_punct("{");
    while (!is_punct("}")) {
      const SourceSpan at = peek().span;
      DegreedMember m = parse_member(cls.name);
      if (cls.spec.contains(m.name()) || cls.sig.contains(m.name())) {
        throw Failure{{at, "unique member name", "duplicate '" + m.name() + "'"}};
      }
      cls.add(std::move(m));
    }
    expect_punct("}");
    declare(net, name, std::move(cls));
  }

  void parse_het(Network& net) {
    expect_word("hetclass");
    const Token name = expect_ident("class name");
    HetClass het;
    het.name = name.text;
    expect_punct("{");
    while (!is_punct("}")) {
      if (is_word("core")) {
        take();
        expect_punct("{");
        while (!is_punct("}")) {
          const SourceSpan at = peek().span;
          add_member(het.core, parse_member(""), at);
        }
        expect_punct("}");
      } else if (is_word("projection")) {
        take();
        Projection p;
        p.label = expect_string("projection label").text;
        if (is_word("depends")) {
          take();
          p.depends_on.push_back(expect_string("projection label").text);
          while (is_punct(",")) {
            take();
            p.depends_on.push_back(expect_string("projection label").text);
          }
        }
        expect_punct("{");
        while (!is_punct("}")) {
          const SourceSpan at = peek().span;
          add_member(p.members, parse_member(""), at);
        }
        expect_punct("}");
        het.projections.push_back(std::move(p));
      } else if (is_word("participant")) {
        take();
        Participant part{expect_ident("participant name").text, std::nullopt};
        if (is_punct("->")) {
          take();
          part.entry = expect_string("projection label").text;
        }
        expect_punct(";");
        het.participants.push_back(std::move(part));
      } else {
        fail("'core', 'projection' or 'participant'");
      }
    }
    expect_punct("}");
    declare(net, name, std::move(het));
  }

  void parse_object(Network& net) {
    expect_word("object");
    const Token name = expect_ident("object name");
    expect_punct(":");
    ObjectInstance obj;
    obj.name = name.text;
    obj.class_ref = expect_ident("class name").text;
    expect_punct("{");
    while (!is_punct("}")) {
      const Token member = expect_ident("property name");
      expect_punct("=");
      if (obj.find(member.text) != nullptr) {
        throw Failure{{member.span, "unique assignment", "duplicate '" + member.text + "'"}};
      }
      obj.assignments.emplace_back(member.text, parse_value());
      expect_punct(";");
    }
    expect_punct("}");
    if (net.has_entity(name.text)) {
      throw Failure{{name.span, "unique entity name", "redeclared '" + name.text + "'"}};
    }
    record(name.text, name.span);
    net.objects.emplace(name.text, std::move(obj));
  }

  void parse_relation(Network& net) {
    const SourceSpan start = peek().span;
    expect_word("relation");
    if (peek().kind != Tok::Ident) fail("relation kind");
    auto kind = parse_relation_kind(peek().text);
    if (!kind) fail("relation kind (generalization, instance_of, aggregation, association)");
    take();
    Relation rel{*kind, "", "", "", std::nullopt};
    Token first = expect_ident("entity name");
    if (peek().kind == Tok::Ident) {
      rel.label = first.text;
      first = expect_ident("entity name");
    }
    rel.from = first.text;
    expect_punct("->");
    rel.to = expect_ident("entity name").text;
    if (is_punct("/")) rel.degree = parse_degree();
    expect_punct(";");
    record(std::string(to_string(rel.kind)) + " " + rel.from + " -> " + rel.to, start);
    net.relations.push_back(std::move(rel));
  }

  Selection parse_selection() {
    std::optional<Selection::Mode> forced;
    if (is_word("all") || is_word("only")) {
      forced = take().text == "all" ? Selection::Mode::All : Selection::Mode::Listed;
      if (!is_punct("(")) fail("'('");
    }
    Selection sel;
    if (!is_punct("(")) return sel;
    take();
    std::set<std::string> seen;
    bool all_weak = true;
    for (;;) {
      const Token name = expect_ident("member name");
      if (!seen.insert(name.text).second) {
        throw Failure{{name.span, "unique selected member", "duplicate '" + name.text + "'"}};
      }
      SelectionItem item{name.text, Degree::one()};
      if (is_punct("/")) item.degree = parse_degree();
      all_weak = all_weak && item.degree.is_weak();
      sel.items.push_back(std::move(item));
      if (!is_punct(",")) break;
      take();
    }
    expect_punct(")");
    sel.mode = forced.value_or(all_weak ? Selection::Mode::All : Selection::Mode::Listed);
    return sel;
  }

  PlanSource parse_source() {
    PlanSource src;
    src.name = expect_ident("class name").text;
    src.selection = parse_selection();
    return src;
  }

  InheritancePlan parse_plan_rest(const std::string& heir) {
    InheritancePlan plan;
    plan.heir = heir;
    expect_word("inherits");
    plan.sources.push_back(parse_source());
    if (is_punct(",")) {
      plan.chain = false;
      while (is_punct(",")) {
        take();
        plan.sources.push_back(parse_source());
      }
      if (is_word("inherits")) fail("';' (chains and source lists do not mix)");
    } else {
      while (is_word("inherits")) {
        take();
        plan.sources.push_back(parse_source());
      }
    }
    return plan;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Spans& spans_;
};

// Integer literals assigned to real-typed object properties become reals.
void coerce_assignments(Network& net) {
  for (auto& [name, obj] : net.objects) {
    MemberSet members;
    try {
      members = materialize(net, obj.class_ref);
    } catch (const std::exception&) {
      continue;
    }
    for (auto& [member, value] : obj.assignments) {
      const DegreedMember* m = members.find(member);
      if (m == nullptr || !m->member.is_property()) continue;
      const auto* i = std::get_if<std::int64_t>(&value);
      if (i != nullptr && m->member.as_property().type == TypeTag::Real) {
        value = static_cast<double>(*i);
      }
    }
  }
}

bool identifier_like(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  if (kReserved.count(s) != 0) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string format_label(const FuzzyLabel& l) {
  if (const auto* i = std::get_if<std::int64_t>(&l)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&l)) return format_real(*d);
  const auto& s = std::get<std::string>(l);
  return identifier_like(s) ? s : quote(s);
}

std::string degree_suffix(const Degree& d) { return d.is_strong() ? "" : "/" + to_string(d); }

}  // namespace

ParseResult parse(std::string_view text, std::string file) {
  ParseResult out;
  Spans spans;
  try {
    Parser parser(Lexer(text, file).run(), spans);
    parser.parse_kb(out.network);
  } catch (const Failure& f) {
    out.errors.push_back(f.error);
    return out;
  }
  coerce_assignments(out.network);
  for (const auto& v : validate_network(out.network)) {
    if (!v.is_error()) {
      out.warnings.push_back(v);
      continue;
    }
    SourceSpan span;
    span.file = file;
    auto it = spans.entity.find(v.entity);
    if (it != spans.entity.end()) {
      span = it->second;
    } else if (auto pos = v.entity.find(' '); pos != std::string::npos) {
      // Cycles are reported against a class name; fall back to the first word.
      if (auto jt = spans.entity.find(v.entity.substr(0, pos)); jt != spans.entity.end()) {
        span = jt->second;
      }
    }
    out.errors.push_back({span, "", v.rule + ": " + v.message});
  }
  return out;
}

InheritancePlan parse_plan(std::string_view text) {
  Spans spans;
  try {
    Parser parser(Lexer(text, "<plan>").run(), spans);
    return parser.parse_single_plan();
  } catch (const Failure& f) {
    throw std::invalid_argument(f.error.message());
  }
}

std::string format_value(const PropertyValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_real(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return quote(*s);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const auto& set = std::get<FuzzySet>(v);
  std::string out = "{";
  for (std::size_t i = 0; i < set.elements.size(); ++i) {
    if (i) out += ", ";
    out += format_label(set.elements[i].element) + "/" +
           format_rational(set.elements[i].membership);
  }
  return out + "}";
}

std::string format_member(const DegreedMember& m, const std::string& context) {
  std::string out;
  if (m.member.is_property()) {
    const Property& p = m.member.as_property();
    out = "prop " + m.name() + ": " + std::string(to_string(p.type)) + " = " + format_value(p.value);
  } else {
    const Method& f = m.member.as_method();
    out = "method " + m.name() + "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) out += ", ";
      out += f.params[i].name + ": " + std::string(to_string(f.params[i].type));
    }
    out += ")";
    if (f.returns) out += " -> " + std::string(to_string(*f.returns));
  }
  if (m.degree.is_weak()) out += " " + degree_suffix(m.degree);
  if (m.member.owner != context) out += " @" + m.member.owner;
  return out + ";";
}

std::string format_selection(const Selection& s) {
  if (s.items.empty()) return "";
  std::string prefix;
  const bool all_weak = std::all_of(s.items.begin(), s.items.end(),
                                    [](const SelectionItem& i) { return i.degree.is_weak(); });
  if (s.mode == Selection::Mode::All && !all_weak) prefix = "all ";
  if (s.mode == Selection::Mode::Listed && all_weak) prefix = "only ";
  std::string out = prefix + "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ", ";
    out += s.items[i].name + degree_suffix(s.items[i].degree);
  }
  return out + ")";
}

std::string format_plan(const InheritancePlan& plan) {
  std::string out = plan.heir;
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    out += (i == 0 || plan.chain) ? " inherits " : ", ";
    out += plan.sources[i].name;
    const std::string sel = format_selection(plan.sources[i].selection);
    if (!sel.empty()) out += " " + sel;
  }
  return out + ";";
}

std::string format_het(const HetClass& het) {
  std::ostringstream out;
  out << "hetclass " << het.name << " {\n";
  out << "  core {\n";
  for (const auto& m : het.core) out << "    " << format_member(m) << "\n";
  out << "  }\n";
  for (const auto& p : het.projections) {
    out << "  projection " << quote(p.label);
    for (std::size_t i = 0; i < p.depends_on.size(); ++i) {
      out << (i == 0 ? " depends " : ", ") << quote(p.depends_on[i]);
    }
    out << " {\n";
    for (const auto& m : p.members) out << "    " << format_member(m) << "\n";
    out << "  }\n";
  }
  for (const auto& part : het.participants) {
    out << "  participant " << part.name;
    if (part.entry) out << " -> " << quote(*part.entry);
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string serialize(const Network& net) {
  std::vector<std::string> blocks;
  for (const auto& [name, entry] : net.classes) {
    if (const auto* hom = std::get_if<HomClass>(&entry)) {
      std::string b = "class " + name + " {\n";
      for (const auto& m : hom->spec) b += "  " + format_member(m, name) + "\n";
      for (const auto& m : hom->sig) b += "  " + format_member(m, name) + "\n";
      blocks.push_back(b + "}\n");
    } else {
      blocks.push_back(format_het(std::get<HetClass>(entry)));
    }
  }
  for (const auto& [name, obj] : net.objects) {
    std::string b = "object " + name + " : " + obj.class_ref + " {\n";
    for (const auto& [member, value] : obj.assignments) {
      b += "  " + member + " = " + format_value(value) + ";\n";
    }
    blocks.push_back(b + "}\n");
  }
  std::string relations;
  for (const auto& r : net.relations) {
    relations += "relation " + std::string(to_string(r.kind)) + " ";
    if (!r.label.empty()) relations += r.label + " ";
    relations += r.from + " -> " + r.to;
    if (r.degree) relations += " /" + to_string(*r.degree);
    relations += ";\n";
  }
  if (!relations.empty()) blocks.push_back(relations);
  std::string plans;
  for (const auto& p : net.plans) plans += format_plan(p) + "\n";
  if (!plans.empty()) blocks.push_back(plans);

  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n";
    out += blocks[i];
  }
  return out;
}

}  // namespace oodn

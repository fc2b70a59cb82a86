#include "alint/parser.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace alint {

namespace {

// ---- tokenizer ----

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Plus, Star, Le, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_, col_ = 1, ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      SourceSpan span{file_, line_, col_};
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '\'')) {
          ident += text_[pos_];
          advance();
        }
        out.push_back({Tok::Ident, ident, span});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        std::string num;
        if (c == '-') {
          num += c;
          advance();
          if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError(span, "'-' must start a numeric literal");
        }
        bool seen_sep = false;
        while (pos_ < text_.size()) {
          char d = text_[pos_];
          if (std::isdigit(static_cast<unsigned char>(d))) {
            num += d;
            advance();
          } else if ((d == '/' || d == '.') && !seen_sep) {
            seen_sep = true;
            num += d;
            advance();
          } else {
            break;
          }
        }
        out.push_back({Tok::Number, num, span});
      } else {
        switch (c) {
          case '(': out.push_back({Tok::LParen, "(", span}); advance(); break;
          case ')': out.push_back({Tok::RParen, ")", span}); advance(); break;
          case ',': out.push_back({Tok::Comma, ",", span}); advance(); break;
          case '.': out.push_back({Tok::Dot, ".", span}); advance(); break;
          case '+': out.push_back({Tok::Plus, "+", span}); advance(); break;
          case '*': out.push_back({Tok::Star, "*", span}); advance(); break;
          case '<':
            advance();
            if (pos_ >= text_.size() || text_[pos_] != '=')
              throw SyntaxError(span, "expected '<='");
            advance();
            out.push_back({Tok::Le, "<=", span});
            break;
          case '=': out.push_back({Tok::Eq, "=", span}); advance(); break;
          default:
            throw SyntaxError(span, std::string("unexpected character '") + c + "'");
        }
      }
    }
    out.push_back({Tok::End, "", SourceSpan{file_, line_, col_}});
    return out;
  }

 private:
  void advance() { ++pos_, ++col_; }

  std::string_view text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

bool is_reserved(const std::string& name) {
  return name == "inf" || name == "sup" || name == "int" || name == kMetricName;
}

// ---- recursive descent ----

class Parser {
 public:
  Parser(const Signature& sig, std::vector<Token> tokens)
      : sig_(sig), tokens_(std::move(tokens)) {}

  FormulaPtr formula_only() {
    auto f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  TermPtr term_only() {
    auto t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  std::vector<Condition> condition_only() {
    auto lhs = formula();
    const Token& op = peek();
    if (op.kind == Tok::Le) {
      next();
      auto rhs = formula();
      expect(Tok::End, "end of input");
      return {Condition{lhs, rhs}};
    }
    if (op.kind == Tok::Eq) {
      next();
      auto rhs = formula();
      expect(Tok::End, "end of input");
      return {Condition{lhs, rhs}, Condition{rhs, lhs}};
    }
    throw SyntaxError(op.span, "expected '<=' or '=' after formula, got '" + op.text + "'");
  }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind)
      throw SyntaxError(t.span, "expected " + what + ", got '" +
                                    (t.kind == Tok::End ? "end of input" : t.text) + "'");
    return next();
  }

  Rational number(const Token& t) {
    auto q = parse_rational(t.text);
    if (!q) throw SyntaxError(t.span, "malformed rational '" + t.text + "'");
    return *q;
  }

  FormulaPtr formula() {
    FormulaPtr acc = scaled();
    while (peek().kind == Tok::Plus) {
      next();
      acc = Formula::add(acc, scaled());
    }
    return acc;
  }

  FormulaPtr scaled() {
    if (peek().kind == Tok::Number && peek(1).kind == Tok::Star) {
      Rational r = number(next());
      next();  // '*'
      return Formula::scale(r, scaled());
    }
    return primary();
  }

  FormulaPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Rational r = number(t);
        if (t.text == "1") return Formula::one();
        return Formula::numeral(r);
      }
      case Tok::LParen: {
        next();
        auto f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: {
        if (t.text == "inf" || t.text == "sup" || t.text == "int") {
          next();
          const Token& var = expect(Tok::Ident, "variable after quantifier");
          if (is_reserved(var.text))
            throw SyntaxError(var.span, "'" + var.text + "' is reserved");
          expect(Tok::Dot, "'.' after quantified variable");
          auto body = formula();  // maximal scope
          Quant q = t.text == "inf" ? Quant::Inf : t.text == "sup" ? Quant::Sup : Quant::Int;
          return Formula::quantified(q, var.text, body);
        }
        if (t.text == kMetricName) {
          next();
          expect(Tok::LParen, "'(' after 'd'");
          auto args = term_list();
          if (args.size() != 2)
            throw ArityMismatch(t.span.str() + ": the metric takes 2 arguments, got " +
                                std::to_string(args.size()));
          return Formula::dist(args[0], args[1]);
        }
        if (const RelationSym* rel = sig_.relation(t.text)) {
          next();
          expect(Tok::LParen, "'(' after relation name");
          auto args = term_list();
          if (static_cast<int>(args.size()) != rel->arity)
            throw ArityMismatch(t.span.str() + ": relation '" + t.text + "' expects " +
                                std::to_string(rel->arity) + " arguments, got " +
                                std::to_string(args.size()));
          return Formula::rel(t.text, std::move(args));
        }
        throw UnknownSymbol(t.span.str() + ": '" + t.text + "' is not a relation");
      }
      default:
        throw SyntaxError(t.span, "expected a formula, got '" +
                                      (t.kind == Tok::End ? "end of input" : t.text) + "'");
    }
  }

  std::vector<TermPtr> term_list() {
    std::vector<TermPtr> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  TermPtr term() {
    const Token& t = expect(Tok::Ident, "a term");
    if (t.text == "inf" || t.text == "sup" || t.text == "int")
      throw SyntaxError(t.span, "'" + t.text + "' is reserved");
    if (peek().kind == Tok::LParen) {
      next();
      auto args = term_list();
      const FunctionSym* fn = sig_.function(t.text);
      if (!fn) {
        if (sig_.relation(t.text) || t.text == kMetricName)
          throw SyntaxError(t.span, "relation '" + t.text + "' used as a term");
        throw UnknownSymbol(t.span.str() + ": unknown function '" + t.text + "'");
      }
      if (static_cast<int>(args.size()) != fn->arity)
        throw ArityMismatch(t.span.str() + ": function '" + t.text + "' expects " +
                            std::to_string(fn->arity) + " arguments, got " +
                            std::to_string(args.size()));
      return Term::app(t.text, std::move(args));
    }
    if (sig_.has_constant(t.text)) return Term::constant(t.text);
    if (sig_.function(t.text) || sig_.relation(t.text))
      throw SyntaxError(t.span, "symbol '" + t.text + "' needs arguments");
    return Term::var(t.text);
  }

  const Signature& sig_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

std::vector<Token> lex(std::string_view text, const std::string& file) {
  return Lexer(text, file).run();
}

}  // namespace

FormulaPtr parse_formula(const Signature& sig, std::string_view text, const std::string& file) {
  return Parser(sig, lex(text, file)).formula_only();
}

TermPtr parse_term(const Signature& sig, std::string_view text, const std::string& file) {
  return Parser(sig, lex(text, file)).term_only();
}

std::vector<Condition> parse_condition(const Signature& sig, std::string_view text,
                                       const std::string& file) {
  return Parser(sig, lex(text, file)).condition_only();
}

namespace {

std::vector<std::pair<int, std::string>> logical_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int lineno = 0;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    out.emplace_back(lineno, line.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

Theory parse_theory(const Signature& sig, std::string_view text, const std::string& file) {
  Theory out;
  for (const auto& [lineno, line] : logical_lines(text)) {
    auto conds = parse_condition(sig, line, file + ":" + std::to_string(lineno));
    out.insert(out.end(), conds.begin(), conds.end());
  }
  return out;
}

std::vector<FormulaPtr> parse_formula_list(const Signature& sig, std::string_view text,
                                           const std::string& file) {
  std::vector<FormulaPtr> out;
  for (const auto& [lineno, line] : logical_lines(text))
    out.push_back(parse_formula(sig, line, file + ":" + std::to_string(lineno)));
  return out;
}

std::vector<Rational> parse_weights(std::string_view text, const std::string& file) {
  std::vector<Rational> out;
  for (const auto& [lineno, line] : logical_lines(text)) {
    std::istringstream in{line};
    std::string tok;
    while (in >> tok) {
      auto q = parse_rational(tok);
      if (!q)
        throw SyntaxError(SourceSpan{file, lineno, 1}, "malformed rational '" + tok + "'");
      out.push_back(*q);
    }
  }
  return out;
}

// ---- JSON documents ----

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(SourceSpan{}, std::string("invalid JSON: ") + e.what());
  }
}

Rational json_rational(const json& v, const std::string& what) {
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (!q) throw SchemaError(what + ": malformed rational '" + v.get<std::string>() + "'");
    return *q;
  }
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_number_unsigned()) return Rational(static_cast<unsigned long>(v.get<unsigned long long>()));
  if (v.is_number_float())
    throw SchemaError(what + ": floating-point literals are not exact; use a string");
  throw SchemaError(what + ": expected a rational");
}

std::string json_label(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned())
    return std::to_string(v.get<long long>());
  throw SchemaError(what + ": expected a point label (string or integer)");
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& what) {
  if (!obj.is_object()) throw SchemaError(what + ": expected a JSON object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw SchemaError(what + ": unknown field '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) throw SchemaError(what + ": missing field '" + key + "'");
}

Signature signature_from_json(const json& j) {
  require_keys(j, {"constants", "functions", "relations"}, {}, "signature");
  std::vector<std::string> constants;
  std::vector<FunctionSym> functions;
  std::vector<RelationSym> relations;
  if (j.contains("constants"))
    for (const auto& c : j.at("constants")) constants.push_back(c.get<std::string>());
  if (j.contains("functions"))
    for (const auto& f : j.at("functions")) {
      require_keys(f, {"name", "arity", "lambda"}, {"name", "arity", "lambda"}, "function");
      functions.push_back({f.at("name").get<std::string>(), f.at("arity").get<int>(),
                           json_rational(f.at("lambda"), "function lambda")});
    }
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      require_keys(r, {"name", "arity", "lambda"}, {"name", "arity", "lambda"}, "relation");
      relations.push_back({r.at("name").get<std::string>(), r.at("arity").get<int>(),
                           json_rational(r.at("lambda"), "relation lambda")});
    }
  return Signature(std::move(constants), std::move(functions), std::move(relations));
}

int resolve_point(const FiniteChargedStructure& s, const json& v, const std::string& what) {
  std::string label = json_label(v, what);
  auto idx = s.point_index(label);
  if (!idx) throw SchemaError(what + ": unknown point '" + label + "'");
  return *idx;
}

void flatten_function(const FiniteChargedStructure& s, const json& v, int depth,
                      std::vector<int>& out, const std::string& what) {
  if (depth == 0) {
    out.push_back(resolve_point(s, v, what));
    return;
  }
  if (!v.is_array()) throw SchemaError(what + ": expected a nested array");
  if (static_cast<int>(v.size()) != s.size())
    throw DimensionMismatch(what + ": table level has " + std::to_string(v.size()) +
                            " entries for " + std::to_string(s.size()) + " points");
  for (const auto& e : v) flatten_function(s, e, depth - 1, out, what);
}

void flatten_relation(const FiniteChargedStructure& s, const json& v, int depth,
                      std::vector<Rational>& out, const std::string& what) {
  if (depth == 0) {
    out.push_back(json_rational(v, what));
    return;
  }
  if (!v.is_array()) throw SchemaError(what + ": expected a nested array");
  if (static_cast<int>(v.size()) != s.size())
    throw DimensionMismatch(what + ": table level has " + std::to_string(v.size()) +
                            " entries for " + std::to_string(s.size()) + " points");
  for (const auto& e : v) flatten_relation(s, e, depth - 1, out, what);
}

}  // namespace

Signature parse_signature(std::string_view json_text) {
  return signature_from_json(parse_json(json_text));
}

std::optional<Signature> embedded_signature(std::string_view json_text) {
  json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("signature")) return std::nullopt;
  return signature_from_json(j.at("signature"));
}

FiniteChargedStructure parse_structure(const Signature& sig, std::string_view json_text) {
  json j = parse_json(json_text);
  require_keys(j,
               {"signature", "points", "metric", "charge", "mass", "constants", "functions",
                "relations"},
               {"points", "metric", "charge"}, "structure");

  FiniteChargedStructure s;
  s.sig = sig;
  for (const auto& p : j.at("points")) s.points.push_back(json_label(p, "points"));
  const int n = s.size();
  if (n == 0) throw DimensionMismatch("structure must have at least one point");

  if (!j.at("metric").is_array())
    throw SchemaError("metric: expected an array of rows");
  for (const auto& row : j.at("metric")) {
    std::vector<Rational> r;
    if (!row.is_array()) throw SchemaError("metric: expected an array of rows");
    for (const auto& e : row) r.push_back(json_rational(e, "metric"));
    s.metric.push_back(std::move(r));
  }

  for (const auto& e : j.at("charge")) s.charge.push_back(json_rational(e, "charge"));

  if (j.contains("mass")) {
    Rational declared = json_rational(j.at("mass"), "mass");
    Rational actual = 0;
    for (const auto& w : s.charge) actual += w;
    if (declared != actual)
      throw SchemaError("mass: declared " + to_string(declared) + " but charge sums to " +
                        to_string(actual));
  }

  if (j.contains("constants")) {
    for (const auto& [name, v] : j.at("constants").items()) {
      if (!sig.has_constant(name))
        throw SchemaError("constants: '" + name + "' is not in the signature");
      s.constants[name] = resolve_point(s, v, "constant " + name);
    }
  }
  if (j.contains("functions")) {
    for (const auto& [name, v] : j.at("functions").items()) {
      const FunctionSym* fn = sig.function(name);
      if (!fn) throw SchemaError("functions: '" + name + "' is not in the signature");
      FunctionTable table;
      table.arity = fn->arity;
      flatten_function(s, v, fn->arity, table.values, "function " + name);
      s.functions[name] = std::move(table);
    }
  }
  if (j.contains("relations")) {
    for (const auto& [name, v] : j.at("relations").items()) {
      const RelationSym* rel = sig.relation(name);
      if (!rel) throw SchemaError("relations: '" + name + "' is not in the signature");
      RelationTable table;
      table.arity = rel->arity;
      flatten_relation(s, v, rel->arity, table.values, "relation " + name);
      s.relations[name] = std::move(table);
    }
  }

  check_dimensions(s);
  return s;
}

namespace {

Binding parse_binding(const Signature& sig, MetaKind kind, const json& v,
                      const std::string& what) {
  switch (kind) {
    case MetaKind::Formula:
      if (!v.is_string()) throw SchemaError(what + ": expected a formula string");
      return parse_formula(sig, v.get<std::string>(), what);
    case MetaKind::Term:
      if (!v.is_string()) throw SchemaError(what + ": expected a term string");
      return parse_term(sig, v.get<std::string>(), what);
    case MetaKind::Variable: {
      if (!v.is_string()) throw SchemaError(what + ": expected a variable name");
      auto t = parse_term(sig, v.get<std::string>(), what);
      if (!std::holds_alternative<Term::Var>(t->node))
        throw SchemaError(what + ": '" + v.get<std::string>() + "' is not a variable");
      return std::get<Term::Var>(t->node).name;
    }
    case MetaKind::Scalar:
      return json_rational(v, what);
    case MetaKind::TermList: {
      if (!v.is_array()) throw SchemaError(what + ": expected an array of term strings");
      std::vector<TermPtr> terms;
      for (const auto& e : v) {
        if (!e.is_string()) throw SchemaError(what + ": expected a term string");
        terms.push_back(parse_term(sig, e.get<std::string>(), what));
      }
      return terms;
    }
    case MetaKind::FnSymbol: {
      if (!v.is_string()) throw SchemaError(what + ": expected a function symbol name");
      std::string name = v.get<std::string>();
      if (!sig.function(name))
        throw SchemaError(what + ": '" + name + "' is not a function symbol");
      return name;
    }
    case MetaKind::RelSymbol: {
      if (!v.is_string()) throw SchemaError(what + ": expected a relation symbol name");
      std::string name = v.get<std::string>();
      if (name != kMetricName && !sig.relation(name))
        throw SchemaError(what + ": '" + name + "' is not a relation symbol");
      return name;
    }
  }
  throw SchemaError(what + ": unsupported binding kind");
}

Condition parse_step_condition(const Signature& sig, const json& v, const std::string& what) {
  if (!v.is_string()) throw SchemaError(what + ": expected a condition string");
  auto conds = parse_condition(sig, v.get<std::string>(), what);
  if (conds.size() != 1)
    throw SchemaError(what + ": a step states a single inequality; use '<='");
  return conds[0];
}

}  // namespace

ProofScript parse_proof(const Signature& sig, std::string_view json_text) {
  json j = parse_json(json_text);
  require_keys(j, {"signature", "hypotheses", "steps"}, {"steps"}, "proof");

  ProofScript script;
  if (j.contains("hypotheses")) {
    for (const auto& h : j.at("hypotheses")) {
      if (!h.is_string()) throw SchemaError("hypotheses: expected condition strings");
      auto conds = parse_condition(sig, h.get<std::string>(), "hypothesis");
      script.hypotheses.insert(script.hypotheses.end(), conds.begin(), conds.end());
    }
  }

  std::set<int> seen;
  for (const auto& sj : j.at("steps")) {
    require_keys(sj, {"id", "condition", "justification"}, {"id", "condition", "justification"},
                 "step");
    Step step;
    if (!sj.at("id").is_number_integer() && !sj.at("id").is_number_unsigned())
      throw SchemaError("step id: expected an integer");
    step.id = sj.at("id").get<int>();
    if (!seen.insert(step.id).second)
      throw SchemaError("duplicate step id " + std::to_string(step.id));
    step.condition = parse_step_condition(sig, sj.at("condition"),
                                          "step " + std::to_string(step.id));

    const json& just = sj.at("justification");
    if (just.is_string() && just.get<std::string>() == "hyp") {
      step.justification = Step::Hyp{};
    } else if (just.is_object() && just.contains("axiom")) {
      require_keys(just, {"axiom", "bindings"}, {"axiom"}, "justification");
      Step::Axiom ax;
      ax.id = just.at("axiom").get<std::string>();
      if (!is_axiom(ax.id)) throw UnknownAxiomName("unknown axiom '" + ax.id + "'");
      const auto& metas = axiom_metavars(ax.id);
      if (just.contains("bindings")) {
        for (const auto& [key, v] : just.at("bindings").items()) {
          const MetaKind* kind = nullptr;
          for (const auto& [name, k] : metas)
            if (name == key) kind = &k;
          if (!kind)
            throw SchemaError("axiom " + ax.id + " has no metavariable '" + key + "'");
          ax.bindings[key] =
              parse_binding(sig, *kind, v, "binding " + key + " of " + ax.id);
        }
      }
      step.justification = std::move(ax);
    } else if (just.is_object() && just.contains("rule")) {
      require_keys(just, {"rule", "premises"}, {"rule", "premises"}, "justification");
      Step::Rule rule;
      auto name = just.at("rule").get<std::string>();
      auto r = rule_from_name(name);
      if (!r) throw SchemaError("unknown rule '" + name + "'");
      rule.rule = *r;
      for (const auto& p : just.at("premises")) {
        if (!p.is_number_integer() && !p.is_number_unsigned())
          throw SchemaError("premises: expected step ids");
        int pid = p.get<int>();
        if (!seen.count(pid) || pid == step.id)
          throw DanglingPremiseId("step " + std::to_string(step.id) +
                                  " references missing or later step " + std::to_string(pid));
        rule.premises.push_back(pid);
      }
      step.justification = std::move(rule);
    } else {
      throw SchemaError("step " + std::to_string(step.id) +
                        ": justification must be \"hyp\", {axiom,...} or {rule,...}");
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

// ---- pretty printing ----

namespace {

void print_term(const Term& t, std::string& out) {
  std::visit(overloaded{
                 [&](const Term::Var& v) { out += v.name; },
                 [&](const Term::Const& c) { out += c.name; },
                 [&](const Term::App& f) {
                   out += f.fn;
                   out += '(';
                   for (size_t i = 0; i < f.args.size(); ++i) {
                     if (i) out += ',';
                     print_term(*f.args[i], out);
                   }
                   out += ')';
                 },
             },
             t.node);
}

// `tail` is true when no token follows this subformula in the enclosing
// expression, so a quantifier may keep its maximal scope unparenthesized.
void print_formula(const Formula& phi, bool tail, std::string& out) {
  std::visit(
      overloaded{
          [&](const Formula::One&) { out += '1'; },
          [&](const Formula::Rel& r) {
            out += r.rel;
            out += '(';
            for (size_t i = 0; i < r.args.size(); ++i) {
              if (i) out += ',';
              print_term(*r.args[i], out);
            }
            out += ')';
          },
          [&](const Formula::Dist& d) {
            out += kMetricName;
            out += '(';
            print_term(*d.lhs, out);
            out += ',';
            print_term(*d.rhs, out);
            out += ')';
          },
          [&](const Formula::Add& a) {
            print_formula(*a.lhs, false, out);
            out += " + ";
            if (std::holds_alternative<Formula::Add>(a.rhs->node)) {
              out += '(';
              print_formula(*a.rhs, true, out);
              out += ')';
            } else {
              print_formula(*a.rhs, tail, out);
            }
          },
          [&](const Formula::Scale& s) {
            out += to_string(s.factor);
            out += " * ";
            if (std::holds_alternative<Formula::Add>(s.arg->node)) {
              out += '(';
              print_formula(*s.arg, true, out);
              out += ')';
            } else {
              print_formula(*s.arg, tail, out);
            }
          },
          [&](const Formula::Quantified& q) {
            if (!tail) out += '(';
            out += q.quant == Quant::Inf ? "inf" : q.quant == Quant::Sup ? "sup" : "int";
            out += ' ';
            out += q.var;
            out += ". ";
            print_formula(*q.body, true, out);
            if (!tail) out += ')';
          },
      },
      phi.node);
}

}  // namespace

std::string pretty(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string pretty(const Formula& phi) {
  std::string out;
  print_formula(phi, true, out);
  return out;
}

std::string pretty(const Condition& c) {
  return pretty(*c.lhs) + " <= " + pretty(*c.rhs);
}

// ---- writers ----

namespace {

json signature_json(const Signature& sig) {
  json j = json::object();
  if (!sig.constants().empty()) j["constants"] = sig.constants();
  if (!sig.functions().empty()) {
    json fs = json::array();
    for (const auto& f : sig.functions())
      fs.push_back({{"name", f.name}, {"arity", f.arity}, {"lambda", to_string(f.lipschitz)}});
    j["functions"] = fs;
  }
  if (!sig.relations().empty()) {
    json rs = json::array();
    for (const auto& r : sig.relations())
      rs.push_back({{"name", r.name}, {"arity", r.arity}, {"lambda", to_string(r.lipschitz)}});
    j["relations"] = rs;
  }
  return j;
}

json nest_function(const FiniteChargedStructure& s, const std::vector<int>& values, int arity,
                   long& cursor) {
  if (arity == 0) return s.points[values[cursor++]];
  json arr = json::array();
  for (int i = 0; i < s.size(); ++i) arr.push_back(nest_function(s, values, arity - 1, cursor));
  return arr;
}

json nest_relation(const FiniteChargedStructure& s, const std::vector<Rational>& values,
                   int arity, long& cursor) {
  if (arity == 0) return to_string(values[cursor++]);
  json arr = json::array();
  for (int i = 0; i < s.size(); ++i) arr.push_back(nest_relation(s, values, arity - 1, cursor));
  return arr;
}

}  // namespace

std::string signature_to_json(const Signature& sig) { return signature_json(sig).dump(2); }

std::string structure_to_json(const FiniteChargedStructure& s, bool with_signature) {
  json j;
  if (with_signature) j["signature"] = signature_json(s.sig);
  j["points"] = s.points;
  json metric = json::array();
  for (const auto& row : s.metric) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    metric.push_back(r);
  }
  j["metric"] = metric;
  json charge = json::array();
  for (const auto& w : s.charge) charge.push_back(to_string(w));
  j["charge"] = charge;
  if (!s.constants.empty()) {
    json cs = json::object();
    for (const auto& [name, idx] : s.constants) cs[name] = s.points[idx];
    j["constants"] = cs;
  }
  if (!s.functions.empty()) {
    json fs = json::object();
    for (const auto& [name, table] : s.functions) {
      long cursor = 0;
      fs[name] = nest_function(s, table.values, table.arity, cursor);
    }
    j["functions"] = fs;
  }
  if (!s.relations.empty()) {
    json rs = json::object();
    for (const auto& [name, table] : s.relations) {
      long cursor = 0;
      rs[name] = nest_relation(s, table.values, table.arity, cursor);
    }
    j["relations"] = rs;
  }
  return j.dump(2);
}

std::string weights_to_text(const std::vector<Rational>& ws) {
  std::string out;
  for (const auto& w : ws) {
    out += to_string(w);
    out += '\n';
  }
  return out;
}

}  // namespace alint

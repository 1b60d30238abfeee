#include "hpd/dsl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hpd/duality_checks.hpp"

namespace hpd {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : cur_(tokenize(source)) {}

  Ast run() {
    Ast ast;
    while (!cur_.at_end()) ast.statements.push_back(statement());
    return ast;
  }

 private:
  Statement statement() {
    const Token& kw = cur_.peek();
    if (kw.is_word("symbol")) return symbol_decl();
    if (kw.is_word("category")) return category_decl();
    if (kw.is_word("intersect")) return intersect_decl();
    if (kw.is_word("disjoint")) return disjoint_decl();
    if (kw.is_word("dual")) return dual_decl();
    if (kw.is_word("check")) return check_stmt();
    cur_.fail("expected a statement (symbol, category, intersect, disjoint, "
              "dual or check), found " +
              describe(kw));
  }

  Name name(std::string_view what) {
    const Token& t = cur_.expect_identifier(what);
    return Name{t.text, t.span};
  }

  int projective_rank() {
    cur_.expect_word("P");
    cur_.expect_punct('(');
    const Token& t = cur_.expect_integer("an ambient rank");
    if (t.text.size() > 6)
      throw HpdError(ErrorKind::Syntax, "ambient rank too large", t.span);
    cur_.expect_punct(')');
    return std::stoi(t.text);
  }

  PolyList poly_list() {
    PolyList out;
    cur_.expect_punct('[');
    out.values.push_back(parse_polynomial(cur_, &out.refs));
    while (cur_.accept_punct(','))
      out.values.push_back(parse_polynomial(cur_, &out.refs));
    cur_.expect_punct(']');
    return out;
  }

  void claim(std::set<std::string>& seen, const Name& n, const char* what) {
    if (!seen.insert(n.text).second)
      throw HpdError(ErrorKind::DuplicateDeclaration,
                     std::string(what) + " '" + n.text + "' declared twice",
                     n.span);
  }

  SymbolDecl symbol_decl() {
    SymbolDecl d;
    d.span = cur_.next().span;
    do {
      d.names.push_back(name("a symbol name"));
      claim(symbols_, d.names.back(), "symbol");
    } while (cur_.accept_punct(','));
    cur_.expect_punct(';');
    return d;
  }

  CategoryDecl category_decl() {
    CategoryDecl d;
    d.span = cur_.next().span;
    d.name = name("a category name");
    claim(categories_, d.name, "category");
    cur_.expect_word("over");
    d.ambient = projective_rank();
    cur_.expect_word("primitive");
    d.right = poly_list();
    if (cur_.peek().is_word("left")) {
      cur_.next();
      d.left = poly_list();
    }
    cur_.expect_punct(';');
    return d;
  }

  IntersectDecl intersect_decl() {
    IntersectDecl d;
    d.span = cur_.next().span;
    d.first = name("a category name");
    cur_.expect_punct(',');
    d.second = name("a category name");
    cur_.expect_word("over");
    d.ambient = projective_rank();
    cur_.expect_punct('=');
    d.value = parse_polynomial(cur_, &d.refs);
    cur_.expect_punct(';');
    return d;
  }

  DisjointDecl disjoint_decl() {
    DisjointDecl d;
    d.span = cur_.next().span;
    d.names.push_back(name("a category name"));
    cur_.expect_punct(',');
    do {
      d.names.push_back(name("a category name"));
    } while (cur_.accept_punct(','));
    cur_.expect_punct(';');
    return d;
  }

  DualDecl dual_decl() {
    DualDecl d;
    d.span = cur_.next().span;
    d.name = name("a category name");
    claim(duals_, d.name, "dual of");
    cur_.expect_word("primitive");
    d.primitives = poly_list();
    cur_.expect_punct(';');
    return d;
  }

  CheckStmt check_stmt() {
    CheckStmt s;
    s.call.span = cur_.next().span;
    const Token& check = cur_.expect_identifier("a check name");
    const auto& names = known_checks();
    if (std::find(names.begin(), names.end(), check.text) == names.end())
      throw HpdError(ErrorKind::UnknownCheck,
                     "unknown check '" + check.text + "'", check.span);
    s.call.name = check.text;
    s.call.span = check.span;
    cur_.expect_punct('(');
    do {
      const Token& t = cur_.expect_identifier("a category name or option");
      if (cur_.peek().is_punct('=')) {
        cur_.next();
        s.call.options.emplace_back(t.text, parse_polynomial(cur_, &s.refs));
        s.call.option_spans.push_back(t.span);
      } else {
        if (!s.call.options.empty())
          throw HpdError(ErrorKind::Syntax,
                         "category arguments must come before options",
                         t.span);
        s.call.args.push_back(t.text);
        s.call.arg_spans.push_back(t.span);
      }
    } while (cur_.accept_punct(','));
    cur_.expect_punct(')');
    cur_.expect_punct(';');
    return s;
  }

  TokenCursor cur_;
  std::set<std::string> symbols_;
  std::set<std::string> categories_;
  std::set<std::string> duals_;
};

void check_symbols(const std::vector<SymbolRef>& refs,
                   const std::set<std::string>& symbols) {
  for (const auto& r : refs)
    if (!symbols.count(r.name))
      throw HpdError(ErrorKind::UnknownSymbol,
                     "undeclared symbol '" + r.name + "'", r.span);
}

const LefschetzProfile& category_at(const Workspace& ws, const Name& n) {
  auto it = ws.categories.find(n.text);
  if (it == ws.categories.end())
    throw HpdError(ErrorKind::UnknownCategory,
                   "unknown category '" + n.text + "'", n.span);
  return it->second;
}

}  // namespace

Ast parse(std::string_view source) { return Parser(source).run(); }

Workspace validate(const Ast& ast, const ValidateOptions& options) {
  Workspace ws;
  for (const auto& st : ast.statements)
    if (const auto* d = std::get_if<SymbolDecl>(&st))
      for (const auto& n : d->names) ws.symbols.insert(n.text);

  for (const auto& st : ast.statements) {
    const auto* d = std::get_if<CategoryDecl>(&st);
    if (!d) continue;
    check_symbols(d->right.refs, ws.symbols);
    std::optional<std::vector<InvariantExpr>> left;
    if (d->left) {
      check_symbols(d->left->refs, ws.symbols);
      left = d->left->values;
    }
    try {
      ws.categories.emplace(
          d->name.text,
          LefschetzProfile::build(d->name.text, d->ambient, d->right.values,
                                  left, options.allow_nonmoderate));
    } catch (const HpdError& e) {
      throw e.located(d->name.span);
    }
  }

  for (const auto& st : ast.statements) {
    const auto* d = std::get_if<DualDecl>(&st);
    if (!d) continue;
    const auto& base = category_at(ws, d->name);
    check_symbols(d->primitives.refs, ws.symbols);
    try {
      ws.duals.emplace(d->name.text,
                       LefschetzProfile::build(d->name.text, base.ambient(),
                                               d->primitives.values,
                                               std::nullopt,
                                               options.allow_nonmoderate));
    } catch (const HpdError& e) {
      throw e.located(d->name.span);
    }
  }

  std::map<IntersectionKey, SourceSpan> intersect_spans;
  for (const auto& st : ast.statements) {
    const auto* d = std::get_if<IntersectDecl>(&st);
    if (!d) continue;
    for (const Name* n : {&d->first, &d->second}) {
      const auto& p = category_at(ws, *n);
      if (p.ambient() != d->ambient)
        throw HpdError(ErrorKind::AmbientMismatch,
                       "category '" + n->text + "' lives over P(" +
                           std::to_string(p.ambient()) + "), not P(" +
                           std::to_string(d->ambient) + ")",
                       n->span);
    }
    check_symbols(d->refs, ws.symbols);
    auto key = IntersectionKey::make(d->first.text, d->second.text, d->ambient);
    if (!ws.intersections.emplace(key, d->value).second)
      throw HpdError(ErrorKind::DuplicateDeclaration,
                     "intersection of '" + key.first + "' and '" + key.second +
                         "' declared twice",
                     d->span);
    intersect_spans[key] = d->span;
  }

  std::set<std::vector<std::string>> disjoint;
  for (const auto& st : ast.statements) {
    const auto* d = std::get_if<DisjointDecl>(&st);
    if (!d) continue;
    std::vector<std::string> names;
    int ambient = 0;
    for (const auto& n : d->names) {
      const auto& p = category_at(ws, n);
      if (ambient && p.ambient() != ambient)
        throw HpdError(ErrorKind::AmbientMismatch,
                       "disjoint categories must share an ambient rank",
                       n.span);
      ambient = p.ambient();
      if (std::find(names.begin(), names.end(), n.text) != names.end())
        throw HpdError(ErrorKind::InvalidArgument,
                       "'" + n.text + "' listed twice in a disjoint set",
                       n.span);
      names.push_back(n.text);
    }
    std::sort(names.begin(), names.end());
    disjoint.insert(std::move(names));
  }
  ws.disjoint_sets.assign(disjoint.begin(), disjoint.end());

  for (const auto& [key, value] : ws.intersections) {
    if (key.first == key.second || !ws.are_disjoint({key.first, key.second}))
      continue;
    if (value.is_zero()) continue;
    if (value.is_constant())
      throw HpdError(ErrorKind::ConflictingIntersection,
                     "'" + key.first + "' and '" + key.second +
                         "' are declared disjoint but their intersection is " +
                         value.to_string(),
                     intersect_spans[key]);
    ws.warnings.push_back("intersection of " + key.first + " and " +
                          key.second + " is declared as " + value.to_string() +
                          " but the pair is disjoint; 0 is used");
  }

  for (const auto& [name, p] : ws.categories)
    for (std::size_t j = 0; j < p.primitives().size(); ++j)
      if (p.primitives()[j].evaluate_at_ones() < 0)
        ws.warnings.push_back("category " + name + ": primitive " +
                              std::to_string(j) +
                              " is negative at the all-ones assignment");

  for (const auto& st : ast.statements) {
    const auto* s = std::get_if<CheckStmt>(&st);
    if (!s) continue;
    check_symbols(s->refs, ws.symbols);
    validate_check(s->call, ws);
    ws.checks.push_back(s->call);
  }
  return ws;
}

Workspace load_workspace(std::string_view source,
                         const ValidateOptions& options) {
  return validate(parse(source), options);
}

namespace {

std::string poly_list_text(const std::vector<InvariantExpr>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].to_string();
  }
  return out + "]";
}

}  // namespace

std::string print_canonical(const Workspace& ws) {
  std::ostringstream out;
  if (!ws.symbols.empty()) {
    out << "symbol ";
    bool first = true;
    for (const auto& s : ws.symbols) {
      out << (first ? "" : ", ") << s;
      first = false;
    }
    out << ";\n";
  }
  for (const auto& [name, p] : ws.categories) {
    out << "category " << name << " over P(" << p.ambient() << ") primitive "
        << poly_list_text(p.primitives());
    if (p.has_explicit_left())
      out << " left " << poly_list_text(p.left_primitives());
    out << ";\n";
  }
  for (const auto& [name, p] : ws.duals)
    out << "dual " << name << " primitive " << poly_list_text(p.primitives())
        << ";\n";
  for (const auto& [key, value] : ws.intersections)
    out << "intersect " << key.first << ", " << key.second << " over P("
        << key.ambient << ") = " << value.to_string() << ";\n";
  for (const auto& set : ws.disjoint_sets) {
    out << "disjoint ";
    for (std::size_t i = 0; i < set.size(); ++i)
      out << (i ? ", " : "") << set[i];
    out << ";\n";
  }
  for (const auto& c : ws.checks) {
    out << "check " << c.name << "(";
    bool first = true;
    for (const auto& a : c.args) {
      out << (first ? "" : ", ") << a;
      first = false;
    }
    for (const auto& [k, v] : c.options) {
      out << (first ? "" : ", ") << k << "=" << v.to_string();
      first = false;
    }
    out << ");\n";
  }
  return out.str();
}

}  // namespace hpd

#include "olms/persistence.hpp"

#include "olms/error.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace olms {

namespace {

enum class AxiomKind { Class, ObjectProperty, DataProperty, Individual, Object, Data };

struct AxiomLine {
  AxiomKind kind;
  std::size_t line;
  std::vector<Id> args;
  std::optional<Id> inverse;  // ObjectProperty only
  std::string literal;        // Data only
};

std::string join(const IdSet& ids) {
  std::string out;
  for (const auto& id : ids) {
    out += ' ';
    out += id;
  }
  return out;
}

[[noreturn]] void syntax(std::size_t line, const std::string& detail) {
  throw DocumentError(Errc::SyntaxError, line, detail);
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<AxiomKind> kind_from(std::string_view word) {
  if (word == "Class") return AxiomKind::Class;
  if (word == "ObjectProperty") return AxiomKind::ObjectProperty;
  if (word == "DataProperty") return AxiomKind::DataProperty;
  if (word == "Individual") return AxiomKind::Individual;
  if (word == "Object") return AxiomKind::Object;
  if (word == "Data") return AxiomKind::Data;
  return std::nullopt;
}

AxiomLine parse_line(std::string_view text, std::size_t line) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    syntax(line, "expected <Kind>(<arguments>)");
  }
  auto kind = kind_from(text.substr(0, open));
  if (!kind) {
    syntax(line, "unknown axiom kind '" + std::string(text.substr(0, open)) + "'");
  }
  AxiomLine axiom{*kind, line, {}, std::nullopt, {}};
  std::string_view body = text.substr(open + 1, text.size() - open - 2);

  std::size_t i = 0;
  bool have_literal = false;
  while (i < body.size()) {
    if (body[i] == ' ' || body[i] == '\t') {
      ++i;
      continue;
    }
    if (have_literal) {
      syntax(line, "unexpected text after literal");
    }
    if (body[i] == '"') {
      if (axiom.kind != AxiomKind::Data) {
        syntax(line, "literal outside a Data axiom");
      }
      std::string literal;
      ++i;
      bool closed = false;
      while (i < body.size()) {
        char c = body[i++];
        if (c == '\\') {
          if (i >= body.size() || (body[i] != '"' && body[i] != '\\')) {
            syntax(line, "invalid escape in literal");
          }
          literal += body[i++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          literal += c;
        }
      }
      if (!closed) {
        syntax(line, "unterminated literal");
      }
      axiom.literal = std::move(literal);
      have_literal = true;
      continue;
    }
    auto end = body.find_first_of(" \t", i);
    std::string_view word = body.substr(i, end == std::string_view::npos ? body.size() - i : end - i);
    i += word.size();
    if (word.starts_with("inverse=")) {
      if (axiom.kind != AxiomKind::ObjectProperty || axiom.inverse || axiom.args.size() != 3) {
        syntax(line, "misplaced inverse=");
      }
      word.remove_prefix(8);
      if (!is_identifier(word)) {
        syntax(line, "'" + std::string(word) + "' is not an identifier");
      }
      axiom.inverse = Id(word);
      continue;
    }
    if (!is_identifier(word)) {
      syntax(line, "'" + std::string(word) + "' is not an identifier");
    }
    if (axiom.inverse) {
      syntax(line, "inverse= must come last");
    }
    axiom.args.emplace_back(word);
  }

  const auto n = axiom.args.size();
  bool arity_ok = false;
  switch (axiom.kind) {
    case AxiomKind::Class: arity_ok = n >= 1; break;
    case AxiomKind::ObjectProperty: arity_ok = n == 3; break;
    case AxiomKind::DataProperty: arity_ok = n == 2; break;
    case AxiomKind::Individual: arity_ok = n >= 2; break;
    case AxiomKind::Object: arity_ok = n == 3; break;
    case AxiomKind::Data: arity_ok = n == 2 && have_literal; break;
  }
  if (!arity_ok) {
    syntax(line, "wrong number of arguments");
  }
  return axiom;
}

// Re-throws a store error with the line it came from.
template <class F>
void at_line(std::size_t line, F&& fn) {
  try {
    fn();
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    throw DocumentError(e.code(), line, e.detail());
  }
}

} // namespace

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string serialize(const OntologyStore& store) {
  std::ostringstream out;
  for (const auto& [id, node] : store.classes()) {
    out << "Class(" << id << join(node.parents) << ")\n";
  }
  for (const auto& [id, decl] : store.object_properties()) {
    out << "ObjectProperty(" << id << ' ' << decl.domain << ' ' << decl.range;
    if (decl.names_inverse) {
      out << " inverse=" << *decl.inverse;
    }
    out << ")\n";
  }
  for (const auto& [id, decl] : store.data_properties()) {
    out << "DataProperty(" << id << ' ' << decl.domain << ")\n";
  }
  for (const auto& [id, ind] : store.individuals()) {
    out << "Individual(" << id << join(ind.types) << ")\n";
  }
  for (const auto& a : store.stated_object_assertions()) {
    out << "Object(" << a.property << ' ' << a.subject << ' ' << a.object << ")\n";
  }
  for (const auto& a : store.data_assertions()) {
    out << "Data(" << a.property << ' ' << a.subject << " \"" << escape_literal(a.value)
        << "\")\n";
  }
  return out.str();
}

std::size_t axiom_count(const OntologyStore& store) {
  return store.classes().size() + store.object_properties().size() +
         store.data_properties().size() + store.individuals().size() +
         store.stated_object_assertions().size() + store.data_assertions().size();
}

OntologyStore parse_ontology(std::string_view document) {
  std::vector<AxiomLine> axioms;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    ++line;
    auto text = trim(document.substr(pos, eol - pos));
    pos = eol + 1;
    if (text.empty() || text.front() == '#') {
      continue;
    }
    axioms.push_back(parse_line(text, line));
  }

  auto of_kind = [&](AxiomKind kind) {
    std::vector<const AxiomLine*> out;
    for (const auto& a : axioms) {
      if (a.kind == kind) out.push_back(&a);
    }
    return out;
  };

  OntologyStore store;

  // Classes first without parents, then the edges; add_parent rejects cycles.
  const auto classes = of_kind(AxiomKind::Class);
  for (const auto* a : classes) {
    at_line(a->line, [&] { store.declare_class(a->args[0], {}); });
  }
  for (const auto* a : classes) {
    for (std::size_t i = 1; i < a->args.size(); ++i) {
      at_line(a->line, [&] {
        if (!store.has_class(a->args[i])) {
          throw Error(Errc::UnknownParent, "parent '" + a->args[i] + "' is not a declared class");
        }
        store.add_parent(a->args[0], a->args[i]);
      });
    }
  }

  const auto properties = of_kind(AxiomKind::ObjectProperty);
  for (const auto* a : properties) {
    if (!a->inverse) {
      at_line(a->line, [&] { store.declare_object_property(a->args[0], a->args[1], a->args[2]); });
    }
  }
  for (const auto* a : properties) {
    if (a->inverse) {
      at_line(a->line, [&] {
        store.declare_object_property(a->args[0], a->args[1], a->args[2], a->inverse);
      });
    }
  }

  for (const auto* a : of_kind(AxiomKind::DataProperty)) {
    at_line(a->line, [&] { store.declare_data_property(a->args[0], a->args[1]); });
  }

  for (const auto* a : of_kind(AxiomKind::Individual)) {
    at_line(a->line, [&] {
      if (store.has_individual(a->args[0])) {
        throw Error(Errc::DuplicateId, "individual '" + a->args[0] + "' declared twice");
      }
      for (std::size_t i = 1; i < a->args.size(); ++i) {
        store.add_individual(a->args[0], a->args[i]);
      }
    });
  }

  for (const auto* a : of_kind(AxiomKind::Object)) {
    at_line(a->line, [&] { store.assert_object(a->args[0], a->args[1], a->args[2]); });
  }

  for (const auto* a : of_kind(AxiomKind::Data)) {
    at_line(a->line, [&] {
      if (store.has_data_property(a->args[0]) && store.has_individual(a->args[1]) &&
          store.data_value(a->args[1], a->args[0])) {
        throw Error(Errc::DuplicateId,
                    a->args[0] + "(" + a->args[1] + ") has more than one value");
      }
      store.assert_data(a->args[0], a->args[1], a->literal);
    });
  }

  at_line(0, [&] { store.validate(); });
  return store;
}

OntologyStore load_ontology_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::InvalidArgument, "cannot open ontology file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ontology(buffer.str());
}

void save_ontology_file(const OntologyStore& store, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(Errc::InvalidArgument, "cannot write ontology file " + tmp.string());
    }
    out << serialize(store);
    if (!out.flush()) {
      throw Error(Errc::InvalidArgument, "write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

OntologyStore load_seed() { return parse_ontology(seed_document()); }

} // namespace olms

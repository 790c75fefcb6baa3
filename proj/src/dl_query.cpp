#include "olms/dl_query.hpp"

#include "olms/error.hpp"

#include <algorithm>
#include <cctype>

namespace olms::dl {

ExprPtr atomic(Id cls) { return std::make_shared<const Expr>(Expr{Atomic{std::move(cls)}}); }

ExprPtr conjunction(std::vector<ExprPtr> operands) {
  std::vector<ExprPtr> flat;
  for (auto& operand : operands) {
    if (const auto* inner = std::get_if<And>(&operand->node)) {
      flat.insert(flat.end(), inner->operands.begin(), inner->operands.end());
    } else {
      flat.push_back(std::move(operand));
    }
  }
  if (flat.size() == 1) {
    return flat.front();
  }
  return std::make_shared<const Expr>(Expr{And{std::move(flat)}});
}

ExprPtr some(Id property, ExprPtr filler) {
  return std::make_shared<const Expr>(Expr{Some{std::move(property), std::move(filler)}});
}

ExprPtr value(Id property, Id individual) {
  return std::make_shared<const Expr>(Expr{Value{std::move(property), std::move(individual)}});
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
  if (lhs.node.index() != rhs.node.index()) {
    return false;
  }
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(rhs.node);
        if constexpr (std::is_same_v<T, Atomic>) {
          return l.cls == r.cls;
        } else if constexpr (std::is_same_v<T, And>) {
          return l.operands.size() == r.operands.size() &&
                 std::equal(l.operands.begin(), l.operands.end(), r.operands.begin(),
                            [](const ExprPtr& a, const ExprPtr& b) {
                              return structurally_equal(*a, *b);
                            });
        } else if constexpr (std::is_same_v<T, Some>) {
          return l.property == r.property && structurally_equal(*l.filler, *r.filler);
        } else {
          return l.property == r.property && l.individual == r.individual;
        }
      },
      lhs.node);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

enum class Tok { Ident, And, Some, Value, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? Tok::LParen : Tok::RParen, std::string(1, c), i + 1});
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      std::string word(text.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "and") kind = Tok::And;
      if (word == "some") kind = Tok::Some;
      if (word == "value") kind = Tok::Value;
      out.push_back({kind, std::move(word), start + 1});
      continue;
    }
    throw ParseError(i + 1, "identifier, keyword or parenthesis");
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse() {
    auto expr = parse_expr();
    if (peek().kind != Tok::End) {
      throw ParseError(peek().offset, "'and' or end of input");
    }
    return expr;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  ExprPtr parse_expr() {
    std::vector<ExprPtr> operands{parse_prim()};
    while (peek().kind == Tok::And) {
      next();
      operands.push_back(parse_prim());
    }
    return conjunction(std::move(operands));
  }

  ExprPtr parse_prim() {
    const Token& tok = next();
    if (tok.kind == Tok::LParen) {
      auto inner = parse_expr();
      if (peek().kind != Tok::RParen) {
        throw ParseError(peek().offset, "')'");
      }
      next();
      return inner;
    }
    if (tok.kind != Tok::Ident) {
      throw ParseError(tok.offset, "class expression");
    }
    if (peek().kind == Tok::Some) {
      next();
      return some(tok.text, parse_prim());
    }
    if (peek().kind == Tok::Value) {
      next();
      const Token& individual = next();
      if (individual.kind != Tok::Ident) {
        throw ParseError(individual.offset, "individual name");
      }
      return value(tok.text, individual.text);
    }
    return atomic(tok.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

} // namespace

ExprPtr parse_query(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string print(const Expr& expr) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          return node.cls;
        } else if constexpr (std::is_same_v<T, And>) {
          std::string out;
          for (const auto& operand : node.operands) {
            if (!out.empty()) out += " and ";
            out += print(*operand);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Some>) {
          return node.property + " some (" + print(*node.filler) + ")";
        } else {
          return node.property + " value " + node.individual;
        }
      },
      expr.node);
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

[[noreturn]] void unknown(const Id& name, std::string_view expected) {
  throw Error(Errc::UnknownName, "'" + name + "' is not a known " + std::string(expected));
}

void require_property(const Id& name, const OntologyStore& store) {
  if (!store.has_object_property(name)) unknown(name, "object property");
}

IdSet intersect(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

} // namespace

IdSet evaluate(const Expr& expr, const OntologyStore& store) {
  return std::visit(
      [&](const auto& node) -> IdSet {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          if (!store.has_class(node.cls)) unknown(node.cls, "class");
          return store.instances_of(node.cls, true);
        } else if constexpr (std::is_same_v<T, And>) {
          IdSet acc = evaluate(*node.operands.front(), store);
          for (std::size_t i = 1; i < node.operands.size(); ++i) {
            // Evaluate every operand so unresolved names surface regardless
            // of an early empty intersection.
            acc = intersect(acc, evaluate(*node.operands[i], store));
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Some>) {
          require_property(node.property, store);
          IdSet out;
          for (const auto& target : evaluate(*node.filler, store)) {
            auto subjects = store.object_subjects(node.property, target);
            out.insert(subjects.begin(), subjects.end());
          }
          return out;
        } else {
          require_property(node.property, store);
          if (!store.has_individual(node.individual)) unknown(node.individual, "individual");
          return store.object_subjects(node.property, node.individual);
        }
      },
      expr.node);
}

IdSet evaluate(std::string_view text, const OntologyStore& store) {
  return evaluate(*parse_query(text), store);
}

IdSet class_extension(const Id& cls, const OntologyStore& store) {
  return store.instances_of(cls, true);
}

} // namespace olms::dl

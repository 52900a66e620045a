#include "trex/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace trex {

namespace {

const char* const kReserved[] = {"top", "bot", "forall", "exists"};

bool is_reserved(const std::string& s) {
  for (const char* r : kReserved)
    if (s == r) return true;
  return false;
}

}  // namespace

std::optional<int> FoPart::predicate_arity(const std::string& symbol) const {
  for (const auto& [name, arity] : predicates)
    if (name == symbol) return arity;
  if (symbol == relation_symbol) return 2;
  return std::nullopt;
}

std::optional<int> SignatureSpec::arity_of(const std::string& symbol) const {
  for (const auto& c : connectives)
    if (c.symbol == symbol) return c.arity;
  return std::nullopt;
}

void SignatureSpec::check() const {
  std::set<std::string> seen;
  for (const auto& c : connectives) {
    if (c.arity < 1) throw Error("signature " + name + ": connective " + c.symbol + " has arity < 1");
    if (is_reserved(c.symbol)) throw Error("signature " + name + ": reserved symbol " + c.symbol);
    if (!seen.insert(c.symbol).second)
      throw Error("signature " + name + ": duplicate symbol " + c.symbol);
  }
  if (fo) {
    for (const auto& [p, a] : fo->predicates) {
      if (a < 1) throw Error("signature " + name + ": predicate " + p + " has arity < 1");
      if (seen.count(p) || is_reserved(p))
        throw Error("signature " + name + ": predicate symbol clash " + p);
    }
  }
}

// --- Formula construction ----------------------------------------------------

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->text = name;
  n->symbol = std::move(name);
  n->count = 1;
  return Formula(std::move(n));
}

Formula Formula::indexed(std::string base, std::string key) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::IndexedAtom;
  n->text = base + "{" + key + "}";
  n->symbol = std::move(base);
  n->aux = std::move(key);
  n->count = 1;
  return Formula(std::move(n));
}

Formula Formula::constant(ConstKind c) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Const;
  n->ckind = c;
  n->text = (c == ConstKind::Top) ? "top" : "bot";
  n->count = 1;
  return Formula(std::move(n));
}

Formula Formula::apply(std::string symbol, std::vector<Formula> operands) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Apply;
  n->count = 1;
  std::string text = "(" + symbol;
  for (const auto& op : operands) {
    text += ' ';
    text += op.text();
    n->count += op.node_count();
  }
  text += ')';
  n->symbol = std::move(symbol);
  n->operands = std::move(operands);
  n->text = std::move(text);
  return Formula(std::move(n));
}

Formula Formula::pred(std::string symbol, std::vector<std::string> vars) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Pred;
  n->count = 1;
  std::string text = "(" + symbol;
  for (const auto& v : vars) {
    text += ' ';
    text += v;
  }
  text += ')';
  n->symbol = std::move(symbol);
  n->vars = std::move(vars);
  n->text = std::move(text);
  return Formula(std::move(n));
}

Formula Formula::quant(QuantKind q, std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Quant;
  n->qkind = q;
  n->count = 1 + body.node_count();
  n->text = std::string("(") + (q == QuantKind::Forall ? "forall" : "exists") + " " + var + " " +
            body.text() + ")";
  n->aux = std::move(var);
  n->operands.push_back(std::move(body));
  return Formula(std::move(n));
}

// --- parser --------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  const SignatureSpec& sig;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c));
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !is_delim(text[pos])) ++pos;
    if (pos == start) throw ParseError("expected a symbol", pos);
    return text.substr(start, pos - start);
  }

  std::string braced_key() {
    // pos is at '{'
    std::size_t start = ++pos;
    int depth = 1;
    while (pos < text.size()) {
      if (text[pos] == '{') ++depth;
      if (text[pos] == '}' && --depth == 0) {
        std::string key = text.substr(start, pos - start);
        ++pos;
        return key;
      }
      ++pos;
    }
    throw ParseError("unterminated indexed-atom key", start - 1);
  }

  Formula expr() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    if (text[pos] == '(') return compound();
    std::size_t tok_pos = pos;
    std::string t = token();
    if (pos < text.size() && text[pos] == '{') return Formula::indexed(t, braced_key());
    if (t == "top") {
      if (!sig.has_top) throw ParseError("constant top is not in signature " + sig.name, tok_pos);
      return Formula::constant(ConstKind::Top);
    }
    if (t == "bot") {
      if (sig.has_bot) return Formula::constant(ConstKind::Bot);
      if (sig.bot_is_atom) return Formula::atom("bot");
      throw ParseError("constant bot is not in signature " + sig.name, tok_pos);
    }
    if (sig.has_connective(t))
      throw ParseError("connective " + t + " used without parentheses", tok_pos);
    return Formula::atom(t);
  }

  Formula compound() {
    std::size_t open = pos;
    ++pos;  // '('
    std::string head = token();
    if (head == "forall" || head == "exists") {
      if (!sig.fo) throw ParseError("quantifier in non-first-order signature " + sig.name, open);
      std::string var = token();
      Formula body = expr();
      expect_close(open);
      return Formula::quant(head == "forall" ? QuantKind::Forall : QuantKind::Exists,
                            std::move(var), std::move(body));
    }
    if (auto arity = sig.arity_of(head)) {
      std::vector<Formula> ops;
      while (true) {
        skip_ws();
        if (pos < text.size() && text[pos] == ')') break;
        if (pos >= text.size()) throw ParseError("missing ')'", open);
        ops.push_back(expr());
      }
      ++pos;  // ')'
      if (static_cast<int>(ops.size()) != *arity)
        throw ParseError("connective " + head + " expects " + std::to_string(*arity) +
                             " operands, got " + std::to_string(ops.size()),
                         open);
      return Formula::apply(head, std::move(ops));
    }
    if (sig.fo) {
      if (auto arity = sig.fo->predicate_arity(head)) {
        std::vector<std::string> vars;
        while (true) {
          skip_ws();
          if (pos < text.size() && text[pos] == ')') break;
          if (pos >= text.size()) throw ParseError("missing ')'", open);
          vars.push_back(token());
        }
        ++pos;
        if (static_cast<int>(vars.size()) != *arity)
          throw ParseError("predicate " + head + " expects " + std::to_string(*arity) +
                               " arguments, got " + std::to_string(vars.size()),
                           open);
        return Formula::pred(head, std::move(vars));
      }
    }
    throw ParseError("unknown symbol " + head + " in signature " + sig.name, open);
  }

  void expect_close(std::size_t open) {
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') throw ParseError("missing ')'", open);
    ++pos;
  }
};

}  // namespace

Formula parse(const std::string& text, const SignatureSpec& sig) {
  Parser p{text, sig};
  Formula f = p.expr();
  if (!p.at_end()) throw ParseError("trailing input", p.pos);
  return f;
}

// --- templates ---------------------------------------------------------------

bool is_placeholder(const Formula& f, int* index) {
  if (f.kind() != FormulaKind::Atom) return false;
  const std::string& s = f.symbol();
  if (s.size() < 2 || s[0] != '#') return false;
  int k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    k = k * 10 + (s[i] - '0');
  }
  if (k < 1) return false;
  if (index) *index = k;
  return true;
}

namespace {

int max_placeholder(const Formula& f) {
  int idx = 0;
  if (is_placeholder(f, &idx)) return idx;
  int best = 0;
  for (const auto& op : f.operands()) best = std::max(best, max_placeholder(op));
  return best;
}

}  // namespace

Template Template::over(Formula body, int count) {
  int used = max_placeholder(body);
  if (used > count)
    throw Error("template uses placeholder #" + std::to_string(used) + " beyond count " +
                std::to_string(count));
  return Template{std::move(body), count};
}

Template Template::parse(const std::string& text, const SignatureSpec& sig,
                         std::optional<int> count) {
  Formula body = trex::parse(text, sig);
  int used = max_placeholder(body);
  return over(std::move(body), count.value_or(used));
}

Formula substitute(const Template& t, std::span<const Formula> args) {
  if (static_cast<int>(args.size()) != t.placeholder_count)
    throw Error("template expects " + std::to_string(t.placeholder_count) + " arguments, got " +
                std::to_string(args.size()));
  struct Subst {
    std::span<const Formula> args;
    Formula walk(const Formula& f) {
      int idx = 0;
      if (is_placeholder(f, &idx)) return args[idx - 1];
      if (f.kind() == FormulaKind::Apply) {
        std::vector<Formula> ops;
        ops.reserve(f.operands().size());
        for (const auto& op : f.operands()) ops.push_back(walk(op));
        return Formula::apply(f.symbol(), std::move(ops));
      }
      if (f.kind() == FormulaKind::Quant)
        return Formula::quant(f.quant_kind(), f.quant_var(), walk(f.quant_body()));
      return f;
    }
  } s{args};
  return s.walk(t.body);
}

Formula rename_variables(const Formula& f, const std::map<std::string, std::string>& renaming) {
  auto rename = [&](const std::string& v) {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  };
  switch (f.kind()) {
    case FormulaKind::Pred: {
      std::vector<std::string> vars;
      vars.reserve(f.pred_vars().size());
      for (const auto& v : f.pred_vars()) vars.push_back(rename(v));
      return Formula::pred(f.symbol(), std::move(vars));
    }
    case FormulaKind::Quant:
      return Formula::quant(f.quant_kind(), rename(f.quant_var()),
                            rename_variables(f.quant_body(), renaming));
    case FormulaKind::Apply: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& op : f.operands()) ops.push_back(rename_variables(op, renaming));
      return Formula::apply(f.symbol(), std::move(ops));
    }
    default:
      return f;
  }
}

// --- structural helpers --------------------------------------------------------

FormulaSet subformula_closure(const FormulaSet& set) {
  FormulaSet out;
  std::vector<Formula> stack(set.begin(), set.end());
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (!out.insert(f).second) continue;
    for (const auto& op : f.operands()) stack.push_back(op);
  }
  return out;
}

FormulaSet subformula_closure(const Formula& f) { return subformula_closure(FormulaSet{f}); }

namespace {

template <typename Fn>
void walk_leaves(const Formula& f, Fn&& fn) {
  fn(f);
  for (const auto& op : f.operands()) walk_leaves(op, fn);
}

}  // namespace

std::set<std::string> plain_atoms(const Formula& f) {
  std::set<std::string> out;
  walk_leaves(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom) out.insert(g.symbol());
  });
  return out;
}

std::set<std::string> atom_keys(const Formula& f) {
  std::set<std::string> out;
  walk_leaves(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom || g.kind() == FormulaKind::IndexedAtom)
      out.insert(g.text());
  });
  return out;
}

std::set<std::string> atom_keys(const FormulaSet& set) {
  std::set<std::string> out;
  for (const auto& f : set) {
    auto keys = atom_keys(f);
    out.insert(keys.begin(), keys.end());
  }
  return out;
}

void collect_indexed_atoms(const Formula& f, FormulaSet& out) {
  walk_leaves(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::IndexedAtom) out.insert(g);
  });
}

std::vector<std::string> split_indexed_key(const std::string& key) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : key) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  parts.push_back(cur);
  return parts;
}

Formula indexed_atom(const std::string& base, std::span<const Formula> operands) {
  std::string key;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i) key += ',';
    key += operands[i].text();
  }
  return Formula::indexed(base, std::move(key));
}

// --- enumeration ----------------------------------------------------------------

namespace {

// All ways to split total into `parts` positive summands.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (total >= 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Formula> enumerate_formulas(const SignatureSpec& sig,
                                        const std::vector<Formula>& atoms, int max_nodes) {
  if (max_nodes < 1) throw Error("enumerate_formulas: max_nodes must be >= 1");
  // by_size[n] holds all formulas with exactly n nodes, sorted by text.
  std::vector<std::vector<Formula>> by_size(max_nodes + 1);
  for (const auto& a : atoms) {
    if (!a.operands().empty()) throw Error("enumerate_formulas: atoms must be leaves");
    by_size[1].push_back(a);
  }
  if (sig.has_top) by_size[1].push_back(Formula::constant(ConstKind::Top));
  if (sig.has_bot) by_size[1].push_back(Formula::constant(ConstKind::Bot));
  std::sort(by_size[1].begin(), by_size[1].end(),
            [](const Formula& a, const Formula& b) { return a.text() < b.text(); });

  for (int n = 2; n <= max_nodes; ++n) {
    auto& bucket = by_size[n];
    for (const auto& conn : sig.connectives) {
      std::vector<std::vector<int>> splits;
      std::vector<int> cur;
      compositions(n - 1, conn.arity, cur, splits);
      for (const auto& split : splits) {
        // Cartesian product over operand size classes.
        std::vector<std::size_t> idx(split.size(), 0);
        bool any_empty = false;
        for (std::size_t i = 0; i < split.size(); ++i)
          if (by_size[split[i]].empty()) any_empty = true;
        if (any_empty) continue;
        while (true) {
          std::vector<Formula> ops;
          ops.reserve(split.size());
          for (std::size_t i = 0; i < split.size(); ++i) ops.push_back(by_size[split[i]][idx[i]]);
          bucket.push_back(Formula::apply(conn.symbol, std::move(ops)));
          // advance
          std::size_t i = split.size();
          while (i > 0) {
            --i;
            if (++idx[i] < by_size[split[i]].size()) break;
            idx[i] = 0;
            if (i == 0) {
              i = split.size() + 1;  // done marker
              break;
            }
          }
          if (i == split.size() + 1) break;
        }
      }
    }
    std::sort(bucket.begin(), bucket.end(),
              [](const Formula& a, const Formula& b) { return a.text() < b.text(); });
  }

  std::vector<Formula> out;
  for (int n = 1; n <= max_nodes; ++n)
    out.insert(out.end(), by_size[n].begin(), by_size[n].end());
  return out;
}

}  // namespace trex

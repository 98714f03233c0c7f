#include "solvlie/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "solvlie/errors.hpp"

namespace solvlie {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, End } kind;
  std::string text;
  std::size_t col;  // 1-based
};

std::vector<Token> tokenize(const std::string& s, std::size_t line, std::size_t col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Kind::Number, s.substr(start, i - start), col0 + start});
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), col0 + start});
    } else if (std::string("+-*/^()").find(ch) != std::string::npos) {
      out.push_back({Token::Kind::Op, std::string(1, ch), col0 + start});
      ++i;
    } else {
      throw ParseError(line, col0 + start, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Token::Kind::End, "", col0 + s.size()});
  return out;
}

// Scalar part plus an optional vector part.
struct Lin {
  Scalar c;
  Vec v;  // empty when no vector part
  bool has_vec() const { return !v.empty() && !is_zero(v); }
};

class ExprParser {
 public:
  ExprParser(const std::string& text, const LieAlgebra* g, std::size_t line, std::size_t col0)
      : toks_(tokenize(text, line, col0)), g_(g), line_(line) {}

  Lin parse_all() {
    Lin r = expr();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::Op && peek().text == op; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.col, msg); }

  std::size_t n() const { return g_ ? g_->dim() : 0; }

  // Unknown identifiers are parameters unless they look like basis labels.
  bool looks_like_label(const std::string& w) const {
    if (std::isupper(static_cast<unsigned char>(w[0]))) return true;
    auto stem = [](const std::string& x) {
      std::size_t e = x.size();
      while (e > 0 && std::isdigit(static_cast<unsigned char>(x[e - 1]))) --e;
      return e < x.size() ? x.substr(0, e) : std::string();
    };
    std::string sw = stem(w);
    if (sw.empty()) return false;
    for (const auto& l : g_->labels())
      if (stem(l) == sw) return true;
    return false;
  }

  Lin add(const Lin& a, const Lin& b, bool minus) {
    Lin r;
    r.c = minus ? a.c - b.c : a.c + b.c;
    if (!a.v.empty() || !b.v.empty()) {
      Vec av = a.v.empty() ? zero_vec(n()) : a.v;
      Vec bv = b.v.empty() ? zero_vec(n()) : b.v;
      r.v = minus ? av - bv : av + bv;
    }
    return r;
  }

  Lin mul(const Lin& a, const Lin& b, const Token& at) {
    if (a.has_vec() && b.has_vec()) fail(at, "product of two basis elements");
    if (a.has_vec()) return Lin{Scalar(), b.c * a.v};
    if (b.has_vec()) return Lin{Scalar(), a.c * b.v};
    return Lin{a.c * b.c, {}};
  }

  Lin expr() {
    Lin r;
    bool first = true;
    while (true) {
      bool minus = false;
      if (is_op("+") || is_op("-")) {
        minus = next().text == "-";
      } else if (!first) {
        break;
      }
      Lin t = term();
      r = add(r, t, minus);
      first = false;
      if (!is_op("+") && !is_op("-")) break;
    }
    return r;
  }

  bool starts_factor() const {
    return peek().kind == Token::Kind::Number || peek().kind == Token::Kind::Ident || is_op("(");
  }

  Lin term() {
    Lin r = factor();
    while (true) {
      if (is_op("*")) {
        const Token& t = next();
        r = mul(r, factor(), t);
      } else if (is_op("/")) {
        const Token& t = next();
        Lin d = factor();
        if (d.has_vec()) fail(t, "division by a basis element");
        if (d.c.is_zero()) fail(t, "division by zero");
        r = mul(r, Lin{Scalar(1) / d.c, {}}, t);
      } else if (starts_factor()) {
        const Token& t = peek();
        r = mul(r, factor(), t);
      } else {
        break;
      }
    }
    return r;
  }

  Lin factor() {
    if (is_op("-")) {
      next();
      Lin f = factor();
      return mul(Lin{Scalar(-1), {}}, f, peek());
    }
    if (is_op("+")) {
      next();
      return factor();
    }
    Lin p = primary();
    if (is_op("^")) {
      const Token& t = next();
      if (p.has_vec()) fail(t, "power of a basis element");
      bool neg = false;
      if (is_op("-")) {
        next();
        neg = true;
      }
      if (peek().kind != Token::Kind::Number) fail(peek(), "expected integer exponent");
      int e = std::stoi(next().text);
      p.c = p.c.pow(neg ? -e : e);
    }
    return p;
  }

  Lin primary() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::Number:
        return Lin{Scalar(Rational(Integer(t.text))), {}};
      case Token::Kind::Ident: {
        if (t.text == "sqrt" && is_op("(")) {
          next();
          Lin arg = expr();
          if (!is_op(")")) fail(peek(), "expected ')'");
          next();
          if (arg.has_vec() || !arg.c.is_rational()) fail(t, "sqrt of a non-rational value");
          return Lin{Scalar(Quad::sqrt_of(arg.c.rational_value())), {}};
        }
        if (g_) {
          if (auto idx = g_->index_of(t.text)) return Lin{Scalar(), unit_vec(n(), *idx)};
          if (looks_like_label(t.text))
            throw Error(ErrorKind::UnknownLabel, "unknown label " + t.text + " at line " + std::to_string(line_) +
                                                     ", column " + std::to_string(t.col));
        }
        return Lin{Scalar::param(t.text), {}};
      }
      case Token::Kind::Op:
        if (t.text == "(") {
          Lin r = expr();
          if (!is_op(")")) fail(peek(), "expected ')'");
          next();
          return r;
        }
        fail(t, "unexpected '" + t.text + "'");
      case Token::Kind::End:
        fail(t, "unexpected end of input");
    }
    fail(t, "unexpected token");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const LieAlgebra* g_;
  std::size_t line_;
};

Element element_from(const LieAlgebra& g, const std::string& text, std::size_t line, std::size_t col0) {
  if (text.find_first_not_of(" \t") == std::string::npos) throw ParseError(line, col0, "empty expression");
  Lin r = ExprParser(text, &g, line, col0).parse_all();
  if (!r.c.is_zero()) throw ParseError(line, col0, "expression has a term without a basis label");
  return r.v.empty() ? zero_vec(g.dim()) : r.v;
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
  Lin r = ExprParser(text, nullptr, 1, 1).parse_all();
  return r.c;
}

Element parse_element_expr(const LieAlgebra& g, const std::string& text) {
  if (text == "0") return zero_vec(g.dim());
  return element_from(g, text, 1, 1);
}

namespace {

std::vector<std::pair<std::string, std::size_t>> words(const std::string& s, std::size_t from) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = from;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t st = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    out.emplace_back(s.substr(st, i - st), st + 1);
  }
  return out;
}

bool is_identifier(const std::string& w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  for (char c : w)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

}  // namespace

LieAlgebra parse_algebra_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::string name = "algebra";
  long radicand = 0;
  std::vector<std::string> labels;
  bool have_basis = false;
  struct Pending {
    std::size_t i, j, line, col;
    std::string expr;
  };
  std::vector<Pending> brackets;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::size_t>>>> hints;
  std::vector<std::size_t> hint_lines;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto ws = words(line, 0);
    if (ws.empty()) continue;
    const std::string& kw = ws[0].first;
    if (kw == "name") {
      if (ws.size() != 2) throw ParseError(lineno, ws[0].second, "expected: name <identifier>");
      name = ws[1].first;
    } else if (kw == "field") {
      if (ws.size() != 2) throw ParseError(lineno, ws[0].second, "expected: field rational|quad:<d>");
      const std::string& f = ws[1].first;
      if (f == "rational") {
        radicand = 0;
      } else if (f.rfind("quad:", 0) == 0) {
        try {
          radicand = std::stol(f.substr(5));
        } catch (const std::exception&) {
          throw ParseError(lineno, ws[1].second + 5, "bad radicand");
        }
        if (!is_squarefree(radicand) || radicand == 1) throw ParseError(lineno, ws[1].second + 5, "radicand must be squarefree");
      } else {
        throw ParseError(lineno, ws[1].second, "unknown field '" + f + "'");
      }
    } else if (kw == "basis") {
      if (have_basis) throw ParseError(lineno, ws[0].second, "basis given twice");
      have_basis = true;
      std::set<std::string> seen;
      for (std::size_t k = 1; k < ws.size(); ++k) {
        if (!is_identifier(ws[k].first)) throw ParseError(lineno, ws[k].second, "bad label '" + ws[k].first + "'");
        if (!seen.insert(ws[k].first).second) throw ParseError(lineno, ws[k].second, "duplicate label '" + ws[k].first + "'");
        labels.push_back(ws[k].first);
      }
      if (labels.empty()) throw ParseError(lineno, ws[0].second, "empty basis");
    } else if (kw == "torus" || kw == "nilradical") {
      hints.emplace_back(kw, std::vector<std::pair<std::string, std::size_t>>(ws.begin() + 1, ws.end()));
      hint_lines.push_back(lineno);
    } else {
      if (!have_basis) throw ParseError(lineno, ws[0].second, "bracket before basis");
      std::size_t at = kw == "bracket" ? 1 : 0;
      std::size_t arrow = line.find("->");
      std::size_t arrow_len = 2;
      if (arrow == std::string::npos) {
        arrow = line.find("\xe2\x86\x92");
        arrow_len = 3;
      }
      if (arrow == std::string::npos) throw ParseError(lineno, ws[0].second, "expected '->' in bracket line");
      auto lhs = words(line.substr(0, arrow), 0);
      if (lhs.size() != at + 2) throw ParseError(lineno, ws[0].second, "expected two basis elements before '->'");
      std::size_t idx[2];
      for (int s = 0; s < 2; ++s) {
        const auto& [w, col] = lhs[at + s];
        bool numeric = !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (numeric) {
          idx[s] = std::stoul(w);
          if (idx[s] >= labels.size()) throw ParseError(lineno, col, "index " + w + " out of range");
        } else {
          auto it = std::find(labels.begin(), labels.end(), w);
          if (it == labels.end()) throw ParseError(lineno, col, "unknown label '" + w + "'");
          idx[s] = static_cast<std::size_t>(it - labels.begin());
        }
      }
      if (idx[0] == idx[1]) throw ParseError(lineno, lhs[at].second, "bracket of an element with itself");
      for (const auto& p : brackets)
        if ((p.i == idx[0] && p.j == idx[1]) || (p.i == idx[1] && p.j == idx[0]))
          throw Error(ErrorKind::DuplicateBracket, "bracket [" + labels[idx[0]] + ", " + labels[idx[1]] +
                                                       "] given twice (line " + std::to_string(p.line) + " and line " +
                                                       std::to_string(lineno) + ")");
      brackets.push_back({idx[0], idx[1], lineno, arrow + arrow_len + 1, line.substr(arrow + arrow_len)});
    }
  }
  if (!have_basis) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing basis");
  LieAlgebra g(name, labels, radicand);
  for (const auto& p : brackets) {
    Element v = element_from(g, p.expr, p.line, p.col);
    for (const auto& x : v) {
      if (!x.is_constant()) throw ParseError(p.line, p.col, "structure constants must not contain parameters");
      long d = x.radicand();
      if (d != 0 && d != radicand) throw ParseError(p.line, p.col, "constant outside the declared field");
    }
    g.set_bracket(p.i, p.j, v);
  }
  for (std::size_t h = 0; h < hints.size(); ++h) {
    std::vector<Element> els;
    for (const auto& [w, col] : hints[h].second) {
      auto idx = g.index_of(w);
      if (!idx) throw ParseError(hint_lines[h], col, "unknown label '" + w + "'");
      els.push_back(g.basis_element(*idx));
    }
    (hints[h].first == "torus" ? g.torus_hint : g.nilradical_hint) = els;
  }
  if (auto bad = jacobi_check(g))
    throw Error(ErrorKind::JacobiViolation, "Jacobi identity fails for (" + labels[bad->i] + ", " + labels[bad->j] + ", " +
                                                labels[bad->k] + "): residual " + g.element_to_string(bad->residual));
  return g;
}

LieAlgebra parse_algebra_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_algebra_text(ss.str());
}

std::string serialize_algebra(const LieAlgebra& g) {
  std::ostringstream out;
  out << "name " << g.name() << "\n";
  out << "field " << (g.field_radicand() == 0 ? std::string("rational") : "quad:" + std::to_string(g.field_radicand()))
      << "\n";
  out << "basis";
  for (const auto& l : g.labels()) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      Vec v = g.bracket_basis(i, j);
      if (!is_zero(v)) out << "bracket " << g.labels()[i] << " " << g.labels()[j] << " -> " << g.element_to_string(v) << "\n";
    }
  auto hint = [&](const char* kw, const std::vector<Element>& els) {
    if (els.empty()) return;
    out << kw;
    for (const auto& e : els) out << " " << g.element_to_string(e);
    out << "\n";
  };
  hint("torus", g.torus_hint);
  hint("nilradical", g.nilradical_hint);
  return out.str();
}

std::string subspace_to_string(const LieAlgebra& g, const Subspace& s) {
  std::string r = "<";
  auto b = s.basis_vectors();
  for (std::size_t i = 0; i < b.size(); ++i) r += (i ? ", " : "") + g.element_to_string(b[i]);
  r += ">";
  if (!s.constraints().empty()) r += " where " + to_string(s.constraints());
  return r;
}

}  // namespace solvlie

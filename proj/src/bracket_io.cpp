#include "thetaform/bracket_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "thetaform/errors.hpp"

namespace thetaform {

bool DeltaForm::has_standard_leading() const {
  for (const auto& [key, a] : coefficients) {
    if (key.k != 0) continue;
    const DiffPoly want = (key.k1 == 0 && key.k2 == 1) ? DiffPoly::constant(1) : DiffPoly{};
    if (a != want) return false;
  }
  return coefficients.contains({0, 0, 1});
}

void check_delta_degree(const DeltaKey& key, const DiffPoly& a) {
  std::ostringstream msg;
  if (key.k < 0 || key.k1 < 0 || key.k2 < 0) {
    msg << "negative index in A[" << key.k << "; " << key.k1 << "," << key.k2 << "]";
    throw std::invalid_argument(msg.str());
  }
  if (key.k1 + key.k2 > key.k + 1) {
    msg << "A[" << key.k << "; " << key.k1 << "," << key.k2 << "] needs k1 + k2 <= k + 1";
    throw std::invalid_argument(msg.str());
  }
  const int want = key.k - key.k1 - key.k2 + 1;
  for (const auto& [m, c] : a.terms()) {
    const Grade g = m.grade();
    if (g.p != 0) {
      msg << "A[" << key.k << "; " << key.k1 << "," << key.k2 << "] must not contain theta";
      throw std::invalid_argument(msg.str());
    }
    if (g.d != want) {
      msg << "A[" << key.k << "; " << key.k1 << "," << key.k2 << "] must have degree " << want << ", found a term of degree "
          << g.d;
      throw std::invalid_argument(msg.str());
    }
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BracketSpecFile file() {
    BracketSpecFile out;
    expect_word("order");
    expect('=');
    const auto [line, col] = position();
    out.order = integer();
    if (out.order < 1) throw ParseError(line, col, "order must be >= 1");
    expect(';');

    skip_space();
    const auto [bl, bc] = position();
    const std::string kind = word();
    if (kind == "delta") {
      out.kind = BodyKind::delta;
      expect('{');
      while (!accept('}')) delta_entry(out.delta);
    } else if (kind == "theta") {
      out.kind = BodyKind::theta;
      expect('{');
      while (!accept('}')) density_entry(out.densities);
    } else {
      throw ParseError(bl, bc, "expected 'delta' or 'theta' block, found '" + kind + "'");
    }
    skip_space();
    if (pos_ < text_.size()) fail("unexpected text after the closing brace");
    return out;
  }

  DiffPoly standalone_expression() {
    DiffPoly e = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::pair<int, int> position() const { return {line_, col_}; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char ch) {
    if (peek() != ch) return false;
    advance();
    return true;
  }

  void expect(char ch) {
    if (accept(ch)) return;
    skip_space();
    if (pos_ >= text_.size()) fail(std::string("expected '") + ch + "', found end of input");
    fail(std::string("expected '") + ch + "', found '" + text_[pos_] + "'");
  }

  std::string word() {
    skip_space();
    std::string w;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      w += text_[pos_];
      advance();
    }
    return w;
  }

  void expect_word(const std::string& w) {
    skip_space();
    const auto [line, col] = position();
    const std::string got = word();
    if (got != w) throw ParseError(line, col, "expected '" + w + "'" + (got.empty() ? "" : ", found '" + got + "'"));
  }

  std::string digits() {
    skip_space();
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      s += text_[pos_];
      advance();
    }
    if (s.empty()) fail("expected an integer");
    return s;
  }

  int integer() {
    const auto [line, col] = position();
    bool negative = accept('-');
    const std::string s = digits();
    if (s.size() > 9) throw ParseError(line, col, "integer out of range");
    const int v = std::stoi(s);
    return negative ? -v : v;
  }

  VarIndex index_pair() {
    expect('[');
    const int s = integer();
    expect(',');
    const int t = integer();
    expect(']');
    if (s < 0 || t < 0) fail("derivative orders must be non-negative");
    return {s, t};
  }

  // expression := ['+'|'-'] term {('+'|'-') term}
  DiffPoly expression() {
    Rational sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    DiffPoly out = term() * sign;
    for (;;) {
      if (accept('+')) {
        out += term();
      } else if (accept('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  // term := power {('*'|'/') power}; division only by nonzero constants.
  DiffPoly term() {
    DiffPoly out = power();
    for (;;) {
      if (accept('*')) {
        out = mul(out, power());
      } else if (peek() == '/') {
        const auto [line, col] = position();
        advance();
        const DiffPoly divisor = power();
        const bool constant = divisor.size() == 1 && divisor.terms().begin()->first.is_constant();
        if (!constant) throw ParseError(line, col, "division is only defined by nonzero constants");
        out *= Rational(1) / divisor.terms().begin()->second;
      } else {
        return out;
      }
    }
  }

  // power := primary ['^' INT]
  DiffPoly power() {
    skip_space();
    const auto [line, col] = position();
    DiffPoly base = primary();
    if (!accept('^')) return base;
    const int n = integer();
    if (n < 0) throw ParseError(line, col, "negative exponent");
    bool odd = false;
    for (const auto& [m, c] : base.terms()) odd = odd || !m.thetas.empty();
    if (odd && n >= 2) throw OddPower(line, col, "theta to a power >= 2 is zero; write it out explicitly");
    DiffPoly out = DiffPoly::constant(1);
    for (int i = 0; i < n; ++i) out = mul(out, base);
    return out;
  }

  DiffPoly primary() {
    const char ch = peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) return DiffPoly::constant(Rational(digits()));
    if (accept('(')) {
      DiffPoly e = expression();
      expect(')');
      return e;
    }
    const auto [line, col] = position();
    const std::string w = word();
    if (w == "u") {
      if (peek() != '[') return DiffPoly::u();
      return DiffPoly::u(index_pair());
    }
    if (w == "th") return DiffPoly::theta(index_pair());
    if (w.empty()) {
      if (ch == '\0') throw ParseError(line, col, "unexpected end of input in expression");
      throw ParseError(line, col, std::string("unexpected character '") + ch + "' in expression");
    }
    throw ParseError(line, col, "unknown symbol '" + w + "'");
  }

  void delta_entry(DeltaForm& form) {
    skip_space();
    const auto [line, col] = position();
    expect_word("A");
    expect('[');
    DeltaKey key;
    key.k = integer();
    expect(';');
    key.k1 = integer();
    expect(',');
    key.k2 = integer();
    expect(']');
    expect('=');
    DiffPoly a = expression();
    expect(';');
    try {
      check_delta_degree(key, a);
    } catch (const std::invalid_argument& e) {
      throw DegreeMismatch(line, col, e.what());
    }
    if (!form.coefficients.emplace(key, std::move(a)).second) throw ParseError(line, col, "duplicate coefficient");
  }

  void density_entry(std::map<int, DiffPoly>& out) {
    skip_space();
    const auto [line, col] = position();
    expect_word("density");
    expect('[');
    const int d = integer();
    expect(']');
    expect('=');
    DiffPoly a = expression();
    expect(';');
    if (d < 1) throw DegreeMismatch(line, col, "densities start at degree 1");
    for (const auto& [m, c] : a.terms()) {
      const Grade g = m.grade();
      if (g.d != d || g.p != 2) {
        std::ostringstream msg;
        msg << "density[" << d << "] needs degree " << d << " and two thetas in every term, found " << m;
        throw DegreeMismatch(line, col, msg.str());
      }
    }
    if (!out.emplace(d, std::move(a)).second) throw ParseError(line, col, "duplicate density");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

BracketSpecFile parse_spec(std::string_view text) { return Parser(text).file(); }

DiffPoly parse_expression(std::string_view text) { return Parser(text).standalone_expression(); }

std::string print_spec(const BracketSpecFile& file) {
  std::ostringstream os;
  os << "order = " << file.order << ";\n";
  if (file.kind == BodyKind::delta) {
    os << "delta {\n";
    for (const auto& [key, a] : file.delta.coefficients) {
      os << "  A[" << key.k << "; " << key.k1 << "," << key.k2 << "] = " << a << ";\n";
    }
  } else {
    os << "theta {\n";
    for (const auto& [d, a] : file.densities) os << "  density[" << d << "] = " << a << ";\n";
  }
  os << "}\n";
  return os.str();
}

BracketSeries BracketSpecFile::series() const {
  if (kind == BodyKind::delta) return delta_to_theta(delta, order);
  BracketSeries out(order);
  for (const auto& [d, a] : densities) out.add_to_component(d, Functional(a));
  return out;
}

BracketSpecFile BracketSpecFile::with_order(int new_order) const {
  if (new_order < 1) throw std::invalid_argument("order must be >= 1");
  BracketSpecFile out = *this;
  out.order = new_order;
  return out;
}

BracketSeries delta_to_theta(const DeltaForm& form, int order) {
  BracketSeries out(order);
  const DiffPoly theta0 = DiffPoly::theta({0, 0});
  std::map<int, DiffPoly> densities;
  for (const auto& [key, a] : form.coefficients) {
    check_delta_degree(key, a);
    densities[key.k + 1] += mul(theta0, mul(a, DiffPoly::theta({key.k1, key.k2}))) * Rational(1, 2);
  }
  for (auto& [d, density] : densities) out.add_to_component(d, Functional(std::move(density)));
  return out;
}

DeltaForm theta_to_delta(const BracketSeries& p) {
  // 1/2 \int theta g with g = var_theta(P) represents P, and g has one theta.
  DeltaForm out;
  for (const auto& [d, f] : p.components()) {
    const DiffPoly g = var_theta(f);
    for (const auto& [m, c] : g.terms()) {
      Monomial rest = m;
      const VarIndex v = rest.thetas.front();
      rest.thetas.clear();
      out.coefficients[{d - 1, v.s, v.t}].add_term(rest, c);
    }
  }
  std::erase_if(out.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

nlohmann::json result_to_json(const NormalizationResult& r) {
  nlohmann::json j;
  j["order"] = r.order;
  j["invariants"] = nlohmann::json::array();
  for (const auto& [k, c] : r.invariants) j["invariants"].push_back({{"k", k}, {"c", rational_string(c)}});
  j["generators"] = nlohmann::json::array();
  for (const auto& g : r.generators) j["generators"].push_back(to_string(g.functional().density()));
  j["obstruction"] = nullptr;
  j["jacobi"] = "ok";
  return j;
}

std::string result_to_text(const NormalizationResult& r, bool with_generators) {
  std::ostringstream os;
  os << "order " << r.order << "\n";
  os << "jacobi ok\n";
  for (const auto& [k, c] : r.invariants) os << "c" << k << " = " << rational_string(c) << "\n";
  if (with_generators) {
    for (const auto& g : r.generators) os << "X[" << g.degree() << "] = " << g.functional().density() << "\n";
  }
  return os.str();
}

}  // namespace thetaform

#include "ambientlab/expression.hpp"

#include "ambientlab/analytic.hpp"
#include "ambientlab/jet.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ambientlab {

namespace {

struct SymbolTableImpl {
  std::mutex mutex;
  std::unordered_map<std::string, VarId> ids;
  std::vector<std::string> names;
};

SymbolTableImpl& symbols() {
  static SymbolTableImpl table;
  return table;
}

}  // namespace

VarId SymbolTable::intern(std::string_view name) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  const std::string key(name);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  const VarId id = static_cast<VarId>(t.names.size());
  t.ids.emplace(key, id);
  t.names.push_back(key);
  return id;
}

std::optional<VarId> SymbolTable::lookup(std::string_view name) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  auto it = t.ids.find(std::string(name));
  if (it == t.ids.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::name(VarId id) {
  auto& t = symbols();
  std::lock_guard lock(t.mutex);
  return t.names.at(static_cast<size_t>(id));
}

Monomial Monomial::var(VarId v, int32_t e) {
  Monomial m;
  if (e != 0) m.powers.emplace_back(v, e);
  return m;
}

int64_t Monomial::total_degree() const {
  int64_t d = 0;
  for (const auto& [v, e] : powers) d += e;
  return d;
}

int32_t Monomial::exponent_of(VarId v) const {
  for (const auto& [var, e] : powers)
    if (var == v) return e;
  return 0;
}

bool Monomial::has_negative_exponent() const {
  return std::any_of(powers.begin(), powers.end(), [](const auto& p) { return p.second < 0; });
}

Monomial Monomial::times(const Monomial& rhs) const {
  Monomial out;
  out.powers.reserve(powers.size() + rhs.powers.size());
  size_t i = 0, j = 0;
  while (i < powers.size() || j < rhs.powers.size()) {
    if (j == rhs.powers.size() || (i < powers.size() && powers[i].first < rhs.powers[j].first)) {
      out.powers.push_back(powers[i++]);
    } else if (i == powers.size() || rhs.powers[j].first < powers[i].first) {
      out.powers.push_back(rhs.powers[j++]);
    } else {
      const int32_t e = powers[i].second + rhs.powers[j].second;
      if (e != 0) out.powers.emplace_back(powers[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial Monomial::inverse() const {
  Monomial out = *this;
  for (auto& [v, e] : out.powers) e = -e;
  return out;
}

Monomial Monomial::pow(int32_t k) const {
  Monomial out;
  if (k == 0) return out;
  out = *this;
  for (auto& [v, e] : out.powers) e *= k;
  return out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  const int64_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Lexicographic on the exponent vector over increasing VarId; a missing
  // variable counts as exponent zero.
  size_t i = 0, j = 0;
  while (i < a.powers.size() || j < b.powers.size()) {
    VarId va = i < a.powers.size() ? a.powers[i].first : std::numeric_limits<VarId>::max();
    VarId vb = j < b.powers.size() ? b.powers[j].first : std::numeric_limits<VarId>::max();
    if (va == vb) {
      if (a.powers[i].second != b.powers[j].second)
        return a.powers[i].second < b.powers[j].second ? -1 : 1;
      ++i;
      ++j;
      continue;
    }
    if (va < vb) {
      // a has a nonzero exponent where b has zero.
      return a.powers[i].second > 0 ? 1 : -1;
    }
    return b.powers[j].second > 0 ? -1 : 1;
  }
  return 0;
}

Expr::Expr(const Rational& v) {
  if (v != 0) terms_.emplace_back(Monomial::one(), v);
}

Expr Expr::variable(VarId v) { return monomial(Rational(1), Monomial::var(v)); }

Expr Expr::variable(std::string_view name) { return variable(SymbolTable::intern(name)); }

Expr Expr::monomial(Rational coeff, Monomial m) {
  Expr e;
  if (coeff != 0) e.terms_.emplace_back(std::move(m), std::move(coeff));
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  Expr e;
  e.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!e.terms_.empty() && e.terms_.back().first == t.first) {
      e.terms_.back().second += t.second;
      if (e.terms_.back().second == 0) e.terms_.pop_back();
    } else if (t.second != 0) {
      e.terms_.push_back(std::move(t));
    }
  }
  return e;
}

Expr Expr::atom(std::shared_ptr<const AnalyticAtom> a) {
  Expr e;
  e.atom_ = std::move(a);
  return e;
}

bool Expr::is_rational_constant() const {
  if (is_atom()) return false;
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational Expr::rational_value() const {
  if (!is_rational_constant()) throw std::domain_error("expression is not a rational constant");
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

bool Expr::has_negative_exponent() const {
  return is_polynomial() && std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
           return t.first.has_negative_exponent();
         });
}

bool Expr::depends_on(VarId v) const {
  if (is_atom()) return atom_->depends_on(v);
  return std::any_of(terms_.begin(), terms_.end(),
                     [v](const Term& t) { return t.first.exponent_of(v) != 0; });
}

const std::vector<Expr::Term>& Expr::terms() const {
  require_polynomial("terms");
  return terms_;
}

void Expr::require_polynomial(const char* op) const {
  if (is_atom())
    throw std::domain_error(std::string(op) + ": exact operation rejected, expression is an analytic atom ('" +
                            atom_->name() + "')");
}

Expr Expr::operator-() const {
  require_polynomial("negate");
  Expr out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Expr& Expr::operator+=(const Expr& rhs) {
  require_polynomial("add");
  rhs.require_polynomial("add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    int cmp;
    if (i == terms_.size())
      cmp = -1;
    else if (j == rhs.terms_.size())
      cmp = 1;
    else
      cmp = Monomial::compare(terms_[i].first, rhs.terms_[j].first);
    if (cmp > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Rational c = terms_[i].second + rhs.terms_[j].second;
      if (c != 0) merged.emplace_back(terms_[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Expr& Expr::operator-=(const Expr& rhs) { return *this += -rhs; }

Expr operator*(const Expr& a, const Expr& b) {
  a.require_polynomial("multiply");
  b.require_polynomial("multiply");
  if (a.terms_.empty() || b.terms_.empty()) return Expr();
  std::vector<Expr::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) products.emplace_back(ma.times(mb), ca * cb);
  return Expr::from_terms(std::move(products));
}

Expr& Expr::operator*=(const Expr& rhs) {
  *this = *this * rhs;
  return *this;
}

Expr operator*(const Rational& c, const Expr& e) {
  e.require_polynomial("scale");
  if (c == 0) return Expr();
  Expr out = e;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

Expr Expr::divided_by(const Rational& c) const {
  if (c == 0) throw std::domain_error("division by zero rational");
  return Rational(1) / c * *this;
}

Expr Expr::divided_by_monomial(const Rational& c, const Monomial& m) const {
  if (c == 0) throw std::domain_error("division by zero monomial");
  return monomial(Rational(1) / c, m.inverse()) * *this;
}

Expr Expr::pow_int(int32_t k) const {
  require_polynomial("pow");
  if (k == 0) return Expr(1);
  if (k < 0) {
    if (!is_monomial()) throw std::domain_error("negative power of a non-monomial expression");
    const auto& [m, c] = terms_[0];
    return monomial(Rational(1) / c, m.inverse()).pow_int(-k);
  }
  Expr result(1);
  Expr base = *this;
  int32_t n = k;
  while (n > 0) {
    if (n & 1) result *= base;
    base = (n >>= 1) > 0 ? base * base : base;
  }
  return result;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.is_atom() || b.is_atom()) return a.atom_ == b.atom_;
  return a.terms_ == b.terms_;
}

bool exact_equals(const Expr& a, const Expr& b) {
  if (a.is_atom() || b.is_atom())
    throw std::domain_error("equals: comparison involving an analytic atom is undecidable in the exact tier");
  return a == b;
}

Expr Expr::derivative(VarId v) const {
  require_polynomial("differentiate");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    const int32_t e = m.exponent_of(v);
    if (e == 0) continue;
    Monomial dm = m.times(Monomial::var(v, -1));
    out.emplace_back(std::move(dm), c * e);
  }
  return from_terms(std::move(out));
}

Expr Expr::substituted(VarId v, const Expr& replacement) const {
  require_polynomial("substitute");
  Expr out;
  for (const auto& [m, c] : terms_) {
    const int32_t e = m.exponent_of(v);
    Monomial rest = m.times(Monomial::var(v, -e));
    Expr term = monomial(c, std::move(rest));
    if (e != 0) term *= replacement.pow_int(e);
    out += term;
  }
  return out;
}

Rational Expr::evaluate(const std::map<VarId, Rational>& point) const {
  require_polynomial("evaluate");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (const auto& [v, e] : m.powers) {
      auto it = point.find(v);
      if (it == point.end())
        throw std::invalid_argument("evaluate: missing value for variable '" + SymbolTable::name(v) + "'");
      if (it->second == 0 && e < 0)
        throw std::domain_error("evaluate: negative power of zero at variable '" + SymbolTable::name(v) + "'");
      Rational base = it->second;
      Rational p = 1;
      for (int32_t i = 0; i < std::abs(e); ++i) p *= base;
      if (e < 0) p = Rational(1) / p;
      value *= p;
    }
    sum += value;
  }
  return sum;
}

double Expr::evaluate_double(const std::map<VarId, double>& point) const {
  require_polynomial("evaluate");
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double value = to_double(c);
    for (const auto& [v, e] : m.powers) {
      auto it = point.find(v);
      if (it == point.end())
        throw std::invalid_argument("evaluate: missing value for variable '" + SymbolTable::name(v) + "'");
      value *= std::pow(it->second, e);
    }
    sum += value;
  }
  return sum;
}

Jet Expr::jet_at(std::span<const VarId> vars, std::span<const double> point, int order) const {
  if (vars.size() != point.size()) throw std::invalid_argument("jet_at: vars/point size mismatch");
  if (is_atom()) return atom_->jet(vars, point, order);
  const int dim = static_cast<int>(vars.size());
  Jet sum = Jet::constant(dim, order, 0.0);
  for (const auto& [m, c] : terms_) {
    Jet value = Jet::constant(dim, order, to_double(c));
    for (const auto& [v, e] : m.powers) {
      int slot = -1;
      for (int k = 0; k < dim; ++k)
        if (vars[k] == v) slot = k;
      if (slot < 0)
        throw std::invalid_argument("jet_at: variable '" + SymbolTable::name(v) + "' not in jet context");
      Jet base = Jet::coordinate(dim, order, slot, point[static_cast<size_t>(slot)]);
      Jet p = base;
      for (int32_t i = 1; i < std::abs(e); ++i) p = p * base;
      if (e < 0) p = p.reciprocal();
      value = value * p;
    }
    sum = sum + value;
  }
  return sum;
}

Expr Expr::coefficient_of(VarId v, int32_t power) const {
  require_polynomial("coefficient_of");
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent_of(v) != power) continue;
    out.emplace_back(m.times(Monomial::var(v, -power)), c);
  }
  return from_terms(std::move(out));
}

int32_t Expr::max_power(VarId v) const {
  require_polynomial("max_power");
  int32_t p = 0;
  for (const auto& [m, c] : terms_) p = std::max(p, m.exponent_of(v));
  return p;
}

int32_t Expr::min_power(VarId v) const {
  require_polynomial("min_power");
  int32_t p = 0;
  for (const auto& [m, c] : terms_) p = std::min(p, m.exponent_of(v));
  return p;
}

Expr differentiate(const Expr& e, VarId v) { return e.derivative(v); }

Expr laplacian(const Expr& e, std::span<const VarId> transverse) {
  Expr out;
  for (VarId v : transverse) out += e.derivative(v).derivative(v);
  return out;
}

Expr laplacian_power(const Expr& e, int k, std::span<const VarId> transverse) {
  if (k < 0) throw std::invalid_argument("laplacian_power: negative order");
  Expr out = e;
  for (int i = 0; i < k; ++i) out = laplacian(out, transverse);
  return out;
}

namespace {

void print_monomial(std::ostream& os, const Monomial& m, bool latex) {
  bool first = true;
  for (const auto& [v, e] : m.powers) {
    if (!first) os << (latex ? " " : "*");
    first = false;
    std::string name = SymbolTable::name(v);
    if (latex) {
      if (name == "rho")
        name = "\\rho";
      else if (name.size() > 1 && (name[0] == 'x') && std::isdigit(static_cast<unsigned char>(name[1])))
        name = std::string(1, name[0]) + "_{" + name.substr(1) + "}";
    }
    os << name;
    if (e != 1) {
      if (latex)
        os << "^{" << e << "}";
      else
        os << "^" << e;
    }
  }
}

std::string print_expr(const Expr& e, bool latex) {
  if (e.is_atom()) throw std::domain_error("print: analytic atoms have no polynomial form");
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational a = c;
    // A leading negative term keeps its sign inside the rational literal so
    // that the plain-text form re-parses under the grammar (no unary minus).
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (latex && a < 0) {
      os << "-";
      a = -a;
    }
    first = false;
    if (m.is_one()) {
      os << (latex ? to_latex(a) : to_string(a));
    } else if (latex) {
      if (a != 1) os << to_latex(a) + " ";
      print_monomial(os, m, latex);
    } else {
      if (a != 1) os << to_string(a) + "*";
      print_monomial(os, m, latex);
    }
  }
  return os.str();
}

}  // namespace

std::string Expr::str() const { return print_expr(*this, false); }

std::string Expr::latex() const { return print_expr(*this, true); }

ParseError::ParseError(const std::string& message, size_t position)
    : std::runtime_error(message + " (at position " + std::to_string(position) + ")"), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const VarId> context) : text_(text), context_(context) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view text_;
  std::span<const VarId> context_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      const char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Expr t = parse_term();
        e = c == '+' ? e + t : e - t;
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (peek() == '*') {
      ++pos_;
      e *= parse_factor();
    }
    return e;
  }

  Expr parse_factor() {
    Expr base = parse_base();
    if (peek() == '^') {
      ++pos_;
      base = base.pow_int(static_cast<int32_t>(parse_uint("exponent")));
    }
    return base;
  }

  Expr parse_base() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError("expected rational, identifier or '('", pos_);
  }

  uint64_t parse_uint(const char* what) {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start)
      throw ParseError(std::string("expected unsigned integer ") + what, start);
    uint64_t v = 0;
    for (size_t i = start; i < pos_; ++i) {
      v = v * 10 + static_cast<uint64_t>(text_[i] - '0');
      if (v > (1u << 30)) throw ParseError(std::string(what) + " too large", start);
    }
    return v;
  }

  Expr parse_rational() {
    skip_ws();
    const size_t start = pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    skip_ws();
    const size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected digits in rational literal", start);
    BigInt num{std::string(text_.substr(digits, pos_ - digits))};
    if (negative) num = -num;
    if (peek() == '/') {
      ++pos_;
      const size_t dpos = pos_;
      const uint64_t den = parse_uint("denominator");
      if (den == 0) throw ParseError("zero denominator", dpos);
      return Expr(Rational(num, BigInt(den)));
    }
    return Expr(Rational(num));
  }

  Expr parse_ident() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (VarId v : context_)
      if (SymbolTable::name(v) == name) return Expr::variable(v);
    throw ParseError("unknown variable '" + std::string(name) + "'", start);
  }
};

}  // namespace

Expr parse_expression(std::string_view text, std::span<const VarId> context) {
  return Parser(text, context).run();
}

}  // namespace ambientlab

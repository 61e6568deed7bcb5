#include "ambientlab/rational.hpp"

#include <stdexcept>

namespace ambientlab {

std::string to_string(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_latex(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  if (den == 1) return num.str();
  if (num < 0) return "-\\frac{" + BigInt(-num).str() + "}{" + den.str() + "}";
  return "\\frac{" + num.str() + "}{" + den.str() + "}";
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_from_string(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    const BigInt num{std::string(text.substr(0, slash))};
    const BigInt den{std::string(text.substr(slash + 1))};
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "': " + e.what());
  }
}

Rational factorial(unsigned k) {
  BigInt f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

}  // namespace ambientlab

#include "rational.hpp"

#include <cctype>

#include "error.hpp"

namespace anarchy {

Rat parse_rational(const std::string& text) {
  std::size_t pos = 0;
  auto digits = [&](const char* what) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw InputError("bad rational \"" + text + "\": expected " + what);
    return text.substr(start, pos - start);
  };

  if (text.empty()) throw InputError("bad rational: empty string");
  bool negative = text[0] == '-';
  if (negative) ++pos;
  std::string num = digits("digits");
  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = digits("denominator digits");
  }
  if (pos != text.size()) throw InputError("bad rational \"" + text + "\": trailing characters");

  Int d(den);
  if (d == 0) throw InputError("bad rational \"" + text + "\": zero denominator");
  Int n(num);
  if (negative) n = -n;
  return Rat(n, d);
}

std::string format_rational(const Rat& value) {
  Int num = boost::multiprecision::numerator(value);
  Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace anarchy

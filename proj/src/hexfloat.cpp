#include "grh/elementary.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

namespace grh {

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_hex_double(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

std::string to_hex(const RealInterval& a) { return hex(a.lo()) + " " + hex(a.hi()); }

std::string to_hex(const BigInterval& a) { return a.lo().to_hex() + " " + a.hi().to_hex(); }

RealInterval parse_real_interval(const std::string& lo, const std::string& hi) {
  return RealInterval(parse_hex_double(lo), parse_hex_double(hi));
}

BigInterval parse_big_interval(const std::string& lo, const std::string& hi, int bits) {
  return BigInterval(BigFloat::from_string(lo, bits), BigFloat::from_string(hi, bits));
}

}  // namespace grh

#include "grh/bigfloat.hpp"

#include <stdexcept>

namespace grh {

namespace {
thread_local int tl_precision = 128;
}

int working_precision() { return tl_precision; }

PrecisionScope::PrecisionScope(int bits) : saved_(tl_precision) {
  if (bits < 2) throw std::invalid_argument("precision must be at least 2 bits");
  tl_precision = bits;
}

PrecisionScope::~PrecisionScope() { tl_precision = saved_; }

std::string BigFloat::to_hex() const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%Ra", v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat BigFloat::from_string(const std::string& s, int bits) {
  PrecisionScope scope(bits);
  BigFloat r;
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 0, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("not a number: " + s);
  return r;
}

BigFloat BigFloat::infinity(int sign) {
  BigFloat r;
  mpfr_set_inf(r.v_, sign);
  return r;
}

}  // namespace grh

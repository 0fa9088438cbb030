#pragma once

#include <stdint.h>
#include <inttypes.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

namespace grh {

/// Working precision (bits) used for newly constructed BigFloat values on
/// the calling thread.
int working_precision();

/// RAII guard that sets the thread's working precision for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

/// Owning wrapper around an mpfr_t. Arithmetic lives in the rounding traits;
/// this class only manages storage and exact conversions.
class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, working_precision()); mpfr_set_zero(v_, 1); }
  explicit BigFloat(double d) {
    mpfr_init2(v_, std::max<int>(working_precision(), 53));
    mpfr_set_d(v_, d, MPFR_RNDN);  // exact: precision >= 53
  }
  explicit BigFloat(std::int64_t n) {
    mpfr_init2(v_, std::max<int>(working_precision(), 64));
    mpfr_set_sj(v_, n, MPFR_RNDN);  // exact: precision >= 64
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Lossless hexadecimal text, e.g. "0x1.8p+1".
  std::string to_hex() const;
  /// Parses text produced by to_hex (or any MPFR-readable number) exactly
  /// when the precision suffices.
  static BigFloat from_string(const std::string& s, int bits);

  static BigFloat infinity(int sign);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

}  // namespace grh

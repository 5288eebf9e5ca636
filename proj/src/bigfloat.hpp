#pragma once

// Minimal RAII wrapper over MPFR for the few places that need
// high-precision complex embeddings of cyclotomic elements.

#include <mpfr.h>

#include <cstddef>
#include <utility>

#include "galdeg/cyclotomic.hpp"

namespace galdeg::detail {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

struct BigComplex {
  BigFloat re;
  BigFloat im;
  explicit BigComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

/// Value of a at exp(2 pi i t / m).
BigComplex embed(const CycElem& a, std::size_t t, mpfr_prec_t prec);

/// |z|.
BigFloat abs(const BigComplex& z);

/// log |sigma_t(a)|; a must be nonzero.
BigFloat log_abs_embedding(const CycElem& a, std::size_t t, mpfr_prec_t prec);

}  // namespace galdeg::detail

#pragma once

// Independent high-precision recomputation of the Taylor backward-error
// thresholds, used to vet the shipped tables. Unlike the generator (which
// derives the log-series coefficients through the logarithmic-derivative
// recurrence), this oracle composes log(1 + q) directly from truncated powers
// of q, so the two agree only if both are right.

#include <gmp.h>
#include <mpfr.h>

#include <cstddef>
#include <vector>

namespace qsw::test {

class BigReal {
 public:
  static constexpr mpfr_prec_t kPrec = 320;
  BigReal() { mpfr_init2(v, kPrec); mpfr_set_zero(v, 1); }
  explicit BigReal(double d) { mpfr_init2(v, kPrec); mpfr_set_d(v, d, MPFR_RNDN); }
  BigReal(const BigReal& o) { mpfr_init2(v, kPrec); mpfr_set(v, o.v, MPFR_RNDN); }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) mpfr_set(v, o.v, MPFR_RNDN);
    return *this;
  }
  ~BigReal() { mpfr_clear(v); }
  mpfr_t v;
};

/// theta_m via direct series composition and bisection.
inline double theta_oracle(std::size_t m, double tol_d) {
  const std::size_t kmax = m + 110;

  // q(x) = sum_{k>m} a_k x^k with a_k = (-1)^(k+m) C(k-1,m)/k!
  std::vector<BigReal> q(kmax + 1);
  {
    mpz_t binom;
    mpz_init(binom);
    mpfr_t fact;
    mpfr_init2(fact, BigReal::kPrec);
    for (std::size_t k = m + 1; k <= kmax; ++k) {
      mpz_bin_uiui(binom, static_cast<unsigned long>(k - 1), static_cast<unsigned long>(m));
      mpfr_fac_ui(fact, static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_set_z(q[k].v, binom, MPFR_RNDN);
      mpfr_div(q[k].v, q[k].v, fact, MPFR_RNDN);
      if ((k + m) % 2 == 1) mpfr_neg(q[k].v, q[k].v, MPFR_RNDN);
    }
    mpz_clear(binom);
    mpfr_clear(fact);
  }

  // c = log(1+q) = sum_r (-1)^(r+1) q^r / r, truncated at degree kmax
  std::vector<BigReal> c(kmax + 1), qpow = q, next(kmax + 1);
  {
    mpfr_t term;
    mpfr_init2(term, BigReal::kPrec);
    for (std::size_t r = 1; r * (m + 1) <= kmax; ++r) {
      for (std::size_t k = m + 1; k <= kmax; ++k) {
        mpfr_div_ui(term, qpow[k].v, static_cast<unsigned long>(r), MPFR_RNDN);
        if (r % 2 == 0) mpfr_neg(term, term, MPFR_RNDN);
        mpfr_add(c[k].v, c[k].v, term, MPFR_RNDN);
      }
      // qpow <- qpow * q (truncated)
      for (auto& x : next) mpfr_set_zero(x.v, 1);
      for (std::size_t a = m + 1; a <= kmax; ++a) {
        if (mpfr_zero_p(qpow[a].v)) continue;
        for (std::size_t b = m + 1; a + b <= kmax; ++b) {
          mpfr_mul(term, qpow[a].v, q[b].v, MPFR_RNDN);
          mpfr_add(next[a + b].v, next[a + b].v, term, MPFR_RNDN);
        }
      }
      std::swap(qpow, next);
    }
    mpfr_clear(term);
  }

  mpfr_t tol, lo, hi, mid, sum, power, term;
  mpfr_init2(tol, BigReal::kPrec);
  mpfr_init2(lo, BigReal::kPrec);
  mpfr_init2(hi, BigReal::kPrec);
  mpfr_init2(mid, BigReal::kPrec);
  mpfr_init2(sum, BigReal::kPrec);
  mpfr_init2(power, BigReal::kPrec);
  mpfr_init2(term, BigReal::kPrec);
  mpfr_set_d(tol, tol_d, MPFR_RNDN);

  auto above = [&](const mpfr_t theta) {
    mpfr_set_zero(sum, 1);
    mpfr_pow_ui(power, theta, static_cast<unsigned long>(m), MPFR_RNDN);
    for (std::size_t k = m + 1; k <= kmax; ++k) {
      mpfr_abs(term, c[k].v, MPFR_RNDN);
      mpfr_mul(term, term, power, MPFR_RNDN);
      mpfr_add(sum, sum, term, MPFR_RNDN);
      mpfr_mul(power, power, theta, MPFR_RNDN);
    }
    return mpfr_cmp(sum, tol) > 0;
  };

  mpfr_set_d(lo, 1e-300, MPFR_RNDN);
  mpfr_set_d(hi, 1e-300, MPFR_RNDN);
  while (!above(hi)) {
    mpfr_set(lo, hi, MPFR_RNDN);
    mpfr_mul_ui(hi, hi, 2, MPFR_RNDN);
  }
  for (int it = 0; it < 400; ++it) {
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    if (above(mid)) {
      mpfr_set(hi, mid, MPFR_RNDN);
    } else {
      mpfr_set(lo, mid, MPFR_RNDN);
    }
  }
  const double out = mpfr_get_d(lo, MPFR_RNDN);
  mpfr_clear(tol);
  mpfr_clear(lo);
  mpfr_clear(hi);
  mpfr_clear(mid);
  mpfr_clear(sum);
  mpfr_clear(power);
  mpfr_clear(term);
  return out;
}

}  // namespace qsw::test

// Generates core/src/theta_tables.cpp: the backward-error thresholds theta_m
// for the truncated-Taylor exponential action, at the double (2^-53) and
// single (2^-24) precision targets.
//
// For each Taylor degree m, the function h_{m+1}(x) = log(exp(-x) T_m(x)) has
// the series sum_{k>m} a_k x^k with a_k = (-1)^(k+m) C(k-1, m) / k!. theta_m
// is the largest theta with sum_k |c_k| theta^k / theta <= tol, where c_k are
// the series coefficients of h_{m+1}. Computed here with MPFR interval-free
// high precision (384 bits) via the logarithmic-derivative recurrence
// p h' = p', then bisection on the monotone bound.
//
// Usage: gen_theta [output.cpp]

#include <gmp.h>
#include <mpfr.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace {

constexpr std::size_t kMMax = 55;
constexpr mpfr_prec_t kPrec = 384;
constexpr int kTailTerms = 120;  // series terms kept beyond k = m

class Real {
 public:
  Real() { mpfr_init2(v, kPrec); mpfr_set_zero(v, 1); }
  explicit Real(double d) { mpfr_init2(v, kPrec); mpfr_set_d(v, d, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v, kPrec); mpfr_set(v, o.v, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v, o.v, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v); }
  mpfr_t v;
};

// a_k = (-1)^(k+m) C(k-1, m) / k!  for k > m.
std::vector<Real> series_coefficients(std::size_t m, std::size_t kmax) {
  std::vector<Real> a(kmax + 1);
  mpz_t binom;
  mpz_init(binom);
  mpfr_t fact, term;
  mpfr_init2(fact, kPrec);
  mpfr_init2(term, kPrec);
  for (std::size_t k = m + 1; k <= kmax; ++k) {
    mpz_bin_uiui(binom, static_cast<unsigned long>(k - 1), static_cast<unsigned long>(m));
    mpfr_fac_ui(fact, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_set_z(term, binom, MPFR_RNDN);
    mpfr_div(term, term, fact, MPFR_RNDN);
    if ((k + m) % 2 == 1) mpfr_neg(term, term, MPFR_RNDN);
    mpfr_set(a[k].v, term, MPFR_RNDN);
  }
  mpz_clear(binom);
  mpfr_clear(fact);
  mpfr_clear(term);
  return a;
}

// c_k of log(1 + q) from p h' = p' with p = 1 + q:
//   c_k = a_k - (1/k) sum_{u} a_u (k - u) c_{k-u}.
std::vector<Real> log_coefficients(const std::vector<Real>& a, std::size_t m) {
  const std::size_t kmax = a.size() - 1;
  std::vector<Real> c(kmax + 1);
  mpfr_t acc, term;
  mpfr_init2(acc, kPrec);
  mpfr_init2(term, kPrec);
  for (std::size_t k = m + 1; k <= kmax; ++k) {
    mpfr_set_zero(acc, 1);
    for (std::size_t u = m + 1; u + m + 1 <= k; ++u) {
      mpfr_mul_ui(term, c[k - u].v, static_cast<unsigned long>(k - u), MPFR_RNDN);
      mpfr_mul(term, term, a[u].v, MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    mpfr_div_ui(acc, acc, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_sub(c[k].v, a[k].v, acc, MPFR_RNDN);
  }
  mpfr_clear(acc);
  mpfr_clear(term);
  return c;
}

// sum_k |c_k| theta^k / theta - tol, negative below the root.
void bound_gap(mpfr_t out, const std::vector<Real>& c, std::size_t m, const mpfr_t theta,
               const mpfr_t tol) {
  mpfr_t sum, power, term;
  mpfr_init2(sum, kPrec);
  mpfr_init2(power, kPrec);
  mpfr_init2(term, kPrec);
  mpfr_set_zero(sum, 1);
  mpfr_pow_ui(power, theta, static_cast<unsigned long>(m), MPFR_RNDN);  // theta^(k-1) at k = m+1
  for (std::size_t k = m + 1; k < c.size(); ++k) {
    mpfr_abs(term, c[k].v, MPFR_RNDN);
    mpfr_mul(term, term, power, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    mpfr_mul(power, power, theta, MPFR_RNDN);
  }
  mpfr_sub(out, sum, tol, MPFR_RNDN);
  mpfr_clear(sum);
  mpfr_clear(power);
  mpfr_clear(term);
}

double theta_for(std::size_t m, double tol_d) {
  const std::size_t kmax = m + kTailTerms;
  const std::vector<Real> a = series_coefficients(m, kmax);
  const std::vector<Real> c = log_coefficients(a, m);

  mpfr_t tol, lo, hi, mid, gap;
  mpfr_init2(tol, kPrec);
  mpfr_init2(lo, kPrec);
  mpfr_init2(hi, kPrec);
  mpfr_init2(mid, kPrec);
  mpfr_init2(gap, kPrec);
  mpfr_set_d(tol, tol_d, MPFR_RNDN);

  mpfr_set_d(lo, 1e-300, MPFR_RNDN);
  mpfr_set_d(hi, 1e-300, MPFR_RNDN);
  for (;;) {
    bound_gap(gap, c, m, hi, tol);
    if (mpfr_sgn(gap) > 0) break;
    mpfr_set(lo, hi, MPFR_RNDN);
    mpfr_mul_ui(hi, hi, 2, MPFR_RNDN);
  }
  for (int it = 0; it < 2000; ++it) {
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    bound_gap(gap, c, m, mid, tol);
    if (mpfr_sgn(gap) > 0) {
      mpfr_set(hi, mid, MPFR_RNDN);
    } else {
      mpfr_set(lo, mid, MPFR_RNDN);
    }
  }
  double out = mpfr_get_d(lo, MPFR_RNDN);
  mpfr_clear(tol);
  mpfr_clear(lo);
  mpfr_clear(hi);
  mpfr_clear(mid);
  mpfr_clear(gap);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "theta_tables.cpp";
  std::array<double, kMMax> table_double{}, table_single{};
  for (std::size_t m = 1; m <= kMMax; ++m) {
    table_double[m - 1] = theta_for(m, 0x1p-53);
    table_single[m - 1] = theta_for(m, 0x1p-24);
    std::fprintf(stderr, "m = %2zu  theta53 = %.17e  theta24 = %.17e\n", m, table_double[m - 1],
                 table_single[m - 1]);
  }

  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    return 1;
  }
  std::fprintf(out,
               "// Generated by tools/gen_theta. Backward-error thresholds theta_m for the\n"
               "// truncated-Taylor exponential action, m = 1..%zu.\n"
               "\n"
               "#include \"theta_tables.hpp\"\n"
               "\n"
               "namespace qsw::detail {\n\n",
               kMMax);
  std::fprintf(out, "const std::array<double, %zu> kThetaTaylorDouble = {\n", kMMax);
  for (double v : table_double) std::fprintf(out, "    %.17e,\n", v);
  std::fprintf(out, "};\n\nconst std::array<double, %zu> kThetaTaylorSingle = {\n", kMMax);
  for (double v : table_single) std::fprintf(out, "    %.17e,\n", v);
  std::fprintf(out, "};\n\n}  // namespace qsw::detail\n");
  std::fclose(out);
  return 0;
}

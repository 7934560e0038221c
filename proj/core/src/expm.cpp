#include "qsw/expm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "theta_tables.hpp"

namespace qsw {

namespace {

// Runtime theta computation for non-standard tolerances, double precision.
// Same backward-error series as tools/gen_theta: h_{m+1}(x) = log(e^-x T_m(x))
// via the logarithmic-derivative recurrence, then bisection on
// sum_k |c_k| theta^k / theta = tol.
double solve_theta(std::size_t m, double tol) {
  const std::size_t kmax = m + 150;
  std::vector<double> a(kmax + 1, 0.0), c(kmax + 1, 0.0);
  for (std::size_t k = m + 1; k <= kmax; ++k) {
    // |a_k| = C(k-1, m) / k!
    double log_a = std::lgamma(static_cast<double>(k)) -
                   std::lgamma(static_cast<double>(m + 1)) -
                   std::lgamma(static_cast<double>(k - m)) -
                   std::lgamma(static_cast<double>(k + 1));
    a[k] = ((k + m) % 2 == 1 ? -1.0 : 1.0) * std::exp(log_a);
  }
  for (std::size_t k = m + 1; k <= kmax; ++k) {
    double acc = 0.0;
    for (std::size_t u = m + 1; u + m + 1 <= k; ++u) {
      acc += a[u] * static_cast<double>(k - u) * c[k - u];
    }
    c[k] = a[k] - acc / static_cast<double>(k);
  }
  auto gap = [&](double theta) {
    double sum = 0.0;
    double power = std::pow(theta, static_cast<double>(m));  // theta^(k-1) at k = m+1
    for (std::size_t k = m + 1; k <= kmax; ++k) {
      sum += std::abs(c[k]) * power;
      power *= theta;
      if (power == 0.0 || !std::isfinite(power)) break;
    }
    return sum - tol;
  };
  double lo = 0.0, hi = 1e-280;
  while (gap(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (gap(mid) > 0.0 ? hi : lo) = mid;
  }
  return lo;
}

}  // namespace

const TaylorParameters& build_theta_table(double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw std::invalid_argument("tolerance must lie in (0, 1)");
  }
  static std::mutex mutex;
  static std::map<double, TaylorParameters> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(tolerance);
  if (it != cache.end()) return it->second;

  TaylorParameters params;
  params.tolerance = tolerance;
  if (tolerance == kDoublePrecisionTol) {
    params.theta = detail::kThetaTaylorDouble;
  } else if (tolerance == kSinglePrecisionTol) {
    params.theta = detail::kThetaTaylorSingle;
  } else {
    for (std::size_t m = 1; m <= TaylorParameters::m_max; ++m) {
      params.theta[m - 1] = solve_theta(m, tolerance);
    }
  }
  return cache.emplace(tolerance, params).first->second;
}

StepParameters select_parameters(std::span<const double, 9> one_norms, double t,
                                 const TaylorParameters& params) {
  const double at = std::abs(t);
  if (at * one_norms[0] == 0.0) return {0, 1};

  constexpr std::size_t m_max = TaylorParameters::m_max;
  constexpr std::size_t p_max = TaylorParameters::p_max;

  // alpha_p = max(d_p, d_{p+1}) with d_p = ||(tA)^p||_1^(1/p), indexed by
  // p = 2..p_max. When ||tA||_1 is small the norm refinement cannot pay for
  // itself and alpha_p = ||tA||_1 is used throughout.
  std::array<double, p_max - 1> alpha{};
  const double norm1 = at * one_norms[0];
  const bool small = norm1 <= 4.0 * params.theta[m_max - 1] * static_cast<double>(p_max) *
                                  static_cast<double>(p_max + 3) / static_cast<double>(m_max);
  for (std::size_t p = 2; p <= p_max; ++p) {
    if (small) {
      alpha[p - 2] = norm1;
    } else {
      const double dp = at * std::pow(one_norms[p - 1], 1.0 / static_cast<double>(p));
      const double dp1 = at * std::pow(one_norms[p], 1.0 / static_cast<double>(p + 1));
      alpha[p - 2] = std::max(dp, dp1);
    }
  }

  StepParameters best{0, 1};
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t p = 2; p <= p_max; ++p) {
    for (std::size_t m = p * (p - 1) - 1; m <= m_max; ++m) {
      const double s_real = std::max(std::ceil(alpha[p - 2] / params.theta[m - 1]), 1.0);
      const double cost = static_cast<double>(m) * s_real;
      if (cost < best_cost) {
        best_cost = cost;
        best = {m, static_cast<std::size_t>(s_real)};
      }
    }
  }
  return best;
}

namespace {

using Segments = std::vector<std::vector<Complex>>;

Segments make_like(const Segments& x) {
  Segments y(x.size());
  for (std::size_t w = 0; w < x.size(); ++w) y[w].resize(x[w].size());
  return y;
}

struct Reduction {
  std::vector<double> term;
  std::vector<double> total;
  double max_term() const { return *std::max_element(term.begin(), term.end()); }
  double max_total() const { return *std::max_element(total.begin(), total.end()); }
};

}  // namespace

StateVector step(const DistributedLiouvillian& l, const StateVector& v, double t,
                 const TaylorParameters& params) {
  if (!(v.partition == l.partition())) {
    throw std::invalid_argument("state vector partition does not match the Liouvillian");
  }
  const StepParameters sp = select_parameters(l.one_norms(), t, params);
  if (sp.m_star == 0) return v;

  const std::size_t n_workers = l.partition().worker_count();
  WorkerPool pool(n_workers);

  Segments term = v.segments;     // current Taylor term
  Segments sum = v.segments;      // running result
  Segments scratch = make_like(v.segments);
  std::vector<std::vector<Complex>> ext(n_workers);
  Reduction norms{std::vector<double>(n_workers), std::vector<double>(n_workers)};

  const double s_count = static_cast<double>(sp.s);
  double c1 = 0.0;
  pool.run([&](std::size_t w) {
    double nb = 0.0;
    for (const Complex& x : term[w]) nb = std::max(nb, std::abs(x));
    norms.term[w] = nb;
  });
  c1 = norms.max_term();

  for (std::size_t stage = 0; stage < sp.s; ++stage) {
    for (std::size_t j = 1; j <= sp.m_star; ++j) {
      const Complex scale{t / (s_count * static_cast<double>(j)), 0.0};
      pool.run([&](std::size_t w) {
        l.worker_multiply(w, term, scratch[w], ext[w], scale);
        double nt = 0.0, ns = 0.0;
        auto& acc = sum[w];
        const auto& y = scratch[w];
        for (std::size_t i = 0; i < y.size(); ++i) {
          acc[i] += y[i];
          nt = std::max(nt, std::abs(y[i]));
          ns = std::max(ns, std::abs(acc[i]));
        }
        norms.term[w] = nt;
        norms.total[w] = ns;
      });
      std::swap(term, scratch);
      const double c2 = norms.max_term();
      const double nf = norms.max_total();
      if (!std::isfinite(c2) || !std::isfinite(nf)) {
        throw NumericalError("non-finite values encountered in exponential action");
      }
      if (c1 + c2 <= params.tolerance * nf) break;
      c1 = c2;
    }
    if (stage + 1 < sp.s) {
      pool.run([&](std::size_t w) {
        term[w] = sum[w];
        double nb = 0.0;
        for (const Complex& x : term[w]) nb = std::max(nb, std::abs(x));
        norms.term[w] = nb;
      });
      c1 = norms.max_term();
    }
  }

  StateVector out;
  out.partition = v.partition;
  out.segments = std::move(sum);
  return out;
}

SeriesResult series(const DistributedLiouvillian& l, const StateVector& v, double t1, double tq,
                    std::size_t steps, const TaylorParameters& params) {
  if (!(tq > t1)) throw std::invalid_argument("series requires tq > t1");
  if (steps < 1) throw std::invalid_argument("series requires at least one step");
  const std::size_t q = steps;
  const double h = (tq - t1) / static_cast<double>(q);

  SeriesResult out;
  out.times.resize(q + 1);
  for (std::size_t k = 0; k <= q; ++k) out.times[k] = t1 + h * static_cast<double>(k);
  out.states.reserve(q + 1);
  out.states.push_back(step(l, v, t1, params));

  const StepParameters span = select_parameters(l.one_norms(), tq - t1, params);
  if (span.m_star == 0) {
    // Zero generator: every state equals the t1 state.
    for (std::size_t k = 1; k <= q; ++k) out.states.push_back(out.states.front());
    return out;
  }

  if (q <= span.s) {
    for (std::size_t k = 1; k <= q; ++k) {
      StateVector next = step(l, out.states.back(), h, params);
      out.states.push_back(std::move(next));
    }
    return out;
  }

  // Super-steps of d outputs share the Taylor term vectors K_p = (hA)^p Z/p!,
  // evaluated at k*h via the scale factors k^p. d is capped so k^p stays
  // representable.
  std::size_t d = q / span.s;
  const double d_cap = std::pow(1e280, 1.0 / static_cast<double>(TaylorParameters::m_max));
  d = std::min(d, static_cast<std::size_t>(d_cap));
  const std::size_t n_super = q / d;
  const std::size_t remainder = q - d * n_super;

  const StepParameters sub =
      select_parameters(l.one_norms(), h * static_cast<double>(d), params);
  const std::size_t m_star = std::max<std::size_t>(sub.m_star, 1);

  const std::size_t n_workers = l.partition().worker_count();
  WorkerPool pool(n_workers);
  std::vector<std::vector<Complex>> ext(n_workers);
  Reduction norms{std::vector<double>(n_workers), std::vector<double>(n_workers)};

  std::vector<Segments> terms(m_star + 1);  // terms[p] = (hA)^p Z / p!
  std::vector<double> term_norm(m_star + 1, 0.0);
  Segments sum = make_like(v.segments);

  for (std::size_t super = 0; super <= n_super; ++super) {
    const std::size_t count = super < n_super ? d : remainder;
    if (count == 0) break;
    terms[0] = out.states[super * d].segments;
    std::size_t computed = 0;

    double z_norm = 0.0;
    pool.run([&](std::size_t w) {
      double nz = 0.0;
      for (const Complex& x : terms[0][w]) nz = std::max(nz, std::abs(x));
      norms.term[w] = nz;
    });
    z_norm = norms.max_term();

    for (std::size_t k = 1; k <= count; ++k) {
      sum = terms[0];
      double c1 = z_norm;
      double factor = 1.0;
      for (std::size_t p = 1; p <= m_star; ++p) {
        if (p > computed) {
          if (terms[p].empty()) terms[p] = make_like(terms[0]);
          const Complex scale{h / static_cast<double>(p), 0.0};
          pool.run([&](std::size_t w) {
            l.worker_multiply(w, terms[p - 1], terms[p][w], ext[w], scale);
            double nt = 0.0;
            for (const Complex& x : terms[p][w]) nt = std::max(nt, std::abs(x));
            norms.term[w] = nt;
          });
          term_norm[p] = norms.max_term();
          if (!std::isfinite(term_norm[p])) {
            throw NumericalError("non-finite values encountered in series evolution");
          }
          computed = p;
        }
        factor *= static_cast<double>(k);
        const Complex fc{factor, 0.0};
        pool.run([&](std::size_t w) {
          auto& acc = sum[w];
          const auto& kp = terms[p][w];
          double ns = 0.0;
          for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += fc * kp[i];
            ns = std::max(ns, std::abs(acc[i]));
          }
          norms.total[w] = ns;
        });
        const double c2 = factor * term_norm[p];
        const double nf = norms.max_total();
        if (!std::isfinite(nf)) {
          throw NumericalError("non-finite values encountered in series evolution");
        }
        if (c1 + c2 <= params.tolerance * nf) break;
        c1 = c2;
      }
      StateVector state;
      state.partition = v.partition;
      state.segments = sum;
      out.states.push_back(std::move(state));
    }
  }
  return out;
}

}  // namespace qsw

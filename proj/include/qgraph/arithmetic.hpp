#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "core.hpp"
#include "specfun/constants.hpp"
#include "specfun/zeta.hpp"

namespace qgraph {

/**
 * \brief Sieve of d(n) for 1 <= n <= limit, with prefix counts.
 *
 * Also serves divisor tails T_p(N) = sum_{n>N} d(n) n^{-p}, which every
 * truncated spectral sum needs.  Integer p tails are cached per N.
 */
class DivisorTable {
public:
  static constexpr int max_tail_order = 64;

  explicit DivisorTable(std::size_t limit) : limit_(limit) {
    if (limit == 0) throw invalid_argument("divisor_sieve: limit must be at least 1");
    d_.assign(limit + 1, 0);
    for (std::size_t m = 1; m <= limit; ++m)
      for (std::size_t j = m; j <= limit; j += m) ++d_[j];
    prefix_.assign(limit + 1, 0);
    for (std::size_t n = 1; n <= limit; ++n) prefix_[n] = prefix_[n - 1] + d_[n];
  }

  std::size_t limit() const noexcept { return limit_; }

  /** d(n) for 1 <= n <= limit. */
  std::uint32_t operator[](std::size_t n) const { return d_[n]; }
  std::uint32_t d(std::size_t n) const {
    if (n == 0 || n > limit_) throw out_of_range("DivisorTable: index outside 1..limit");
    return d_[n];
  }

  /** values[n-1] = d(n). */
  std::vector<std::uint32_t> values() const { return {d_.begin() + 1, d_.end()}; }

  /** N(n) = sum_{m<=n} d(m). */
  std::uint64_t prefix(std::size_t n) const {
    if (n > limit_) throw out_of_range("DivisorTable: prefix beyond limit");
    return prefix_[n];
  }

  /** T_p(N) for real p > 1. */
  double tail(int p, std::size_t N) const {
    if (p < 2 || p > max_tail_order) return tail(cplx(p, 0.0), N).real();
    return tails(N)[p];
  }

  /** T_p(N) for Re p > 1. */
  cplx tail(cplx p, std::size_t N) const {
    if (!(p.real() > 1.0)) throw domain_error("DivisorTable::tail: requires Re p > 1");
    if (N > limit_) throw out_of_range("DivisorTable::tail: N beyond limit");
    cplx smooth = smoothed_tail(p, N);
    cplx z = riemann_zeta(p);
    cplx z2 = z * z;
    if (std::abs(smooth) < 1e-12 * std::abs(z2)) return smooth;
    CompensatedSum<cplx> s;
    for (std::size_t n = N; n >= 1; --n) s += double(d_[n]) * std::exp(-p * std::log(double(n)));
    return z2 - s.value();
  }

  /** Table of T_p(N), p = 0..max_tail_order (entries below 2 unused). */
  const std::vector<double>& tails(std::size_t N) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->tails.find(N);
    if (it != cache_->tails.end()) return it->second;
    std::vector<double> t(max_tail_order + 1, 0.0);
    for (int p = 2; p <= max_tail_order; ++p) t[p] = tail(cplx(p, 0.0), N).real();
    return cache_->tails.emplace(N, std::move(t)).first->second;
  }

private:
  std::size_t limit_;
  std::vector<std::uint32_t> d_;
  std::vector<std::uint64_t> prefix_;

  struct Cache {
    std::mutex mu;
    std::map<std::size_t, std::vector<double>> tails;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  // int_N^inf (ln x + 2 gamma) x^{-p} dx minus the boundary term (N(N) - N^W(N)) N^{-p}
  cplx smoothed_tail(cplx p, std::size_t N) const {
    const double x = double(N), lx = std::log(x);
    const cplx pm1 = p - 1.0;
    const cplx xp = std::exp(-p * lx);
    cplx integral = x * xp * (lx / pm1 + 1.0 / (pm1 * pm1) + 2.0 * euler_gamma / pm1);
    double nw = x * lx + (2.0 * euler_gamma - 1.0) * x + 0.25;
    return integral - (double(prefix_[N]) - nw) * xp;
  }
};

inline DivisorTable divisor_sieve(std::size_t limit) { return DivisorTable(limit); }

/** \brief d(x): d(n) at integers, exactly zero elsewhere. */
inline double divisor_at(double x, const DivisorTable& table) {
  if (!(x >= 1.0) || x != std::floor(x)) return 0.0;
  return double(table.d(static_cast<std::size_t>(x)));
}

/** \brief N(x) = sum_{n<=x} d(n), zero for x < 1. */
inline std::uint64_t counting_function(double x, const DivisorTable& table) {
  if (!(x >= 0)) throw invalid_argument("counting_function: requires x >= 0");
  if (x < 1.0) return 0;
  const double f = std::floor(x);
  if (f > double(table.limit())) throw out_of_range("counting_function: table too small");
  return table.prefix(static_cast<std::size_t>(f));
}

/** \brief N^W(x) = x ln x + (2 gamma - 1) x + 1/4. */
inline double weyl_counting_term(double x) {
  if (!(x > 0)) throw invalid_argument("weyl_counting_term: requires x > 0");
  return x * std::log(x) + (2.0 * euler_gamma - 1.0) * x + 0.25;
}

/** \brief N(x)/x. */
inline double mean_multiplicity(double x, const DivisorTable& table) {
  if (!(x >= 1.0)) throw invalid_argument("mean_multiplicity: requires x >= 1");
  return double(counting_function(x, table)) / x;
}

/** \brief Divisor count by trial division up to sqrt(n). */
inline std::uint32_t divisor_count_trial(std::uint64_t n) {
  if (n == 0) throw invalid_argument("divisor_count_trial: n must be positive");
  std::uint32_t c = 0;
  for (std::uint64_t i = 1; i * i <= n; ++i)
    if (n % i == 0) c += (i * i == n) ? 1 : 2;
  return c;
}

}  // namespace qgraph

#include "selmer/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <exception>
#include <thread>

#include "selmer/arith.hpp"
#include "selmer/error.hpp"

namespace selmer {

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

void check_bound(std::int64_t bound) {
  if (bound < 0) throw Error(ErrorKind::range, "negative series bound");
}

// Runs fn(lo, hi) over `threads` contiguous slices of [0, n).
template <class Fn>
void parallel_slices(std::int64_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 4096) {
    fn(std::int64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::int64_t step = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::int64_t lo = std::min(n, step * t);
    const std::int64_t hi = std::min(n, lo + step);
    if (lo >= hi) continue;
    pool.emplace_back([&, t, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

constexpr std::int64_t kBlock = 1 << 14;

using Terms = std::vector<std::pair<std::int64_t, std::int64_t>>;

// out[i] += sum_j s_j d[i - j], blocked over the output so each block stays in cache.
// Acc must hold every partial sum; the caller guarantees that from peak * weight.
template <class Acc, class T>
void sparse_dense_kernel(const T* d, const Terms& terms, std::int64_t* o, std::int64_t bound,
                         unsigned threads) {
  parallel_slices(bound + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Acc> acc(kBlock);
    for (std::int64_t b0 = lo; b0 < hi; b0 += kBlock) {
      const std::int64_t b1 = std::min(hi, b0 + kBlock);
      std::fill(acc.begin(), acc.end(), Acc{0});
      for (const auto& [j, sj] : terms) {
        if (j >= b1) break;
        const std::int64_t start = std::max(b0, j);
        Acc* dst = acc.data() + (start - b0);
        const T* src = d + (start - j);
        const std::int64_t len = b1 - start;
        const auto w = static_cast<Acc>(sj);
        for (std::int64_t i = 0; i < len; ++i) dst[i] += w * static_cast<Acc>(src[i]);
      }
      for (std::int64_t i = b0; i < b1; ++i) o[i] = acc[static_cast<std::size_t>(i - b0)];
    }
  });
}

void checked_kernel(const std::int64_t* d, const Terms& terms, std::int64_t* o, std::int64_t bound,
                    unsigned threads) {
  parallel_slices(bound + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (const auto& [j, sj] : terms) {
      for (std::int64_t i = std::max(lo, j); i < hi; ++i) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(sj, d[i - j], &prod) || __builtin_add_overflow(o[i], prod, &o[i])) {
          throw Error(ErrorKind::overflow, "series_mul");
        }
      }
    }
  });
}

// Integers x with Q(x, y) <= limit, as a closed range; empty if first > second.
std::pair<std::int64_t, std::int64_t> x_range(const BinaryQuadraticForm& q, std::int64_t y,
                                              std::int64_t limit) {
  if (limit < 0) return {1, 0};
  const std::int64_t disc = 4 * q.a * limit + q.discriminant() * y * y;
  if (disc < 0) return {1, 0};
  const double root = std::sqrt(static_cast<double>(disc));
  const double centre = -static_cast<double>(q.b * y);
  auto lo = static_cast<std::int64_t>(std::ceil((centre - root) / (2.0 * q.a)));
  auto hi = static_cast<std::int64_t>(std::floor((centre + root) / (2.0 * q.a)));
  while (q(lo - 1, y) <= limit) --lo;
  while (lo <= hi && q(lo, y) > limit) ++lo;
  while (q(hi + 1, y) <= limit) ++hi;
  while (hi >= lo && q(hi, y) > limit) --hi;
  return {lo, hi};
}

}  // namespace

PowerSeries::PowerSeries(std::int64_t bound) : bound_(bound) {
  check_bound(bound);
  coeffs_.assign(static_cast<std::size_t>(bound + 1), 0);
}

PowerSeries::PowerSeries(std::int64_t bound, std::vector<std::int64_t> coeffs)
    : bound_(bound), coeffs_(std::move(coeffs)) {
  check_bound(bound);
  if (coeffs_.size() != static_cast<std::size_t>(bound + 1)) {
    throw Error(ErrorKind::dimension, "coefficient count must be bound + 1");
  }
}

std::size_t PowerSeries::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](std::int64_t v) { return v != 0; }));
}

PowerSeries theta_binary(const BinaryQuadraticForm& form, std::int64_t bound, unsigned threads) {
  if (!form.positive_definite()) throw Error(ErrorKind::invalid_form, "form is not positive definite");
  check_bound(bound);
  PowerSeries out(bound);
  auto* c = out.coeffs().data();
  const std::int64_t absd = -form.discriminant();
  const std::int64_t ymax = isqrt(4 * form.a * bound / absd) + 1;

  // Each slice owns an output range [lo, hi) and visits every row y.
  parallel_slices(bound + 1, threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t y = -ymax; y <= ymax; ++y) {
      const auto [x1, x2] = x_range(form, y, hi - 1);
      if (x1 > x2) continue;
      const auto [x3, x4] = x_range(form, y, lo - 1);
      const auto visit = [&](std::int64_t from, std::int64_t to) {
        for (std::int64_t x = from; x <= to; ++x) ++c[form(x, y)];
      };
      if (x3 > x4) {
        visit(x1, x2);
      } else {
        visit(x1, x3 - 1);
        visit(x4 + 1, x2);
      }
    }
  });
  return out;
}

PowerSeries theta_unary(std::int64_t t, std::int64_t bound) {
  if (t < 1) throw Error(ErrorKind::domain, "unary theta needs t >= 1");
  PowerSeries out(bound);
  if (bound >= 0) out[0] = 1;
  for (std::int64_t n = 1; t * n * n <= bound; ++n) out[t * n * n] = 2;
  return out;
}

PowerSeries series_sub(const PowerSeries& lhs, const PowerSeries& rhs) {
  if (lhs.bound() != rhs.bound()) throw Error(ErrorKind::dimension, "series bounds differ");
  PowerSeries out(lhs.bound());
  for (std::int64_t m = 0; m <= lhs.bound(); ++m) {
    if (__builtin_sub_overflow(lhs[m], rhs[m], &out[m])) {
      throw Error(ErrorKind::overflow, "series_sub");
    }
  }
  return out;
}

PowerSeries series_scale(const PowerSeries& s, std::int64_t c) {
  PowerSeries out(s.bound());
  for (std::int64_t m = 0; m <= s.bound(); ++m) {
    if (__builtin_mul_overflow(s[m], c, &out[m])) throw Error(ErrorKind::overflow, "series_scale");
  }
  return out;
}

PowerSeries series_mul(const PowerSeries& lhs, const PowerSeries& rhs, unsigned threads) {
  if (lhs.bound() != rhs.bound()) throw Error(ErrorKind::dimension, "series bounds differ");
  const std::int64_t bound = lhs.bound();
  // Convolution is driven by the nonzero terms of the sparser factor.
  const bool lhs_sparse = lhs.nonzero_count() <= rhs.nonzero_count();
  const PowerSeries& sparse = lhs_sparse ? lhs : rhs;
  const PowerSeries& dense = lhs_sparse ? rhs : lhs;

  Terms terms;
  i128 weight = 0;
  for (std::int64_t j = 0; j <= bound; ++j) {
    if (sparse[j] != 0) {
      terms.emplace_back(j, sparse[j]);
      weight += std::llabs(sparse[j]);
    }
  }
  i128 peak = 0;
  for (auto v : dense.coeffs()) peak = std::max<i128>(peak, std::llabs(v));
  const bool safe = peak * weight <= kMax;

  PowerSeries out(bound);
  const bool fits32 = peak * weight <= std::numeric_limits<std::int32_t>::max();
  if (fits32 && peak <= std::numeric_limits<std::int16_t>::max()) {
    // The kernel is bandwidth bound; narrow copies cut memory traffic.
    const std::vector<std::int16_t> narrow(dense.coeffs().begin(), dense.coeffs().end());
    sparse_dense_kernel<std::int32_t>(narrow.data(), terms, out.coeffs().data(), bound, threads);
  } else if (fits32) {
    const std::vector<std::int32_t> narrow(dense.coeffs().begin(), dense.coeffs().end());
    sparse_dense_kernel<std::int32_t>(narrow.data(), terms, out.coeffs().data(), bound, threads);
  } else if (safe) {
    sparse_dense_kernel<std::int64_t>(dense.coeffs().data(), terms, out.coeffs().data(), bound, threads);
  } else {
    checked_kernel(dense.coeffs().data(), terms, out.coeffs().data(), bound, threads);
  }
  return out;
}

PowerSeries build_F(const ThetaRecipe& recipe, std::int64_t bound, unsigned threads) {
  if (recipe.terms.empty()) throw Error(ErrorKind::invalid_form, "recipe has no terms");
  PowerSeries acc(bound);
  for (const auto& [sign, form] : recipe.terms) {
    const PowerSeries th = theta_binary(form, bound, threads);
    auto& a = acc.coeffs();
    for (std::int64_t m = 0; m <= bound; ++m) a[static_cast<std::size_t>(m)] += sign * th[m];
  }
  return series_mul(acc, theta_unary(recipe.unary_t, bound), threads);
}

PowerSeries naive_F(const ThetaRecipe& recipe, std::int64_t bound) {
  PowerSeries out(bound);
  const std::int64_t t = recipe.unary_t;
  for (const auto& [sign, q] : recipe.terms) {
    if (!q.positive_definite()) throw Error(ErrorKind::invalid_form, "form is not positive definite");
    // Exact extent of the ellipse Q <= bound in each coordinate.
    const std::int64_t bx = isqrt(4 * q.c * bound / -q.discriminant()) + 1;
    const std::int64_t by = isqrt(4 * q.a * bound / -q.discriminant()) + 1;
    for (std::int64_t x = -bx; x <= bx; ++x) {
      for (std::int64_t y = -by; y <= by; ++y) {
        const std::int64_t v = q(x, y);
        if (v > bound) continue;
        for (std::int64_t z = -isqrt((bound - v) / t); z <= isqrt((bound - v) / t); ++z) {
          out[v + t * z * z] += sign;
        }
      }
    }
  }
  return out;
}

}  // namespace selmer

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace selmer {

struct BinaryQuadraticForm {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 1;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool positive_definite() const { return a > 0 && discriminant() < 0; }
  std::int64_t operator()(std::int64_t x, std::int64_t y) const {
    return a * x * x + b * x * y + c * y * y;
  }
};

// Dense truncated q-expansion; coefficient m sits at index m, 0 <= m <= bound.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::int64_t bound);
  PowerSeries(std::int64_t bound, std::vector<std::int64_t> coeffs);

  std::int64_t bound() const { return bound_; }
  std::int64_t operator[](std::int64_t m) const { return coeffs_[static_cast<std::size_t>(m)]; }
  std::int64_t& operator[](std::int64_t m) { return coeffs_[static_cast<std::size_t>(m)]; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::vector<std::int64_t>& coeffs() { return coeffs_; }
  std::size_t nonzero_count() const;

  bool operator==(const PowerSeries&) const = default;

 private:
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> coeffs_;
};

struct ThetaRecipe {
  std::vector<std::pair<int, BinaryQuadraticForm>> terms;  // (sign, form)
  std::int64_t unary_t = 1;
};

PowerSeries theta_binary(const BinaryQuadraticForm& form, std::int64_t bound,
                         unsigned threads = 1);
PowerSeries theta_unary(std::int64_t t, std::int64_t bound);
PowerSeries series_sub(const PowerSeries& lhs, const PowerSeries& rhs);
PowerSeries series_mul(const PowerSeries& lhs, const PowerSeries& rhs, unsigned threads = 1);
PowerSeries series_scale(const PowerSeries& s, std::int64_t c);
PowerSeries build_F(const ThetaRecipe& recipe, std::int64_t bound, unsigned threads = 1);

// Brute-force reference: scans the box |x| <= sqrt(bound/a)+1, |y| <= sqrt(bound/c)+1
// and each unary term separately. Quadratic in bound; meant for tests only.
PowerSeries naive_F(const ThetaRecipe& recipe, std::int64_t bound);

}  // namespace selmer

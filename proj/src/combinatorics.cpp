#include "isingcorr/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isingcorr/error.hpp"

namespace isingcorr {

using cplx = std::complex<double>;

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

// Parts are generated with strictly decreasing cycle length, then sorted.
void enumerate(int remaining, int max_len, std::vector<std::pair<int, int>>& acc,
               std::vector<Partition>& out) {
  if (remaining == 0) {
    Partition p{acc};
    std::sort(p.parts.begin(), p.parts.end());
    out.push_back(std::move(p));
    return;
  }
  for (int len = std::min(remaining, max_len); len >= 1; --len) {
    for (int count = remaining / len; count >= 1; --count) {
      acc.emplace_back(len, count);
      enumerate(remaining - len * count, len - 1, acc, out);
      acc.pop_back();
    }
  }
}

void check_points(std::span<const cplx> pts, const char* what) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) < 1e-12) throw Error(ErrorCode::DegeneratePoints, what);
    }
  }
}

}  // namespace

int Partition::total() const noexcept {
  int n = 0;
  for (const auto& [len, count] : parts) n += len * count;
  return n;
}

std::vector<Partition> partitions(int n) {
  if (n < 1 || n > kMaxPartitionOrder) {
    throw Error(ErrorCode::InvalidArgument, "partitions are enumerated for 1 <= n <= 8");
  }
  std::vector<Partition> out;
  std::vector<std::pair<int, int>> acc;
  enumerate(n, n, acc, out);
  return out;
}

Rational multiplicity(const Partition& p) {
  std::int64_t den = 1;
  for (const auto& [len, count] : p.parts) {
    for (int i = 0; i < count; ++i) den *= len;
    den *= factorial(count);
  }
  return reduced(factorial(p.total()), den);
}

Rational exponential_weight(const Partition& p) {
  std::int64_t den = 1;
  for (const auto& [len, count] : p.parts) den *= factorial(count);
  return {1, den};
}

int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

double form_factor_from_exponential(std::span<const double> F, int n) {
  if (n == 0) return 1.0;
  if (static_cast<int>(F.size()) <= n) {
    throw Error(ErrorCode::InvalidArgument, "need F[1..n]");
  }
  double total = 0.0;
  for (const Partition& p : partitions(n)) {
    double term = exponential_weight(p).value();
    for (const auto& [len, count] : p.parts) term *= std::pow(F[len], count);
    total += term;
  }
  return total;
}

double cauchy_identity_residual(std::span<const cplx> odd, std::span<const cplx> even,
                                IdentityVariant variant) {
  const int n = static_cast<int>(even.size());
  const int n_odd = static_cast<int>(odd.size());
  const bool above = variant == IdentityVariant::Above;
  if (n_odd != (above ? n + 1 : n) || n_odd < 1) {
    throw Error(ErrorCode::InvalidArgument, "point counts do not match the identity variant");
  }
  check_points(odd, "odd points coincide");
  check_points(even, "even points coincide");
  for (const cplx& x : odd) {
    if (above && std::abs(x) < 1e-300) throw Error(ErrorCode::DegeneratePoints, "x = 0");
    for (const cplx& y : even) {
      if (std::abs(1.0 - x * y) < 1e-12) throw Error(ErrorCode::DegeneratePoints, "x y = 1");
    }
  }

  // The alternating sum cancels heavily when points are close; both sides are
  // accumulated in extended precision so the residual measures the identity,
  // not the rounding.
  using wide = std::complex<long double>;
  auto w = [](cplx z) { return wide(z.real(), z.imag()); };
  std::vector<int> perm(n_odd);
  std::iota(perm.begin(), perm.end(), 0);
  wide sum = 0.0L;
  do {
    wide term = static_cast<long double>(permutation_sign(perm));
    for (int q = 0; q < n; ++q) term /= 1.0L - w(odd[perm[q]]) * w(even[q]);
    if (above) term /= w(odd[perm[n]]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  wide closed = 1.0L;
  for (const cplx& x : odd) {
    if (above) closed /= w(x);
    for (const cplx& y : even) closed /= 1.0L - w(x) * w(y);
  }
  for (int p = 0; p < n_odd; ++p) {
    for (int q = p + 1; q < n_odd; ++q) closed *= w(odd[p]) - w(odd[q]);
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) closed *= w(even[p]) - w(even[q]);
  }
  return static_cast<double>(std::abs(sum - closed) / std::abs(closed));
}

}  // namespace isingcorr

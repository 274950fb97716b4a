#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace isingcorr {

/// Cycle type {(n_i, m_i)}: m_i cycles of length n_i, n_i distinct, sorted by n_i.
struct Partition {
  std::vector<std::pair<int, int>> parts;

  int nu() const noexcept { return static_cast<int>(parts.size()); }
  int total() const noexcept;

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

inline constexpr int kMaxPartitionOrder = 8;

/// All partitions of n (1 <= n <= 8).
std::vector<Partition> partitions(int n);

/// Number of permutations with this cycle type: n! / prod n_i^{m_i} m_i!.
Rational multiplicity(const Partition& p);

/// Weight of the partition in the expansion of an exponential: prod 1/m_i!.
Rational exponential_weight(const Partition& p);

/// Sign of a permutation of {0..n-1}.
int permutation_sign(std::span<const int> perm);

/// Grade-n coefficient of exp(sum_k lambda^k F[k]), with F[0] ignored.
double form_factor_from_exponential(std::span<const double> F, int n);

enum class IdentityVariant { Below, Above };

/// Relative residual |permutation sum - closed product| / |closed product|.
///
/// Below: n odd and n even points,
///   sum_s sign(s) prod_k 1/(1 - y_k x_s(k))
///     = prod_{k,l} 1/(1 - x_k y_l) prod_{p<q} (x_p - x_q)(y_p - y_q).
/// Above: n+1 odd and n even points,
///   sum_s sign(s) (1/x_s(n+1)) prod_q 1/(1 - x_s(q) y_q)
///     = prod_j 1/x_j prod_{j,k} 1/(1 - x_j y_k) prod_{l<m} (x_l - x_m) prod_{p<q} (y_p - y_q).
double cauchy_identity_residual(std::span<const std::complex<double>> odd,
                                std::span<const std::complex<double>> even,
                                IdentityVariant variant);

}  // namespace isingcorr

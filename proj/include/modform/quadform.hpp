#pragma once

// Positive definite integral quadratic forms Q(x) = ½ xᵀAx with A even,
// their representation numbers and theta series.

#include <cstdint>
#include <string>
#include <vector>

#include "modform/modforms.hpp"

namespace modform {

class GramMatrix {
 public:
  /// Validates symmetry, even diagonal and positive definiteness.
  static GramMatrix make(std::vector<std::vector<long>> entries);
  static GramMatrix from_json(const nlohmann::json& j);
  static GramMatrix load(const std::string& path);
  /// "e8", "e8e8" / "e8+e8", "d16plus"; anything else is read as a file.
  static GramMatrix named_or_file(const std::string& spec);

  static GramMatrix e8();
  static GramMatrix e8_e8();
  static GramMatrix d16_plus();

  int dim() const { return static_cast<int>(a_.size()); }
  long at(int i, int j) const { return a_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  const std::vector<std::vector<long>>& entries() const { return a_; }

  Integer determinant() const;
  /// Even unimodular: det A = 1 (which forces dim ≡ 0 mod 8).
  bool level_one() const;
  long weight() const { return dim() / 2; }

  /// Q(x) = ½ xᵀ A x.
  long value(const std::vector<long>& x) const;

  /// Connected components of the graph of nonzero off-diagonal entries.
  std::vector<GramMatrix> orthogonal_blocks() const;

  nlohmann::json to_json() const;
  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::vector<std::vector<long>> a_;
};

/// r_Q(n) for 0 <= n <= n_max by Fincke–Pohst enumeration.
std::vector<std::uint64_t> representation_counts(const GramMatrix& q, long n_max);
Integer rep_count(const GramMatrix& q, long n);

/// Total lattice points enumerated so far in this process (diagnostic).
std::uint64_t enumerated_points_total();

inline constexpr std::uint64_t kDefaultPointBudget = 400'000'000ULL;

struct ThetaSeries {
  GramMatrix gram;
  RatSeries series;
  long weight = 0;
  /// Coefficients 0..enumerated_through are direct enumeration counts;
  /// the remainder comes from the unique form of M_{d/2} they determine.
  long enumerated_through = 0;
};

/// 1 + Σ r_Q(n) qⁿ to precision prec for a level-one form. Orthogonal
/// summands are enumerated separately and multiplied. A single block is
/// enumerated as far as `point_budget` lattice points allow and verified
/// against (then extended by) the Miller-basis solution in M_{d/2}.
ThetaSeries theta_series(const GramMatrix& q, long prec, std::uint64_t point_budget = kDefaultPointBudget);

/// The form in M_k with q-expansion starting `leading` (length dim M_k).
RatSeries theta_from_leading(long weight, const std::vector<Integer>& leading, long prec);

}  // namespace modform

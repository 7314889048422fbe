#include "modform/quadform.hpp"

#include <atomic>
#include <cmath>
#include <algorithm>
#include <fstream>
#include <numeric>

#include "modform/linalg.hpp"

namespace modform {

namespace {

std::atomic<std::uint64_t> g_points_enumerated{0};

// Q(x) = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)^2 for Q = ½ xᵀAx.
std::vector<std::vector<Rational>> cholesky_form(const std::vector<std::vector<long>>& a) {
  const size_t n = a.size();
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      q[i][j] = Rational(a[i][j], 2);
      q[i][j].canonicalize();
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (sgn(q[i][i]) <= 0) throw Error(Errc::domain, "quadratic form is not positive definite");
    for (size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (size_t k = i + 1; k < n; ++k) {
      for (size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }
  return q;
}

class Enumerator {
 public:
  Enumerator(const GramMatrix& g, long n_max, std::vector<std::uint64_t>& hist)
      : a_(g.entries()), d_(g.dim()), n_max_(n_max), hist_(hist) {
    const auto q = cholesky_form(a_);
    diag_.resize(static_cast<size_t>(d_));
    mu_.assign(static_cast<size_t>(d_), std::vector<double>(static_cast<size_t>(d_), 0.0));
    for (int i = 0; i < d_; ++i) {
      diag_[static_cast<size_t>(i)] = q[static_cast<size_t>(i)][static_cast<size_t>(i)].get_d();
      for (int j = i + 1; j < d_; ++j) {
        mu_[static_cast<size_t>(i)][static_cast<size_t>(j)] = q[static_cast<size_t>(i)][static_cast<size_t>(j)].get_d();
      }
    }
    x_.assign(static_cast<size_t>(d_), 0);
    lin_.assign(static_cast<size_t>(d_), 0);
  }

  void run() { level(d_ - 1, 0, 0.0, true, 1); }
  std::uint64_t points() const { return points_; }

 private:
  // Choose x_i with x_{i+1..} fixed. `value` is Q at the partial vector
  // (lower coordinates zero), lin_[j] = Σ_{l>i} A[j][l] x_l, `used` is the
  // part of the Cholesky sum already committed. While every higher
  // coordinate is zero only x_i >= 0 is visited and x_i > 0 counts twice
  // (x and -x).
  void level(int i, long value, double used, bool zero_prefix, std::uint64_t weight) {
    const size_t ui = static_cast<size_t>(i);
    if (i == 0) {
      innermost(value, zero_prefix, weight);
      return;
    }
    double center = 0.0;
    for (int j = i + 1; j < d_; ++j) center -= mu_[ui][static_cast<size_t>(j)] * static_cast<double>(x_[static_cast<size_t>(j)]);
    const double room = (static_cast<double>(n_max_) - used) / diag_[ui];
    if (room < -1e-9) return;
    // Widened so rounding can only admit extra candidates; the innermost
    // level decides membership exactly.
    const double radius = std::sqrt(std::max(room, 0.0)) + 1e-6;
    long lo = static_cast<long>(std::ceil(center - radius));
    const long hi = static_cast<long>(std::floor(center + radius));
    if (zero_prefix) lo = std::max(lo, 0L);
    const long half_diag = a_[ui][ui] / 2;
    for (long t = lo; t <= hi; ++t) {
      const double dev = static_cast<double>(t) - center;
      const double next_used = used + diag_[ui] * dev * dev;
      const long next_value = value + t * lin_[ui] + half_diag * t * t;
      for (int j = 0; j < i; ++j) lin_[static_cast<size_t>(j)] += a_[static_cast<size_t>(j)][ui] * t;
      x_[ui] = t;
      const bool still_zero = zero_prefix && t == 0;
      const std::uint64_t w = (zero_prefix && t > 0) ? 2 : weight;
      level(i - 1, next_value, next_used, still_zero, w);
      for (int j = 0; j < i; ++j) lin_[static_cast<size_t>(j)] -= a_[static_cast<size_t>(j)][ui] * t;
    }
    x_[ui] = 0;
  }

  // Q = value + b t + a t^2 in x_0 = t; count every t with Q <= n_max.
  void innermost(long value, bool zero_prefix, std::uint64_t weight) {
    const long a = a_[0][0] / 2;
    const long b = lin_[0];
    const long c = value - n_max_;
    auto inside = [&](long t) { return a * t * t + b * t + c <= 0; };
    const __int128 disc = static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c;
    if (disc < 0) return;
    const long s = static_cast<long>(std::sqrt(static_cast<double>(disc)));
    long lo = static_cast<long>(std::floor((-b - s) / (2.0 * a)));
    long hi = static_cast<long>(std::ceil((-b + s) / (2.0 * a)));
    while (inside(lo - 1)) --lo;
    while (lo <= hi && !inside(lo)) ++lo;
    while (inside(hi + 1)) ++hi;
    while (hi >= lo && !inside(hi)) --hi;
    if (lo > hi) return;
    if (zero_prefix) {
      // Only x_0 >= 0 here; x_0 = 0 is the zero vector.
      if (hi < 0) return;
      lo = std::max(lo, 0L);
      if (lo == 0) {
        hist_[static_cast<size_t>(value)] += 1;
        ++points_;
        lo = 1;
      }
      weight = 2;
    }
    long q = value + b * lo + a * lo * lo;
    long step = b + a * (2 * lo + 1);
    for (long t = lo; t <= hi; ++t) {
      hist_[static_cast<size_t>(q)] += weight;
      q += step;
      step += 2 * a;
    }
    points_ += static_cast<std::uint64_t>(hi - lo + 1) * weight;
  }

  const std::vector<std::vector<long>>& a_;
  int d_;
  long n_max_;
  std::vector<std::uint64_t>& hist_;
  std::vector<double> diag_;
  std::vector<std::vector<double>> mu_;
  std::vector<long> x_;
  std::vector<long> lin_;
  std::uint64_t points_ = 0;
};

std::vector<std::vector<long>> parse_rows(const nlohmann::json& rows) {
  std::vector<std::vector<long>> out;
  for (const auto& row : rows) {
    std::vector<long> r;
    for (const auto& v : row) r.push_back(v.get<long>());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

GramMatrix GramMatrix::make(std::vector<std::vector<long>> entries) {
  const size_t n = entries.size();
  if (n == 0) throw Error(Errc::invalid_argument, "empty Gram matrix");
  for (size_t i = 0; i < n; ++i) {
    if (entries[i].size() != n) throw Error(Errc::invalid_argument, "Gram matrix is not square");
    if (entries[i][i] % 2 != 0) throw Error(Errc::domain, "Gram matrix diagonal must be even");
    for (size_t j = 0; j < i; ++j) {
      if (entries[i][j] != entries[j][i]) throw Error(Errc::domain, "Gram matrix is not symmetric");
    }
  }
  cholesky_form(entries);  // throws unless positive definite
  GramMatrix g;
  g.a_ = std::move(entries);
  return g;
}

GramMatrix GramMatrix::from_json(const nlohmann::json& j) {
  if (!j.contains("gram")) throw Error(Errc::parse, "Gram matrix JSON needs a 'gram' array");
  GramMatrix g = make(parse_rows(j["gram"]));
  if (j.contains("d") && j["d"].get<int>() != g.dim()) {
    throw Error(Errc::parse, "Gram matrix JSON 'd' disagrees with the matrix size");
  }
  return g;
}

GramMatrix GramMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open Gram matrix file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, "invalid JSON in '" + path + "': " + e.what());
  }
  return from_json(j);
}

GramMatrix GramMatrix::named_or_file(const std::string& spec) {
  if (spec == "e8") return e8();
  if (spec == "e8e8" || spec == "e8+e8") return e8_e8();
  if (spec == "d16plus" || spec == "d16+") return d16_plus();
  return load(spec);
}

GramMatrix GramMatrix::e8() {
  // Cartan matrix, Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
  std::vector<std::vector<long>> a(8, std::vector<long>(8, 0));
  for (int i = 0; i < 8; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
  const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (const auto& e : edges) {
    a[static_cast<size_t>(e[0])][static_cast<size_t>(e[1])] = -1;
    a[static_cast<size_t>(e[1])][static_cast<size_t>(e[0])] = -1;
  }
  return make(std::move(a));
}

GramMatrix GramMatrix::e8_e8() {
  const auto e = e8().entries();
  std::vector<std::vector<long>> a(16, std::vector<long>(16, 0));
  for (size_t i = 0; i < 8; ++i) {
    for (size_t j = 0; j < 8; ++j) {
      a[i][j] = e[i][j];
      a[i + 8][j + 8] = e[i][j];
    }
  }
  return make(std::move(a));
}

GramMatrix GramMatrix::d16_plus() {
  // Basis of D16 ∪ (D16 + (½)^16): the glue vector and fifteen vectors
  // of the form e_1 + e_i, written as inner products.
  std::vector<std::vector<long>> a(16, std::vector<long>(16, 1));
  a[0][0] = 4;
  for (size_t i = 1; i < 15; ++i) {
    a[0][i] = a[i][0] = 2;
    a[i][i] = 2;
  }
  a[15][15] = 4;
  return make(std::move(a));
}

Integer GramMatrix::determinant() const {
  Matrix<Rational> m;
  for (const auto& row : a_) {
    std::vector<Rational> r;
    for (long v : row) r.emplace_back(v);
    m.push_back(std::move(r));
  }
  Rational det = modform::determinant(std::move(m));
  return det.get_num();
}

bool GramMatrix::level_one() const { return determinant() == 1 && dim() % 8 == 0; }

long GramMatrix::value(const std::vector<long>& x) const {
  if (static_cast<int>(x.size()) != dim()) throw Error(Errc::invalid_argument, "vector length mismatch");
  long twice = 0;
  for (size_t i = 0; i < a_.size(); ++i) {
    for (size_t j = 0; j < a_.size(); ++j) twice += x[i] * a_[i][j] * x[j];
  }
  return twice / 2;
}

std::vector<GramMatrix> GramMatrix::orthogonal_blocks() const {
  const size_t n = a_.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (a_[i][j] != 0) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<size_t>> groups;
  std::vector<long> slot(n, -1);
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<size_t>(slot[r])].push_back(i);
  }
  std::vector<GramMatrix> out;
  for (const auto& g : groups) {
    std::vector<std::vector<long>> b(g.size(), std::vector<long>(g.size()));
    for (size_t i = 0; i < g.size(); ++i) {
      for (size_t j = 0; j < g.size(); ++j) b[i][j] = a_[g[i]][g[j]];
    }
    out.push_back(make(std::move(b)));
  }
  return out;
}

nlohmann::json GramMatrix::to_json() const {
  return nlohmann::json{{"d", dim()}, {"gram", a_}};
}

std::vector<std::uint64_t> representation_counts(const GramMatrix& q, long n_max) {
  if (n_max < 0) throw Error(Errc::invalid_argument, "n must be non-negative");
  std::vector<std::uint64_t> hist(static_cast<size_t>(n_max + 1), 0);
  Enumerator e(q, n_max, hist);
  e.run();
  g_points_enumerated += e.points();
  return hist;
}

Integer rep_count(const GramMatrix& q, long n) {
  const auto counts = representation_counts(q, n);
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &counts[static_cast<size_t>(n)]);
  return out;
}

std::uint64_t enumerated_points_total() { return g_points_enumerated.load(); }

namespace {

Integer to_integer(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

ThetaSeries theta_single_block(const GramMatrix& q, long prec, std::uint64_t budget) {
  if (!q.level_one()) {
    throw Error(Errc::not_modular, "theta series of a non-level-one form (det != 1) is not in M_{d/2}");
  }
  const long k = q.weight();
  const long dim = dim_Mk(k);
  const long n0 = std::min(prec, dim - 1);
  const auto head = representation_counts(q, n0);
  std::vector<Integer> leading;
  for (long n = 0; n < dim; ++n) leading.push_back(n <= n0 ? to_integer(head[static_cast<size_t>(n)]) : Integer(0));
  const RatSeries predicted = theta_from_leading(k, leading, std::max(prec, dim - 1));

  // Enumerate as far as the predicted point count allows.
  long n_enum = n0;
  Rational cumulative = 0;
  for (long n = 0; n <= prec; ++n) {
    cumulative += predicted.coefficient(n);
    if (cumulative > Rational(Integer(std::to_string(budget)))) break;
    n_enum = std::max(n_enum, n);
  }
  const auto counts = representation_counts(q, n_enum);

  std::vector<Rational> coeffs;
  for (long n = 0; n <= prec; ++n) {
    const Rational p = predicted.coefficient(n);
    if (n <= n_enum) {
      const Rational c(to_integer(counts[static_cast<size_t>(n)]));
      if (c != p) {
        throw Error(Errc::not_modular, "enumerated r_Q(" + std::to_string(n) + ") = " + to_string(c) +
                                           " is not the coefficient of a form in M_" + std::to_string(k) +
                                           " (expected " + to_string(p) + ")");
      }
      coeffs.push_back(c);
    } else {
      if (p.get_den() != 1 || sgn(p) < 0 || mpz_odd_p(p.get_num_mpz_t())) {
        throw Error(Errc::not_modular, "modular extension produced an invalid representation number");
      }
      coeffs.push_back(p);
    }
  }
  ThetaSeries out{q, RatSeries(0, std::move(coeffs)), k, n_enum};
  return out;
}

}  // namespace

RatSeries theta_from_leading(long weight, const std::vector<Integer>& leading, long prec) {
  const auto basis = miller_basis(weight, prec);
  if (leading.size() != basis.size()) {
    throw Error(Errc::invalid_argument, "need exactly dim M_k = " + std::to_string(basis.size()) +
                                            " leading coefficients for weight " + std::to_string(weight));
  }
  RatSeries out = RatSeries::zero(Rational(0), prec);
  for (size_t i = 0; i < basis.size(); ++i) {
    out = series_add(out, basis[i].series * Rational(leading[i]));
  }
  return out;
}

ThetaSeries theta_series(const GramMatrix& q, long prec, std::uint64_t point_budget) {
  if (prec < 0) throw Error(Errc::precision, "negative precision");
  if (!q.level_one()) {
    throw Error(Errc::not_modular, "Gram matrix is not level one (even unimodular)");
  }
  const auto blocks = q.orthogonal_blocks();
  if (blocks.size() == 1) return theta_single_block(q, prec, point_budget);

  std::vector<std::pair<GramMatrix, ThetaSeries>> memo;
  RatSeries product = RatSeries::constant(Rational(1), prec);
  long enumerated = prec;
  for (const auto& b : blocks) {
    auto it = std::find_if(memo.begin(), memo.end(), [&](const auto& e) { return e.first == b; });
    if (it == memo.end()) {
      memo.emplace_back(b, theta_series(b, prec, point_budget));
      it = std::prev(memo.end());
    }
    product = series_mul(product, it->second.series);
    enumerated = std::min(enumerated, it->second.enumerated_through);
  }
  return ThetaSeries{q, product.truncated(prec), q.weight(), enumerated};
}

}  // namespace modform

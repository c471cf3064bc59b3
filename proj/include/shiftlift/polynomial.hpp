#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftlift/graph.hpp"

namespace shiftlift {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Relative tolerance below which an imaginary coefficient part counts as 0.
inline constexpr double kCoefficientTolerance = 1e-9;
/// Default realness tolerance for roots.
inline constexpr double kRootTolerance = 1e-9;

/// Dense univariate polynomial with complex coefficients, ascending degree.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> ascending)
      : c_(std::move(ascending)) {
    trim_exact();
  }

  static Polynomial from_real(std::span<const double> ascending) {
    return Polynomial(std::vector<Complex>(ascending.begin(), ascending.end()));
  }
  static Polynomial from_real(std::initializer_list<double> ascending) {
    return Polynomial(std::vector<Complex>(ascending.begin(), ascending.end()));
  }
  static Polynomial monomial(int degree, Complex coeff = 1.0) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  const std::vector<Complex>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of x^i (zero beyond the degree).
  Complex operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Complex{};
  }
  Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
  }

  Complex operator()(Complex x) const {
    Complex acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Every imaginary part within tol * max|coefficient|.
  bool is_real(double tol = kCoefficientTolerance) const {
    const double bound = tol * max_abs_coefficient();
    return std::all_of(c_.begin(), c_.end(),
                       [&](const Complex& z) { return std::abs(z.imag()) <= bound; });
  }

  std::vector<double> real_coefficients() const {
    std::vector<double> out(c_.size());
    std::transform(c_.begin(), c_.end(), out.begin(),
                   [](const Complex& z) { return z.real(); });
    return out;
  }

  /// Drops high-order coefficients with magnitude <= tol * max|coefficient|.
  Polynomial trimmed(double tol) const {
    const double bound = tol * max_abs_coefficient();
    std::vector<Complex> c = c_;
    while (!c.empty() && std::abs(c.back()) <= bound) c.pop_back();
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim_exact();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim_exact();
    return *this;
  }
  Polynomial& operator*=(Complex s) {
    for (auto& z : c_) z *= s;
    trim_exact();
    return *this;
  }
  Polynomial& operator/=(Complex s) {
    for (auto& z : c_) z /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, Complex s) { return a /= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim_exact() {
    while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
  }

  std::vector<Complex> c_;
};

/// max_i |a_i - b_i| over the union of supports.
inline double max_coefficient_residual(const Polynomial& a, const Polynomial& b) {
  const int top = std::max(a.degree(), b.degree());
  double r = 0.0;
  for (int i = 0; i <= top; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// --- characteristic polynomial ----------------------------------------------

/// det(xI - mat) by the Samuelson-Berkowitz recurrence (division free).
inline Polynomial char_poly(const ComplexMatrix& mat) {
  if (mat.rows() != mat.cols())
    throw InputError("char_poly: matrix must be square");
  const Eigen::Index n = mat.rows();

  // Descending coefficients of the char poly of the leading r x r block.
  std::vector<Complex> desc{1.0};
  Eigen::VectorXcd col, power;
  for (Eigen::Index r = 0; r < n; ++r) {
    // Block is [[A_r, C], [R, a]] with A_r the leading r x r submatrix.
    std::vector<Complex> q(static_cast<std::size_t>(r) + 2);
    q[0] = 1.0;
    q[1] = -mat(r, r);
    if (r > 0) {
      const auto A = mat.topLeftCorner(r, r);
      const auto R = mat.row(r).head(r);
      power = mat.col(r).head(r);
      for (Eigen::Index j = 2; j <= r + 1; ++j) {
        q[j] = -(R * power)(0, 0);
        if (j <= r) {
          col = A * power;
          power.swap(col);
        }
      }
    }
    std::vector<Complex> next(static_cast<std::size_t>(r) + 2, 0.0);
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j <= std::min(i, desc.size() - 1); ++j)
        next[i] += q[i - j] * desc[j];
    desc = std::move(next);
  }
  return Polynomial(std::vector<Complex>(desc.rbegin(), desc.rend()));
}

// --- roots -------------------------------------------------------------------

namespace detail {

// Parlett-Reinsch style diagonal scaling by powers of two; leaves the
// spectrum unchanged and improves the conditioning of companion matrices.
inline void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double kGamma = 0.95;
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = a.row(i).lpNorm<1>() - std::abs(a(i, i));
      const double col = a.col(i).lpNorm<1>() - std::abs(a(i, i));
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double new_col = std::ldexp(col, exponent);
      const double new_row = std::ldexp(row, -exponent);
      if (new_col + new_row < kGamma * (col + row)) {
        a.col(i) *= std::ldexp(1.0, exponent);
        a.row(i) *= std::ldexp(1.0, -exponent);
        changed = true;
      }
    }
  }
}

// Zero coefficients at or below this fraction of the largest one are snapped
// to zero before root extraction, so exact roots at the origin stay exact.
inline constexpr double kZeroSnap = 1e-13;

// Backward error assumed for computed coefficients; a cluster of r roots
// that is really one real root of multiplicity r spreads by about eta^(1/r).
inline constexpr double kClusterBackwardError = 1e-13;
inline constexpr double kClusterLinkRadius = 1e-2;

}  // namespace detail

/// All complex roots (with multiplicity) via companion-matrix eigenvalues.
inline std::vector<Complex> roots(const Polynomial& p) {
  if (p.degree() < 1) return {};
  const double scale = p.max_abs_coefficient();
  std::vector<Complex> c = p.coefficients();
  for (auto& z : c)
    if (std::abs(z) <= detail::kZeroSnap * scale) z = 0.0;

  std::vector<Complex> out;
  std::size_t lo = 0;
  while (lo < c.size() && c[lo] == Complex{}) {
    out.emplace_back(0.0);
    ++lo;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(c.size() - 1 - lo);
  if (n == 0) return out;
  const Complex lead = c.back();

  const bool real = p.is_real();
  if (real) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      comp(i, n - 1) = -(c[lo + static_cast<std::size_t>(i)] / lead).real();
    detail::balance(comp);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  } else {
    ComplexMatrix comp = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
      comp(i, n - 1) = -c[lo + static_cast<std::size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(comp, false);
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  }
  return out;
}

/// Roots plus which of them are certified real.
struct RootSet {
  std::vector<Complex> roots;
  std::vector<bool> is_real;            // parallel to roots
  std::optional<double> max_real_root;  // largest certified-real root
  bool all_real() const {
    return std::all_of(is_real.begin(), is_real.end(), [](bool b) { return b; });
  }
};

/// Classifies the roots of p.
///
/// A root is real when |Im| <= tol * (1 + |Re|). Roots failing that test are
/// grouped with their neighbours; a group of r roots is accepted as one real
/// root of multiplicity r when its centroid passes the test and its spread is
/// consistent with the perturbation of an r-fold root. Near-degenerate
/// clusters of genuinely complex roots can therefore be misread as real.
inline RootSet root_set(const Polynomial& p, double tol = kRootTolerance) {
  RootSet rs;
  rs.roots = roots(p);
  const std::size_t n = rs.roots.size();
  rs.is_real.assign(n, false);
  auto passes = [tol](Complex z) {
    return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()));
  };

  // Single-linkage clusters.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double reach =
          detail::kClusterLinkRadius *
          (1.0 + std::max(std::abs(rs.roots[i]), std::abs(rs.roots[j])));
      if (std::abs(rs.roots[i] - rs.roots[j]) <= reach) parent[find(i)] = find(j);
    }

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

  for (const auto& members : groups) {
    if (members.empty()) continue;
    bool all_pass = true;
    Complex centroid = 0.0;
    for (auto i : members) {
      all_pass = all_pass && passes(rs.roots[i]);
      centroid += rs.roots[i];
    }
    centroid /= static_cast<double>(members.size());
    bool real_group = all_pass;
    double representative = centroid.real();
    if (!all_pass && members.size() > 1 && passes(centroid)) {
      double spread = 0.0;
      for (auto i : members) spread = std::max(spread, std::abs(rs.roots[i] - centroid));
      const double r = static_cast<double>(members.size());
      const double allowed =
          10.0 * std::pow(detail::kClusterBackwardError, 1.0 / r) *
          (1.0 + std::abs(centroid));
      real_group = spread <= allowed;
    }
    for (auto i : members) {
      // A rejected group may still hold individually real roots.
      rs.is_real[i] = real_group || passes(rs.roots[i]);
      if (!rs.is_real[i]) continue;
      const double value =
          (real_group && !all_pass) ? representative : rs.roots[i].real();
      if (!rs.max_real_root || value > *rs.max_real_root) rs.max_real_root = value;
    }
  }
  return rs;
}

namespace detail {
inline void require_real(const Polynomial& p, const char* who) {
  if (!p.is_real())
    throw InputError(std::string(who) + ": polynomial has non-real coefficients");
}
}  // namespace detail

/// Largest real root, or nullopt when p has none. p must be nonconstant and
/// real within the coefficient tolerance.
inline std::optional<double> max_real_root(const Polynomial& p,
                                           double tol = kRootTolerance) {
  detail::require_real(p, "max_real_root");
  if (p.degree() < 1) throw InputError("max_real_root: constant polynomial");
  return root_set(p, tol).max_real_root;
}

inline bool is_real_rooted(const Polynomial& p, double tol = kRootTolerance) {
  detail::require_real(p, "is_real_rooted");
  return root_set(p, tol).all_real();
}

namespace detail {
// All nonnegative integer vectors of length parts summing to total.
inline void compositions(int parts, int total, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(parts, total - a, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Weight vectors used by check_common_interlacing: the simplex lattice with
/// `samples` points per edge (vertices and pairwise segments included) plus
/// the barycenter.
inline std::vector<std::vector<double>> simplex_grid(int members, int samples) {
  std::vector<std::vector<double>> grid;
  if (members <= 0) return grid;
  const int steps = std::max(1, samples - 1);
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  detail::compositions(members, steps, cur, comps);
  for (const auto& c : comps) {
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = static_cast<double>(c[i]) / steps;
    grid.push_back(std::move(w));
  }
  grid.emplace_back(static_cast<std::size_t>(members), 1.0 / members);
  return grid;
}

/// Sampled check that every convex combination of ps is real-rooted, the
/// numeric stand-in for "has a common interlacing". A false result is a
/// counterexample; a true result is evidence, not proof.
inline bool check_common_interlacing(std::span<const Polynomial> ps, int samples,
                                     double tol = kRootTolerance) {
  if (ps.empty()) return true;
  const int deg = ps.front().degree();
  for (const auto& p : ps) {
    if (p.degree() != deg)
      throw InputError("check_common_interlacing: degree mismatch");
    detail::require_real(p, "check_common_interlacing");
    if (p.leading().real() <= 0.0)
      throw InputError("check_common_interlacing: leading coefficient must be positive");
  }
  for (const auto& w : simplex_grid(static_cast<int>(ps.size()), samples)) {
    Polynomial mix;
    for (std::size_t r = 0; r < ps.size(); ++r)
      if (w[r] != 0.0) mix += ps[r] * w[r];
    if (!is_real_rooted(mix, tol)) return false;
  }
  return true;
}

}  // namespace shiftlift

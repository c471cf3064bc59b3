#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shiftlift/digest.hpp"
#include "shiftlift/graph.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/polynomial.hpp"

namespace shiftlift {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultEpsilon = 1e-8;

/// Sorted real eigenvalues plus where they came from.
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::string source;               // "matrix", "lift", "quotient i", ...

  std::size_t size() const { return eigenvalues.size(); }
  double max_abs() const {
    double m = 0.0;
    for (double l : eigenvalues) m = std::max(m, std::abs(l));
    return m;
  }
};

/// Largest |a_ij - conj(a_ji)|.
inline double hermitian_defect(const ComplexMatrix& mat) {
  if (mat.rows() != mat.cols()) return INFINITY;
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const ComplexMatrix& mat) {
  if (mat.rows() != mat.cols()) throw InputError("hermitian_eigenvalues: matrix not square");
  if (mat.size() == 0) return;
  const double defect = hermitian_defect(mat);
  if (defect > kHermitianTolerance) {
    std::ostringstream os;
    os << "hermitian_eigenvalues: matrix is not Hermitian (max asymmetry " << defect << ")";
    throw InputError(os.str());
  }
}

inline Spectrum hermitian_eigenvalues(const ComplexMatrix& mat,
                                      std::string source = "matrix") {
  require_hermitian(mat);
  Spectrum s{{}, std::move(source)};
  if (mat.size() == 0) return s;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

/// max over eigenpairs of ||M v - lambda v|| / ||M||_F (0 for the zero matrix).
inline double max_eigen_residual(const ComplexMatrix& mat) {
  require_hermitian(mat);
  if (mat.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(mat, Eigen::ComputeEigenvectors);
  const double norm = mat.norm();
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < mat.rows(); ++j) {
    const auto v = solver.eigenvectors().col(j);
    worst = std::max(worst, (mat * v - solver.eigenvalues()(j) * v).norm() / norm);
  }
  return worst;
}

inline Spectrum quotient_spectrum(const Graph& g, const ShiftAssignment& s, int i) {
  return hermitian_eigenvalues(quotient_matrix(g, s, i).entries,
                               "quotient " + std::to_string(i));
}

/// The (k-1) n eigenvalues contributed by quotients i = 1..k-1, sorted.
inline Spectrum new_eigenvalues(const Graph& g, const ShiftAssignment& s) {
  require_matching(g, s, "new_eigenvalues");
  Spectrum out{{}, "new"};
  for (int i = 1; i < s.k(); ++i) {
    const auto part = quotient_spectrum(g, s, i);
    out.eigenvalues.insert(out.eigenvalues.end(), part.eigenvalues.begin(),
                           part.eigenvalues.end());
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

/// Cross-checks the two routes to the lift spectrum: eigensolve of the
/// expanded lift versus the union of all k quotient spectra.
inline bool verify_spectrum_union(const Graph& g, const ShiftAssignment& s,
                                  double tol = 1e-8) {
  const Spectrum lifted = hermitian_eigenvalues(adjacency_matrix(expand_lift(g, s)), "lift");
  std::vector<double> union_ev;
  for (int i = 0; i < s.k(); ++i) {
    const auto part = quotient_spectrum(g, s, i);
    union_ev.insert(union_ev.end(), part.eigenvalues.begin(), part.eigenvalues.end());
  }
  std::sort(union_ev.begin(), union_ev.end());
  if (union_ev.size() != lifted.size()) return false;
  for (std::size_t j = 0; j < union_ev.size(); ++j)
    if (std::abs(union_ev[j] - lifted.eigenvalues[j]) > tol) return false;
  return true;
}

inline double ramanujan_bound(int d) { return 2.0 * std::sqrt(static_cast<double>(d - 1)); }

/// Verdict on a base graph: its non-trivial eigenvalues against 2 sqrt(d-1).
struct BaseVerdict {
  int d = 0;
  double lambda_nontrivial_max = 0.0;
  double bound = 0.0;
  double epsilon = kDefaultEpsilon;
  bool pass = false;
};

/// Regular bipartite degree of g; rejects everything else.
inline int require_regular_bipartite(const Graph& g, const char* who) {
  const auto report = validate(g);
  if (!report.is_regular) throw InputError(std::string(who) + ": graph is not regular");
  if (!report.is_bipartite) throw InputError(std::string(who) + ": graph is not bipartite");
  return *report.degree;
}

/// Removes one +d and one -d (the trivial pair of a connected bipartite
/// d-regular graph) and tests the rest against 2 sqrt(d-1) + epsilon.
inline BaseVerdict ramanujan_verdict(const Graph& g, double epsilon = kDefaultEpsilon) {
  const int d = require_regular_bipartite(g, "ramanujan_verdict");
  if (!is_connected(g))
    throw InputError("ramanujan_verdict: graph is disconnected; trivial eigenvalues are ambiguous");
  auto spectrum = hermitian_eigenvalues(adjacency_matrix(g), "base");
  BaseVerdict v;
  v.d = d;
  v.bound = ramanujan_bound(d);
  v.epsilon = epsilon;
  auto& ev = spectrum.eigenvalues;
  // Sorted ascending: -d first, +d last.
  for (std::size_t j = 1; j + 1 < ev.size(); ++j)
    v.lambda_nontrivial_max = std::max(v.lambda_nontrivial_max, std::abs(ev[j]));
  v.pass = v.lambda_nontrivial_max <= v.bound + epsilon;
  return v;
}

/// A verified lift.
struct Certificate {
  std::string base_hash;
  ShiftAssignment assignment;
  int d = 0;
  double lambda_new_max = 0.0;
  double bound = 0.0;
  double epsilon = kDefaultEpsilon;
  bool pass = false;
  /// Two-step 4-lifts: the 2-lift signing b with assignment = b + s.
  std::optional<ShiftAssignment> background;
};

/// Root powers whose quotient spectra cover all new eigenvalues: quotient
/// k-i is the transpose of quotient i, so only i <= k/2 is needed.
inline std::vector<int> representative_root_powers(int k) {
  std::vector<int> out;
  for (int i = 1; 2 * i <= k; ++i) out.push_back(i);
  return out;
}

/// Largest |lambda| over the new eigenvalues, from representative quotients.
inline double lambda_new_max(const Graph& g, const ShiftAssignment& s) {
  double worst = 0.0;
  for (int i : representative_root_powers(s.k()))
    worst = std::max(worst, quotient_spectrum(g, s, i).max_abs());
  return worst;
}

inline Certificate make_certificate(const Graph& g, int d, const ShiftAssignment& s,
                                    double lambda, double epsilon) {
  Certificate c;
  c.base_hash = graph_digest(g);
  c.assignment = s;
  c.d = d;
  c.lambda_new_max = lambda;
  c.bound = ramanujan_bound(d);
  c.epsilon = epsilon;
  c.pass = lambda <= c.bound + epsilon;
  return c;
}

inline Certificate certify_lift(const Graph& g, const ShiftAssignment& s,
                                double epsilon = kDefaultEpsilon) {
  require_matching(g, s, "certify_lift");
  const int d = require_regular_bipartite(g, "certify_lift");
  return make_certificate(g, d, s, lambda_new_max(g, s), epsilon);
}

}  // namespace shiftlift

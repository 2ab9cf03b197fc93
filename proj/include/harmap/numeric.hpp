#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "harmap/errors.hpp"
#include "harmap/polynomial.hpp"

namespace harmap::numeric {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

/// Singular values in descending order.
inline std::vector<double> singular_values(const MatrixC& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<MatrixC> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

struct GapRank {
  std::size_t rank = 0;
  double gap = std::numeric_limits<double>::infinity();
};

/// Rank cut at the largest ratio between consecutive singular values.  The
/// value past the last one is the round-off floor s_1 * eps * n, so a
/// well-conditioned full-rank matrix reports a large gap at its full rank.
/// Throws IndeterminateRank when the best gap is not above `min_gap`.
inline GapRank gap_rank(const std::vector<double>& s, std::size_t ncols, double min_gap = 1e6) {
  if (s.empty() || s.front() == 0.0) return {0, std::numeric_limits<double>::infinity()};
  const double floor = s.front() * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max<std::size_t>(ncols, s.size()));
  GapRank best{0, 0.0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double next = i + 1 < s.size() ? std::max(s[i + 1], floor) : floor;
    const double gap = s[i] / next;
    if (gap > best.gap) best = {i + 1, gap};
  }
  if (!(best.gap > min_gap))
    throw IndeterminateRank("no clear singular-value gap (best ratio " + std::to_string(best.gap) + ")");
  return best;
}

/// Sylvester matrix of two polynomials regarded as binary forms of formal
/// degree d.  Its nullity is the degree of the homogeneous gcd, so a common
/// zero at infinity (both degrees below d) counts.
inline MatrixC sylvester(const CPoly& f, const CPoly& g, std::size_t d) {
  if (d == 0) return MatrixC(0, 0);
  MatrixC s = MatrixC::Zero(static_cast<Eigen::Index>(2 * d), static_cast<Eigen::Index>(2 * d));
  const auto fc = f.padded(d + 1);
  const auto gc = g.padded(d + 1);
  for (std::size_t row = 0; row < d; ++row)
    for (std::size_t j = 0; j <= d; ++j) {
      s(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(row + j)) = fc[j];
      s(static_cast<Eigen::Index>(d + row), static_cast<Eigen::Index>(row + j)) = gc[j];
    }
  return s;
}

/// Two fixed, generic-looking linear combinations of three polynomials.  The
/// gcd of the pair equals the gcd of the triple outside a measure-zero set of
/// inputs.
inline std::pair<CPoly, CPoly> generic_pair(const CPolyTriple& t) {
  const Complex a0{0.8147, 0.1270}, a1{-0.6324, 0.9058}, a2{0.2785, -0.5469};
  const Complex b0{-0.3575, 0.9649}, b1{0.1576, -0.9706}, b2{0.9572, 0.4854};
  return {t[0] * a0 + t[1] * a1 + t[2] * a2, t[0] * b0 + t[1] * b1 + t[2] * b2};
}

inline double coefficient_norm(const CPoly& p) {
  double s = 0;
  for (const auto& c : p.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

/// Roots of a nonzero polynomial from the companion matrix, each polished by
/// a few Newton steps.
inline std::vector<Complex> roots(const CPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  const std::size_t n = p.size() - 1;
  if (n == 0) return {};
  MatrixC comp = MatrixC::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const Complex lead = p.leading();
  for (std::size_t i = 0; i < n; ++i) {
    comp(0, static_cast<Eigen::Index>(i)) = -p.coeffs()[n - 1 - i] / lead;
    if (i + 1 < n) comp(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  Eigen::ComplexEigenSolver<MatrixC> es(comp, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const CPoly dp = p.derivative();
  for (auto& x : out) {
    for (int it = 0; it < 3; ++it) {
      const Complex d = dp(x);
      if (std::abs(d) == 0.0) break;
      const Complex step = p(x) / d;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1.0 + std::abs(x))) break;
      x -= step;
    }
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

/// Orthonormal basis (as columns) of the numerical right kernel, taking the
/// last `dim` right singular vectors.
inline MatrixC kernel_basis(const MatrixC& m, Eigen::Index dim) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return MatrixC::Identity(n, n).leftCols(dim);
  Eigen::JacobiSVD<MatrixC> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

}  // namespace harmap::numeric

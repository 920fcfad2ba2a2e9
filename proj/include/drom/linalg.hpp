#pragma once

//
// Dense spectral primitives: leading singular triple via power iteration on
// the implicit Gram operator, a small-scale full-SVD oracle, nuclear norm,
// and the second largest absolute eigenvalue of a symmetric mixing matrix.
//

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "drom/types.hpp"

namespace drom {

/// Thrown when an iterative routine fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

template <typename Scalar>
struct SingularTriple {
  Scalar sigma{0};     // leading singular value, >= 0
  VecX<Scalar> u;      // unit left vector, length rows
  VecX<Scalar> v;      // unit right vector, length cols
};

namespace detail {

// Canonical sign: first component of u larger than 1e-12 in magnitude is
// made positive, v flipped along with it.
template <typename Scalar>
void canonicalize_sign(VecX<Scalar>& u, VecX<Scalar>& v) {
  for (Index k = 0; k < u.size(); ++k) {
    if (std::abs(u[k]) > Scalar(1e-12)) {
      if (u[k] < Scalar(0)) {
        u = -u;
        v = -v;
      }
      return;
    }
  }
}

}  // namespace detail

/// Leading singular triple of a dense matrix by power iteration on
/// v -> M^T (M v). M^T M is never formed, so one iteration costs O(dm).
/// The start vector is fixed (all-ones with a bump on the first coordinate),
/// which makes the result deterministic for a given matrix.
template <typename Derived>
SingularTriple<typename Derived::Scalar> leading_singular_triple(
    const Eigen::MatrixBase<Derived>& M, typename Derived::Scalar tol = 1e-10,
    int max_iter = 1000) {
  using Scalar = typename Derived::Scalar;
  const Index d = M.rows();
  const Index m = M.cols();
  if (d == 0 || m == 0) throw std::invalid_argument("leading_singular_triple: empty matrix");
  if (!(tol > Scalar(0))) throw std::invalid_argument("leading_singular_triple: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("leading_singular_triple: max_iter must be >= 1");
  if (!M.allFinite()) throw std::invalid_argument("leading_singular_triple: non-finite entries");

  if (M.cwiseAbs().maxCoeff() == Scalar(0)) {
    return {Scalar(0), VecX<Scalar>::Unit(d, 0), VecX<Scalar>::Unit(m, 0)};
  }

  VecX<Scalar> v = VecX<Scalar>::Ones(m);
  v[0] += Scalar(0.25);
  v /= v.norm();

  Scalar sigma = 0;
  Scalar residual = std::numeric_limits<Scalar>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    VecX<Scalar> w = M.derived() * v;
    const Scalar wn = w.norm();
    if (wn == Scalar(0)) {
      // v landed in the null space; restart from a coordinate axis.
      v = VecX<Scalar>::Unit(m, it % m);
      continue;
    }
    const VecX<Scalar> u = w / wn;
    VecX<Scalar> z = M.derived().transpose() * u;
    const Scalar zn = z.norm();
    sigma = zn;
    residual = (z - wn * v).norm();
    v = z / zn;
    if (residual <= tol * std::max(Scalar(1), sigma)) {
      VecX<Scalar> wf = M.derived() * v;
      const Scalar sf = wf.norm();
      VecX<Scalar> uf = wf / sf;
      VecX<Scalar> vf = v;
      detail::canonicalize_sign(uf, vf);
      return {sf, uf, vf};
    }
  }
  throw ConvergenceError(
      "leading_singular_triple: no convergence after " + std::to_string(max_iter) +
          " iterations (residual " + std::to_string(static_cast<double>(residual)) + ")",
      static_cast<double>(residual));
}

template <typename Scalar>
struct SvdResult {
  MatX<Scalar> U;
  VecX<Scalar> sigmas;  // nonincreasing, nonnegative
  MatX<Scalar> V;
};

inline constexpr Index kSvdOracleCap = 64;

/// Full thin SVD, M = U diag(sigmas) V^T. Intended as a test oracle and for
/// comparator projections, so the smaller dimension is capped at 64.
template <typename Derived>
SvdResult<typename Derived::Scalar> full_svd(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  if (std::min(M.rows(), M.cols()) > kSvdOracleCap) {
    throw std::invalid_argument("full_svd: min(rows, cols) exceeds oracle cap of 64");
  }
  if (!M.allFinite()) throw std::invalid_argument("full_svd: non-finite entries");
  Eigen::JacobiSVD<MatX<Scalar>> svd(M.derived(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

/// Sum of singular values. Same size cap as full_svd.
template <typename Derived>
typename Derived::Scalar nuclear_norm(const Eigen::MatrixBase<Derived>& M) {
  return full_svd(M).sigmas.sum();
}

/// zeta = max(|lambda_2|, |lambda_m|) with eigenvalues sorted decreasingly.
/// The input is the (already normalized) symmetric mixing matrix.
template <typename Derived>
typename Derived::Scalar second_largest_abs_eigenvalue(const Eigen::MatrixBase<Derived>& S) {
  using Scalar = typename Derived::Scalar;
  if (S.rows() != S.cols()) throw std::invalid_argument("second_largest_abs_eigenvalue: not square");
  if (((S.derived() - S.derived().transpose()).cwiseAbs().maxCoeff()) > Scalar(1e-12)) {
    throw std::invalid_argument("second_largest_abs_eigenvalue: matrix is not symmetric");
  }
  const Index m = S.rows();
  if (m == 1) return Scalar(0);
  Eigen::SelfAdjointEigenSolver<MatX<Scalar>> es(S.derived(), Eigen::EigenvaluesOnly);
  const VecX<Scalar>& ev = es.eigenvalues();  // ascending
  return std::max(std::abs(ev[m - 2]), std::abs(ev[0]));
}

}  // namespace drom

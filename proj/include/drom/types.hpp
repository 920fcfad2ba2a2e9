#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace drom {

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Column i of a Mat is task i's vector; W, A live in R^{d x m}.
using Mat = MatX<double>;
using Vec = VecX<double>;
using SpVec = Eigen::SparseVector<double>;

using Index = Eigen::Index;

}  // namespace drom

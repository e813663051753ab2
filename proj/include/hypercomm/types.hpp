#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>

namespace hypercomm {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
// 0/1 matrices (incidence, membership, co-membership).
using BinaryMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = std::ptrdiff_t;

}  // namespace hypercomm

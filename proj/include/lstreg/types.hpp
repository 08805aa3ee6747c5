#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace lstreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

}  // namespace lstreg

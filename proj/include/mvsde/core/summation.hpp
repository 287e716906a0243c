#pragma once

#include <Eigen/Core>

namespace mvsde {

// Column reductions with a fixed accumulation order.
//
// Rows are summed sequentially inside blocks of kSumBlock rows; block partials
// are then combined by a balanced pairwise tree over the block index. The
// order depends only on the row count, never on threading, so repeated runs
// reduce to identical bits.
inline constexpr Eigen::Index kSumBlock = 256;

namespace detail {

template <typename Derived>
Eigen::RowVectorXd pairwise_colwise_sum(const Eigen::MatrixBase<Derived>& rows,
                                        Eigen::Index begin, Eigen::Index end) {
  const Eigen::Index n = end - begin;
  if (n <= kSumBlock) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(rows.cols());
    for (Eigen::Index i = begin; i < end; ++i) acc += rows.row(i);
    return acc;
  }
  Eigen::Index blocks = (n + kSumBlock - 1) / kSumBlock;
  const Eigen::Index mid = begin + (blocks / 2) * kSumBlock;
  return pairwise_colwise_sum(rows, begin, mid) +
         pairwise_colwise_sum(rows, mid, end);
}

}  // namespace detail

template <typename Derived>
Eigen::RowVectorXd colwise_sum_pairwise(const Eigen::MatrixBase<Derived>& rows) {
  if (rows.rows() == 0) return Eigen::RowVectorXd::Zero(rows.cols());
  return detail::pairwise_colwise_sum(rows, 0, rows.rows());
}

// Column means, centred on the first row so that a constant ensemble yields
// its common value without any rounding.
template <typename Derived>
Eigen::RowVectorXd colwise_mean_pairwise(const Eigen::MatrixBase<Derived>& rows) {
  const Eigen::RowVectorXd center = rows.row(0);
  const Eigen::RowVectorXd devsum =
      colwise_sum_pairwise((rows.rowwise() - center).eval());
  return center + devsum / static_cast<double>(rows.rows());
}

}  // namespace mvsde

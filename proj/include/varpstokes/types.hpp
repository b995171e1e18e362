#ifndef VARPSTOKES_TYPES_HPP
#define VARPSTOKES_TYPES_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace varpstokes {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

inline Mat2 sym_part(const Mat2& a) { return 0.5 * (a + a.transpose()); }

// Frobenius inner product a:b.
inline double ddot(const Mat2& a, const Mat2& b) { return a.cwiseProduct(b).sum(); }

} // namespace varpstokes

#endif

#include "sigdev/matrix.hpp"

namespace sigdev {

bool in_class(const CMat& m, MatrixClass cls, double tol) {
  if (m.rows() != m.cols()) return false;
  const auto k = m.rows();
  switch (cls) {
    case MatrixClass::TridiagAntisym:
      for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
          if (std::abs(i - j) != 1 && std::abs(m(i, j)) > tol) return false;
      [[fallthrough]];
    case MatrixClass::Antisym:
      if (m.imag().cwiseAbs().maxCoeff() > tol) return false;
      return (m + m.transpose()).cwiseAbs().maxCoeff() <= tol;
    case MatrixClass::SkewHermitian:
      return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  return false;
}

int class_dimension(MatrixClass cls, int k) {
  switch (cls) {
    case MatrixClass::TridiagAntisym: return k - 1;
    case MatrixClass::Antisym: return k * (k - 1) / 2;
    case MatrixClass::SkewHermitian: return k * k;
  }
  return 0;
}

CMat elementary(int k, int a, int b) {
  if (a < 1 || a > k || b < 1 || b > k)
    throw std::out_of_range("elementary: index out of range");
  CMat m = CMat::Zero(k, k);
  m(a - 1, b - 1) = 1.0;
  return m;
}

double hs_norm(const CMat& m) { return m.norm(); }
double hs_norm(const RMat& m) { return m.norm(); }

double hs_dist_sq(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_dist_sq: dimension mismatch");
  return (a - b).squaredNorm();
}

}  // namespace sigdev

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sigdev {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

// Nested matrix classes: t(k,R) subset so(k,R) subset su(k).
enum class MatrixClass { TridiagAntisym, Antisym, SkewHermitian };

// Membership predicate for a class, up to entrywise tolerance.
bool in_class(const CMat& m, MatrixClass cls, double tol = 1e-12);

// Real dimension of the class as a subspace of k x k matrices.
int class_dimension(MatrixClass cls, int k);

// Elementary matrix E^a_b (1-based): 1 at (a,b), 0 elsewhere.
CMat elementary(int k, int a, int b);

double hs_norm(const CMat& m);
double hs_norm(const RMat& m);
double hs_dist_sq(const CMat& a, const CMat& b);

// Matrix exponential: scaling-and-squaring with the degree-13 Pade
// approximant. Works on real and complex square matrices.
template <class Mat>
Mat expm(const Mat& m);

// Frechet (directional) derivative of expm at m along dir, read off the
// upper-right block of expm([[m, dir], [0, m]]).
template <class Mat>
Mat expm_frechet(const Mat& m, const Mat& dir);

// A linear map R^d -> matrices in a declared class, stored by its images
// on the standard basis vectors e_1..e_d.
struct LinearMapFamily {
  int d = 0;
  int k = 0;
  MatrixClass cls = MatrixClass::SkewHermitian;
  std::vector<CMat> images;  // images[j] = M(e_{j+1})

  CMat apply(const Eigen::VectorXd& v) const {
    CMat out = CMat::Zero(k, k);
    for (int j = 0; j < d; ++j)
      if (v[j] != 0.0) out += v[j] * images[j];
    return out;
  }
};

// --- implementation ---

namespace detail {

// Pade(u, v) of orders 3/5/7/9: u collects the odd, v the even powers.
template <class Mat>
void pade_low(const Mat& a, int degree, Mat& u, Mat& v) {
  static const double b3[] = {120., 60., 12., 1.};
  static const double b5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double b7[] = {17297280., 8648640., 1995840., 277200.,
                              25200.,    1512.,    56.,      1.};
  static const double b9[] = {17643225600., 8821612800., 2075673600.,
                              302702400.,   30270240.,   2162160.,
                              110880.,      3960.,       90.,
                              1.};
  const double* b = degree == 3 ? b3 : degree == 5 ? b5 : degree == 7 ? b7 : b9;
  const auto k = a.rows();
  const Mat ident = Mat::Identity(k, k);
  const Mat a2 = a * a;
  u = b[1] * ident;
  v = b[0] * ident;
  Mat pow = ident;
  for (int p = 2; p < degree; p += 2) {
    pow = pow * a2;
    u += b[p + 1] * pow;
    v += b[p] * pow;
  }
  u = a * u;
}

template <class Mat>
void pade13(const Mat& a, Mat& u, Mat& v) {
  static const double b[] = {64764752532480000., 32382376266240000.,
                             7771770303897600.,  1187353796428800.,
                             129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,
                             1323241920.,        40840800.,
                             960960.,            16380.,
                             182.,               1.};
  const auto k = a.rows();
  const Mat ident = Mat::Identity(k, k);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * ident);
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
      b[2] * a2 + b[0] * ident;
}

}  // namespace detail

template <class Mat>
Mat expm(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: not square");
  if (!m.allFinite()) throw std::invalid_argument("expm: non-finite input");
  // Higham's degree-selection thresholds theta_m
  const double theta3 = 1.495585217958292e-2;
  const double theta5 = 2.539398330063230e-1;
  const double theta7 = 9.504178996162932e-1;
  const double theta9 = 2.097847961257068;
  const double theta13 = 5.371920351148152;
  const double norm = m.template lpNorm<1>();
  Mat u, v;
  int squarings = 0;
  if (norm <= theta9) {
    const int degree =
        norm <= theta3 ? 3 : norm <= theta5 ? 5 : norm <= theta7 ? 7 : 9;
    detail::pade_low(m, degree, u, v);
  } else {
    if (norm > theta13)
      squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    const Mat scaled = m / std::pow(2.0, squarings);
    detail::pade13(scaled, u, v);
  }
  // solve (v - u) x = (v + u)
  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

template <class Mat>
Mat expm_frechet(const Mat& m, const Mat& dir) {
  if (m.rows() != dir.rows() || m.cols() != dir.cols())
    throw std::invalid_argument("expm_frechet: dimension mismatch");
  const auto k = m.rows();
  Mat block = Mat::Zero(2 * k, 2 * k);
  block.topLeftCorner(k, k) = m;
  block.topRightCorner(k, k) = dir;
  block.bottomRightCorner(k, k) = m;
  return expm(block).topRightCorner(k, k);
}

}  // namespace sigdev

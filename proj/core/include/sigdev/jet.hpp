#pragma once

#include <map>
#include <vector>

#include "sigdev/matrix.hpp"

namespace sigdev {

// Truncated d-variate polynomial in theta_1..theta_d with k x k complex
// matrix coefficients. Terms above the total-degree cap are dropped by
// every operation; absent terms are zero. Carrier for exact derivatives of
// the generating function with respect to theta.
class JetMatrix {
public:
  using Degree = std::vector<int>;  // exponent per variable, size d

  JetMatrix() = default;
  JetMatrix(int d, int max_deg, int k)
      : d_(d), max_deg_(max_deg), k_(k) {}

  static JetMatrix constant(int d, int max_deg, const CMat& value);

  int d() const { return d_; }
  int max_deg() const { return max_deg_; }
  int k() const { return k_; }

  // Zero matrix if the term is absent.
  CMat coeff(const Degree& deg) const;

  void add_term(const Degree& deg, const CMat& value);

  const std::map<Degree, CMat>& terms() const { return terms_; }

  JetMatrix& operator+=(const JetMatrix& o);
  JetMatrix& operator*=(double s);

  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);

private:
  int d_ = 0;
  int max_deg_ = 0;
  int k_ = 0;
  std::map<Degree, CMat> terms_;
};

}  // namespace sigdev

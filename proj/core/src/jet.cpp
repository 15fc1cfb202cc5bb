#include "sigdev/jet.hpp"

#include <numeric>
#include <stdexcept>

namespace sigdev {

namespace {
int total(const JetMatrix::Degree& deg) {
  return std::accumulate(deg.begin(), deg.end(), 0);
}
}  // namespace

JetMatrix JetMatrix::constant(int d, int max_deg, const CMat& value) {
  JetMatrix j(d, max_deg, static_cast<int>(value.rows()));
  j.add_term(Degree(d, 0), value);
  return j;
}

CMat JetMatrix::coeff(const Degree& deg) const {
  auto it = terms_.find(deg);
  if (it == terms_.end()) return CMat::Zero(k_, k_);
  return it->second;
}

void JetMatrix::add_term(const Degree& deg, const CMat& value) {
  if (static_cast<int>(deg.size()) != d_)
    throw std::invalid_argument("degree arity mismatch");
  if (total(deg) > max_deg_) return;
  auto [it, inserted] = terms_.try_emplace(deg, value);
  if (!inserted) it->second += value;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
  if (o.d_ != d_ || o.k_ != k_) throw std::invalid_argument("jet shape mismatch");
  for (const auto& [deg, m] : o.terms_) add_term(deg, m);
  return *this;
}

JetMatrix& JetMatrix::operator*=(double s) {
  for (auto& [deg, m] : terms_) m *= s;
  return *this;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.d_ != b.d_ || a.k_ != b.k_)
    throw std::invalid_argument("jet shape mismatch");
  JetMatrix out(a.d_, std::min(a.max_deg_, b.max_deg_), a.k_);
  JetMatrix::Degree sum(a.d_);
  for (const auto& [da, ma] : a.terms_) {
    const int ta = total(da);
    for (const auto& [db, mb] : b.terms_) {
      if (ta + total(db) > out.max_deg_) continue;
      for (int i = 0; i < a.d_; ++i) sum[i] = da[i] + db[i];
      out.add_term(sum, ma * mb);
    }
  }
  return out;
}

}  // namespace sigdev

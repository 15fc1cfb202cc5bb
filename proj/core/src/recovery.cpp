#include "sigdev/recovery.hpp"

#include <functional>
#include <stdexcept>

#include "sigdev/parallel.hpp"

namespace sigdev {

LinearMapFamily RecoveryPlan::family_at(const Eigen::VectorXd& theta) const {
  LinearMapFamily fam;
  fam.d = word.d;
  fam.k = k;
  fam.cls = variant == RecoveryVariant::Antisym ? MatrixClass::TridiagAntisym
                                                : MatrixClass::SkewHermitian;
  fam.images.resize(fam.d);
  for (int j = 0; j < fam.d; ++j) fam.images[j] = theta[j] * images[j];
  return fam;
}

RecoveryPlan build_plan(const Word& w, int k, RecoveryVariant variant) {
  if (!w.valid()) throw std::invalid_argument("invalid word");
  const int n = w.length();
  if (k < n + 1) throw std::invalid_argument("build_plan: k must be >= |W|+1");
  const WordStats stats = word_stats(w);

  RecoveryPlan plan;
  plan.word = w;
  plan.k = k;
  plan.variant = variant;
  plan.c_w = stats.c_w;
  plan.images.assign(w.d, CMat::Zero(k, k));
  const std::complex<double> im(0.0, 1.0);
  for (int i = 0; i < w.d; ++i) {
    for (int p : stats.positions[i]) {
      plan.images[i](p - 1, p) += 1.0;
      plan.images[i](p, p - 1) -= 1.0;
      if (variant == RecoveryVariant::SkewHermitianAlt)
        plan.images[i](p - 1, p - 1) += im;
    }
  }
  return plan;
}

CMat bracket(const RecoveryPlan& plan, const Word& i_word, const Word& w_bar) {
  const int n = plan.word.length();
  if (i_word.length() != n || w_bar.length() != n)
    throw std::invalid_argument("bracket: length mismatch");
  CMat acc = CMat::Identity(plan.k, plan.k);
  for (int l = 0; l < n; ++l) {
    if (i_word.letters[l] != w_bar.letters[l])
      return CMat::Zero(plan.k, plan.k);  // M^W_i(e_j) = 0 for i != j
    acc = acc * plan.images[i_word.letters[l] - 1];
  }
  return acc;
}

CMat GeneratingFunction::evaluate(const LinearMapFamily& map) const {
  std::vector<JetMatrix> images;
  images.reserve(map.images.size());
  for (const auto& m : map.images)
    images.push_back(JetMatrix::constant(map.d, 0, m));
  return evaluate_jet(images).coeff(JetMatrix::Degree(map.d, 0));
}

JetMatrix TensorOracle::evaluate_jet(const std::vector<JetMatrix>& images) const {
  const int d = x_.d();
  if (static_cast<int>(images.size()) != d)
    throw std::invalid_argument("image count mismatch");
  const int k = images[0].k();
  const int max_deg = images[0].max_deg();

  JetMatrix acc = JetMatrix::constant(
      d, max_deg, x_.level(0)[0] * CMat::Identity(k, k));
  std::vector<JetMatrix> prev{
      JetMatrix::constant(d, max_deg, CMat::Identity(k, k))};
  for (int n = 1; n <= x_.depth(); ++n) {
    std::vector<JetMatrix> cur(level_size(d, n));
    const std::size_t stride = prev.size();
    const auto& coeffs = x_.level(n);
    for (int last = 0; last < d; ++last) {
      for (std::size_t p = 0; p < stride; ++p) {
        const std::size_t idx = p + stride * static_cast<std::size_t>(last);
        cur[idx] = prev[p] * images[last];
        if (coeffs[idx] != 0.0) {
          JetMatrix term = cur[idx];
          term *= coeffs[idx];
          acc += term;
        }
      }
    }
    prev = std::move(cur);
  }
  return acc;
}

namespace {

std::vector<JetMatrix> plan_jet_images(const RecoveryPlan& plan) {
  const int d = plan.word.d;
  const int max_deg = plan.word.length();
  std::vector<JetMatrix> images;
  images.reserve(d);
  for (int j = 0; j < d; ++j) {
    JetMatrix jm(d, max_deg, plan.k);
    JetMatrix::Degree deg(d, 0);
    deg[j] = 1;  // M_theta(e_j) = theta_j M^W_j(e_j)
    jm.add_term(deg, plan.images[j]);
    images.push_back(std::move(jm));
  }
  return images;
}

}  // namespace

JetMatrix jet_generating_function(const GeneratingFunction& phi,
                                  const RecoveryPlan& plan) {
  return phi.evaluate_jet(plan_jet_images(plan));
}

JetMatrix jet_generating_function(const TruncatedTensor& x,
                                  const RecoveryPlan& plan) {
  if (x.depth() < plan.word.length())
    throw std::invalid_argument("tensor depth insufficient for plan");
  return jet_generating_function(TensorOracle(x), plan);
}

double recover_coefficient(const GeneratingFunction& phi, const Word& w, int k,
                           RecoveryVariant variant) {
  const int n = w.length();
  if (k < 0) k = n + 1;
  const RecoveryPlan plan = build_plan(w, k, variant);
  const JetMatrix jet = jet_generating_function(phi, plan);
  const WordStats stats = word_stats(w);
  JetMatrix::Degree deg(w.d);
  for (int i = 0; i < w.d; ++i) deg[i] = stats.multiplicities[i];
  // The permutation class of W contributes C_W under d^n/dtheta^W, which
  // cancels the 1/C_W prefactor: the monomial coefficient is read directly.
  return jet.coeff(deg)(0, n).real();
}

double recover_coefficient(const TruncatedTensor& x, const Word& w, int k,
                           RecoveryVariant variant) {
  return recover_coefficient(TensorOracle(x), w, k, variant);
}

TruncatedTensor recover_tensor(const GeneratingFunction& phi, int d, int depth,
                               int k, RecoveryVariant variant, int threads) {
  TruncatedTensor out(d, depth);
  // level 0: Phi at the zero map is x_0 * I_k
  LinearMapFamily zero;
  zero.d = d;
  zero.k = 2;
  zero.images.assign(d, CMat::Zero(2, 2));
  out.level(0)[0] = phi.evaluate(zero)(0, 0).real();
  for (int n = 1; n <= depth; ++n) {
    const std::size_t count = level_size(d, n);
    auto& lvl = out.level(n);
    parallel_for(count, threads, [&](std::size_t idx) {
      const Word w = word_from_index(idx, n, d);
      lvl[idx] = recover_coefficient(phi, w, k, variant);
    });
  }
  return out;
}

CMat finite_difference_derivative(const GeneratingFunction& phi,
                                  const RecoveryPlan& plan, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  const int d = plan.word.d;
  const int n = plan.word.length();
  // central stencil nested over the letters of the word
  std::function<CMat(int, Eigen::VectorXd&)> rec =
      [&](int m, Eigen::VectorXd& theta) -> CMat {
    if (m == 0) return phi.evaluate(plan.family_at(theta));
    const int var = plan.word.letters[m - 1] - 1;
    theta[var] += h;
    const CMat plus = rec(m - 1, theta);
    theta[var] -= 2 * h;
    const CMat minus = rec(m - 1, theta);
    theta[var] += h;
    return (plus - minus) / (2 * h);
  };
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  return rec(n, theta);
}

}  // namespace sigdev

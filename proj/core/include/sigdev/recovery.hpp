#pragma once

#include <memory>

#include "sigdev/development.hpp"
#include "sigdev/jet.hpp"
#include "sigdev/matrix.hpp"
#include "sigdev/tensor.hpp"
#include "sigdev/word.hpp"

namespace sigdev {

// Which Lie algebra the word-specific matrices live in. Antisym is the
// superdiagonal-minus-subdiagonal construction (tridiagonal antisymmetric);
// SkewHermitianAlt additionally places sqrt(-1) on the diagonal positions,
// giving skew-Hermitian matrices. Both recover the same coefficients.
enum class RecoveryVariant { Antisym, SkewHermitianAlt };

// The word-specific linear maps used to isolate one tensor coefficient:
// M^W_i(e_j) is zero unless i = j and letter i occurs in W, in which case
// it is a signed sum of super/subdiagonal elementary matrices placed at the
// occurrence positions of i.
struct RecoveryPlan {
  Word word;
  int k = 0;
  RecoveryVariant variant = RecoveryVariant::Antisym;
  double c_w = 1.0;
  std::vector<CMat> images;  // images[i] = M^W_{i+1}(e_{i+1})

  // M_theta = sum_i theta_i M^W_i as a concrete map family.
  LinearMapFamily family_at(const Eigen::VectorXd& theta) const;
};

RecoveryPlan build_plan(const Word& w, int k,
                        RecoveryVariant variant = RecoveryVariant::Antisym);

// Product M^W_{i_1}(e_{wbar_1}) ... M^W_{i_n}(e_{wbar_n}).
CMat bracket(const RecoveryPlan& plan, const Word& i_word, const Word& w_bar);

// Black-box access to a generating function Phi. Implementations must
// evaluate Phi with jet-valued map images; plain (matrix-valued) evaluation
// falls out as the degree-0 case.
class GeneratingFunction {
public:
  virtual ~GeneratingFunction() = default;
  virtual int dim() const = 0;
  // images[j] stands for M(e_{j+1}); all must share d, max_deg, k.
  virtual JetMatrix evaluate_jet(const std::vector<JetMatrix>& images) const = 0;
  CMat evaluate(const LinearMapFamily& map) const;
};

// Phi built from a known truncated tensor (the canonical extension).
class TensorOracle final : public GeneratingFunction {
public:
  explicit TensorOracle(TruncatedTensor x) : x_(std::move(x)) {}
  int dim() const override { return x_.d(); }
  JetMatrix evaluate_jet(const std::vector<JetMatrix>& images) const override;
  const TruncatedTensor& tensor() const { return x_; }

private:
  TruncatedTensor x_;
};

// Phi(M_theta) as an exact polynomial in theta, truncated at |plan.word|.
JetMatrix jet_generating_function(const GeneratingFunction& phi,
                                  const RecoveryPlan& plan);
JetMatrix jet_generating_function(const TruncatedTensor& x,
                                  const RecoveryPlan& plan);

// X^W read off the (1, n+1)-entry of the theta^{r^W} jet coefficient.
// k defaults to |W| + 1.
double recover_coefficient(const GeneratingFunction& phi, const Word& w,
                           int k = -1,
                           RecoveryVariant variant = RecoveryVariant::Antisym);
double recover_coefficient(const TruncatedTensor& x, const Word& w, int k = -1,
                           RecoveryVariant variant = RecoveryVariant::Antisym);

// Full reconstruction of all coefficients up to the requested depth.
// Words are independent, so they parallelize over `threads` workers with
// identical results for any thread count.
TruncatedTensor recover_tensor(const GeneratingFunction& phi, int d, int depth,
                               int k = -1,
                               RecoveryVariant variant = RecoveryVariant::Antisym,
                               int threads = 1);

// Mixed partial d^n Phi(M_theta) / dtheta^W at theta = 0 by nested central
// differences. Cross-check of the jet path only; |W| <= 4 recommended.
CMat finite_difference_derivative(const GeneratingFunction& phi,
                                  const RecoveryPlan& plan, double h = 1e-3);

}  // namespace sigdev

#include "sigdev/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "sigdev/rng.hpp"

namespace sigdev {

std::vector<CMat> class_basis(MatrixClass cls, int k) {
  const std::complex<double> im(0.0, 1.0);
  std::vector<CMat> basis;
  basis.reserve(class_dimension(cls, k));
  switch (cls) {
    case MatrixClass::TridiagAntisym:
      for (int p = 0; p + 1 < k; ++p) {
        CMat b = CMat::Zero(k, k);
        b(p, p + 1) = 1.0;
        b(p + 1, p) = -1.0;
        basis.push_back(std::move(b));
      }
      break;
    case MatrixClass::Antisym:
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          CMat m = CMat::Zero(k, k);
          m(a, b) = 1.0;
          m(b, a) = -1.0;
          basis.push_back(std::move(m));
        }
      break;
    case MatrixClass::SkewHermitian:
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          CMat m = CMat::Zero(k, k);
          m(a, b) = 1.0;
          m(b, a) = -1.0;
          basis.push_back(std::move(m));
        }
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          CMat m = CMat::Zero(k, k);
          m(a, b) = im;
          m(b, a) = im;
          basis.push_back(std::move(m));
        }
      for (int a = 0; a < k; ++a) {
        CMat m = CMat::Zero(k, k);
        m(a, a) = im;
        basis.push_back(std::move(m));
      }
      break;
  }
  return basis;
}

std::vector<LinearMapFamily> maps_from_params(const DistanceSpec& spec,
                                              const MapParameters& params) {
  if (static_cast<int>(params.values.size()) != spec.total_params())
    throw std::invalid_argument("parameter count mismatch");
  const auto basis = class_basis(spec.cls, spec.k);
  const int nb = static_cast<int>(basis.size());
  std::vector<LinearMapFamily> maps(spec.K);
  const double* v = params.values.data();
  for (int i = 0; i < spec.K; ++i) {
    auto& fam = maps[i];
    fam.d = spec.d;
    fam.k = spec.k;
    fam.cls = spec.cls;
    fam.images.assign(spec.d, CMat::Zero(spec.k, spec.k));
    for (int c = 0; c < spec.d; ++c)
      for (int b = 0; b < nb; ++b, ++v)
        if (*v != 0.0) fam.images[c] += *v * basis[b];
  }
  return maps;
}

MapParameters params_from_maps(const DistanceSpec& spec,
                               const std::vector<LinearMapFamily>& maps) {
  if (static_cast<int>(maps.size()) != spec.K)
    throw std::invalid_argument("map count mismatch");
  const int k = spec.k;
  MapParameters out;
  out.values.reserve(spec.total_params());
  for (const auto& fam : maps) {
    for (int c = 0; c < spec.d; ++c) {
      const CMat& m = fam.images[c];
      switch (spec.cls) {
        case MatrixClass::TridiagAntisym:
          for (int p = 0; p + 1 < k; ++p)
            out.values.push_back(m(p, p + 1).real());
          break;
        case MatrixClass::Antisym:
          for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
              out.values.push_back(m(a, b).real());
          break;
        case MatrixClass::SkewHermitian:
          for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
              out.values.push_back(m(a, b).real());
          for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
              out.values.push_back(m(a, b).imag());
          for (int a = 0; a < k; ++a)
            out.values.push_back(m(a, a).imag());
          break;
      }
    }
  }
  return out;
}

namespace {

// --- scalar-generic development / gradient kernel -------------------------

template <class Mat>
struct SegmentData {
  std::vector<Mat> a;  // M(increment) per segment
  std::vector<Mat> x;  // expm(a) per segment
  Mat u;               // ordered product of x
};

template <class Mat>
SegmentData<Mat> develop_segments(const SampledPath& path,
                                  const std::vector<Mat>& images) {
  const int len = path.segments();
  const auto k = images[0].rows();
  SegmentData<Mat> sd;
  sd.a.reserve(len);
  sd.x.reserve(len);
  sd.u = Mat::Identity(k, k);
  for (int j = 0; j < len; ++j) {
    const Eigen::VectorXd inc = path.increment(j);
    Mat a = Mat::Zero(k, k);
    for (int c = 0; c < inc.size(); ++c)
      if (inc[c] != 0.0) a += inc[c] * images[c];
    Mat x = expm(a);
    sd.u = sd.u * x;
    sd.a.push_back(std::move(a));
    sd.x.push_back(std::move(x));
  }
  return sd;
}

// Re tr(Z B_b) for every basis element B_b, in parameter-layout order.
void basis_traces(const RMat& z, MatrixClass cls, std::vector<double>& out) {
  const int k = static_cast<int>(z.rows());
  out.clear();
  if (cls == MatrixClass::TridiagAntisym) {
    for (int p = 0; p + 1 < k; ++p) out.push_back(z(p + 1, p) - z(p, p + 1));
  } else {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) out.push_back(z(b, a) - z(a, b));
  }
}

void basis_traces(const CMat& z, MatrixClass cls, std::vector<double>& out) {
  const int k = static_cast<int>(z.rows());
  out.clear();
  if (cls == MatrixClass::TridiagAntisym) {
    for (int p = 0; p + 1 < k; ++p)
      out.push_back((z(p + 1, p) - z(p, p + 1)).real());
    return;
  }
  if (cls == MatrixClass::Antisym) {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        out.push_back((z(b, a) - z(a, b)).real());
    return;
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      out.push_back((z(b, a) - z(a, b)).real());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      out.push_back(-(z(b, a) + z(a, b)).imag());
  for (int a = 0; a < k; ++a) out.push_back(-z(a, a).imag());
}

// Adds d(Re tr(G U))/dparams for one path to grad_map (layout c * nb + b).
// Uses the adjoint identity <W, L(A,E)> = <L(A*, W), E> for the Frechet
// derivative of expm, so one block-expm per segment covers all parameters.
template <class Mat>
void accumulate_gradient(const SampledPath& path, const SegmentData<Mat>& sd,
                         const Mat& g, MatrixClass cls, double* grad_map) {
  const int len = static_cast<int>(sd.x.size());
  const auto k = g.rows();
  std::vector<Mat> suffix(len + 1);
  suffix[len] = Mat::Identity(k, k);
  for (int j = len - 1; j >= 0; --j) suffix[j] = sd.x[j] * suffix[j + 1];
  Mat prefix = Mat::Identity(k, k);
  std::vector<double> proj;
  const int nb = class_dimension(cls, static_cast<int>(k));
  for (int j = 0; j < len; ++j) {
    const Mat w = suffix[j + 1] * g * prefix;
    const Mat z =
        expm_frechet(Mat(sd.a[j].adjoint()), Mat(w.adjoint())).adjoint();
    basis_traces(z, cls, proj);
    const Eigen::VectorXd inc = path.increment(j);
    for (int c = 0; c < inc.size(); ++c) {
      if (inc[c] == 0.0) continue;
      for (int b = 0; b < nb; ++b) grad_map[c * nb + b] += inc[c] * proj[b];
    }
    prefix = prefix * sd.x[j];
  }
}

template <class Mat>
std::vector<Mat> cast_images(const LinearMapFamily& fam) {
  std::vector<Mat> out;
  out.reserve(fam.images.size());
  for (const auto& m : fam.images) {
    if constexpr (std::is_same_v<Mat, RMat>)
      out.push_back(m.real());
    else
      out.push_back(m);
  }
  return out;
}

template <class Mat>
double eval_impl(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                 const std::vector<LinearMapFamily>& maps,
                 const DistanceSpec& spec, double* grad) {
  const int k = spec.k;
  const double m_count = static_cast<double>(mu.paths.size());
  const double n_count = static_cast<double>(nu.paths.size());
  double loss = 0.0;
  const int per_map = spec.params_per_map();
  for (int i = 0; i < spec.K; ++i) {
    const auto images = cast_images<Mat>(maps[i]);
    std::vector<SegmentData<Mat>> mu_sd, nu_sd;
    Mat dev_mu = Mat::Zero(k, k);
    Mat dev_nu = Mat::Zero(k, k);
    for (const auto& p : mu.paths) {
      auto sd = develop_segments(p, images);
      dev_mu += sd.u;
      if (grad) mu_sd.push_back(std::move(sd));
    }
    for (const auto& p : nu.paths) {
      auto sd = develop_segments(p, images);
      dev_nu += sd.u;
      if (grad) nu_sd.push_back(std::move(sd));
    }
    dev_mu /= m_count;
    dev_nu /= n_count;
    const Mat diff = dev_mu - dev_nu;
    loss += diff.squaredNorm() / spec.K;
    if (grad) {
      const Mat g_base = (2.0 / spec.K) * diff.adjoint();
      double* grad_map = grad + static_cast<std::ptrdiff_t>(i) * per_map;
      for (std::size_t p = 0; p < mu_sd.size(); ++p)
        accumulate_gradient(mu.paths[p], mu_sd[p], Mat(g_base / m_count),
                            spec.cls, grad_map);
      for (std::size_t p = 0; p < nu_sd.size(); ++p)
        accumulate_gradient(nu.paths[p], nu_sd[p], Mat(-g_base / n_count),
                            spec.cls, grad_map);
    }
  }
  return loss;
}

double eval_dispatch(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                     const MapParameters& params, const DistanceSpec& spec,
                     double* grad) {
  if (mu.paths.empty() || nu.paths.empty())
    throw std::invalid_argument("empty empirical measure");
  for (const auto* m : {&mu, &nu})
    for (const auto& p : m->paths)
      if (p.dim() != spec.d)
        throw std::invalid_argument("path dimension does not match spec");
  const auto maps = maps_from_params(spec, params);
  // Real classes run on real matrices; PCFD needs the complex kernel.
  if (spec.cls == MatrixClass::SkewHermitian)
    return eval_impl<CMat>(mu, nu, maps, spec, grad);
  return eval_impl<RMat>(mu, nu, maps, spec, grad);
}

}  // namespace

CMat expected_development(const EmpiricalMeasure& mu,
                          const LinearMapFamily& map) {
  if (mu.paths.empty()) throw std::invalid_argument("empty empirical measure");
  CMat acc = CMat::Zero(map.k, map.k);
  for (const auto& p : mu.paths) {
    const auto images = cast_images<CMat>(map);
    acc += develop_segments(p, images).u;
  }
  return acc / static_cast<double>(mu.paths.size());
}

double empirical_distance_sq(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu,
                             const MapParameters& params,
                             const DistanceSpec& spec) {
  return eval_dispatch(mu, nu, params, spec, nullptr);
}

std::vector<double> distance_gradient(const EmpiricalMeasure& mu,
                                      const EmpiricalMeasure& nu,
                                      const MapParameters& params,
                                      const DistanceSpec& spec) {
  std::vector<double> grad(spec.total_params(), 0.0);
  eval_dispatch(mu, nu, params, spec, grad.data());
  return grad;
}

double distance_and_gradient(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu,
                             const MapParameters& params,
                             const DistanceSpec& spec,
                             std::vector<double>& grad) {
  grad.assign(spec.total_params(), 0.0);
  return eval_dispatch(mu, nu, params, spec, grad.data());
}

MapParameters init_params(const DistanceSpec& spec, std::uint64_t seed,
                          double std_scale) {
  RngStream rng(seed, 0xA111);
  const double std = std_scale / std::sqrt(static_cast<double>(spec.k));
  MapParameters p;
  p.values.resize(spec.total_params());
  for (auto& v : p.values) v = std * rng.gaussian();
  return p;
}

TrainResult train(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                  const DistanceSpec& spec, const TrainConfig& cfg) {
  if (mu.paths.empty() || nu.paths.empty())
    throw std::invalid_argument("empty training set");
  TrainResult result;
  result.params = init_params(spec, cfg.seed, cfg.init_std_scale);
  const int n_params = spec.total_params();
  std::vector<double> moment1(n_params, 0.0), moment2(n_params, 0.0);
  std::vector<double> grad;
  RngStream rng(cfg.seed, 0x7EA1);

  const auto sample_batch = [&](const EmpiricalMeasure& src) {
    const std::size_t want =
        std::min<std::size_t>(cfg.batch, src.paths.size());
    if (want == src.paths.size()) return src;
    std::vector<std::size_t> idx(src.paths.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng.engine());
    EmpiricalMeasure batch;
    batch.paths.reserve(want);
    for (std::size_t i = 0; i < want; ++i)
      batch.paths.push_back(src.paths[idx[i]]);
    return batch;
  };

  for (int iter = 1; iter <= cfg.iterations; ++iter) {
    const EmpiricalMeasure bx = sample_batch(mu);
    const EmpiricalMeasure by = sample_batch(nu);
    const double loss = distance_and_gradient(bx, by, result.params, spec, grad);
    if (!std::isfinite(loss))
      throw std::runtime_error("training diverged (non-finite loss) at iteration " +
                               std::to_string(iter));
    const double bc1 = 1.0 - std::pow(cfg.beta1, iter);
    const double bc2 = 1.0 - std::pow(cfg.beta2, iter);
    for (int p = 0; p < n_params; ++p) {
      moment1[p] = cfg.beta1 * moment1[p] + (1.0 - cfg.beta1) * grad[p];
      moment2[p] = cfg.beta2 * moment2[p] + (1.0 - cfg.beta2) * grad[p] * grad[p];
      const double mhat = moment1[p] / bc1;
      const double vhat = moment2[p] / bc2;
      // ascent step
      result.params.values[p] += cfg.learning_rate * mhat /
                                 (std::sqrt(vhat) + cfg.epsilon);
    }
    result.loss_trace.push_back(loss);
  }
  return result;
}

}  // namespace sigdev

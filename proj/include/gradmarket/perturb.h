// Copyright 2026 The gradmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRADMARKET_PERTURB_H_
#define GRADMARKET_PERTURB_H_

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "gradmarket/random.h"

namespace gradmarket {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using LayerMatrices = std::vector<Matrix<Scalar>>;

inline void CheckLayerSizes(const std::vector<int>& sizes) {
  if (sizes.size() < 3) throw std::invalid_argument("model needs at least two layers");
  for (int n : sizes) {
    if (n < 1) throw std::invalid_argument("layer sizes must be positive");
  }
}

/// Number of weights, sum of n_l * n_{l-1}.
inline std::size_t ParameterCount(const std::vector<int>& sizes) {
  std::size_t w = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    w += static_cast<std::size_t>(sizes[l]) * static_cast<std::size_t>(sizes[l - 1]);
  }
  return w;
}

/// Feed-forward network without biases: ReLU on hidden layers, linear output.
/// weights[l] maps layer l to layer l+1 and has shape sizes[l+1] x sizes[l].
template <typename Scalar>
struct Mlp {
  std::vector<int> sizes;
  LayerMatrices<Scalar> weights;

  int num_layers() const { return static_cast<int>(weights.size()); }

  /// Entries N(0, scale^2 / fan_in).
  static Mlp Random(const std::vector<int>& sizes, double scale, RandomStream& rng) {
    CheckLayerSizes(sizes);
    Mlp m{sizes, {}};
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      Matrix<Scalar> w(sizes[l + 1], sizes[l]);
      const double sd = scale / std::sqrt(static_cast<double>(sizes[l]));
      for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = Scalar(rng.Normal(0.0, sd));
      m.weights.push_back(std::move(w));
    }
    return m;
  }
};

/// One sample per row.
template <typename Scalar>
struct Dataset {
  Matrix<Scalar> x;
  Matrix<Scalar> y;

  Eigen::Index size() const { return x.rows(); }
};

/// Row-wise concatenation.
template <typename Scalar>
Dataset<Scalar> Concatenate(std::span<const Dataset<Scalar>> parts) {
  Eigen::Index rows = 0;
  for (const auto& p : parts) rows += p.size();
  if (parts.empty()) return {};
  Dataset<Scalar> out{Matrix<Scalar>(rows, parts[0].x.cols()), Matrix<Scalar>(rows, parts[0].y.cols())};
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.x.middleRows(at, p.size()) = p.x;
    out.y.middleRows(at, p.size()) = p.y;
    at += p.size();
  }
  return out;
}

/// Activations y^(0) = x, ..., y^(L).
template <typename Scalar>
std::vector<Vector<Scalar>> Forward(const LayerMatrices<Scalar>& weights,
                                    const Vector<Scalar>& x) {
  std::vector<Vector<Scalar>> ys{x};
  ys.reserve(weights.size() + 1);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Vector<Scalar> z = weights[l] * ys.back();
    if (l + 1 < weights.size()) z = z.cwiseMax(Scalar(0));
    ys.push_back(std::move(z));
  }
  return ys;
}

/// Gradient of seed . y^(top+1) with respect to weights[0..top]; layers above
/// `top` get zero matrices.
template <typename Scalar>
LayerMatrices<Scalar> Backprop(const LayerMatrices<Scalar>& weights,
                               const std::vector<Vector<Scalar>>& ys,
                               Vector<Scalar> delta, int top) {
  const int num_layers = static_cast<int>(weights.size());
  LayerMatrices<Scalar> grad(weights.size());
  for (int l = num_layers - 1; l > top; --l) {
    grad[l] = Matrix<Scalar>::Zero(weights[l].rows(), weights[l].cols());
  }
  for (int l = top; l >= 0; --l) {
    if (l < num_layers - 1) {
      for (Eigen::Index k = 0; k < delta.size(); ++k) {
        if (!(ys[l + 1][k] > Scalar(0))) delta[k] = Scalar(0);
      }
    }
    grad[l] = delta * ys[l].transpose();
    if (l > 0) delta = weights[l].transpose() * delta;
  }
  return grad;
}

template <typename Scalar>
void CheckDataset(const std::vector<int>& sizes, const Dataset<Scalar>& data) {
  if (data.size() == 0) throw std::invalid_argument("dataset is empty");
  if (data.x.cols() != sizes.front() || data.y.cols() != sizes.back() ||
      data.y.rows() != data.x.rows()) {
    throw std::invalid_argument("dataset dimensions do not match the model");
  }
}

template <typename Scalar>
LayerMatrices<Scalar> ZerosLike(const LayerMatrices<Scalar>& weights) {
  LayerMatrices<Scalar> out;
  for (const auto& w : weights) out.push_back(Matrix<Scalar>::Zero(w.rows(), w.cols()));
  return out;
}

/// Mean over samples of 1/2 ||y_hat - y||^2.
template <typename Scalar>
Scalar Loss(const Mlp<Scalar>& model, const Dataset<Scalar>& data) {
  CheckDataset(model.sizes, data);
  Scalar total(0);
  for (Eigen::Index s = 0; s < data.size(); ++s) {
    const auto ys = Forward<Scalar>(model.weights, data.x.row(s).transpose());
    total += Scalar(0.5) * (ys.back() - data.y.row(s).transpose()).squaredNorm();
  }
  return total / Scalar(data.size());
}

template <typename Scalar>
Scalar MeanSquaredError(const Mlp<Scalar>& model, const Dataset<Scalar>& data) {
  return Scalar(2) * Loss(model, data) / Scalar(data.y.cols());
}

/// Exact gradient of Loss by backpropagation.
template <typename Scalar>
LayerMatrices<Scalar> PlainGradient(const Mlp<Scalar>& model, const Dataset<Scalar>& data) {
  CheckDataset(model.sizes, data);
  auto grad = ZerosLike(model.weights);
  const Scalar inv_n = Scalar(1) / Scalar(data.size());
  for (Eigen::Index s = 0; s < data.size(); ++s) {
    const auto ys = Forward<Scalar>(model.weights, data.x.row(s).transpose());
    const auto g = Backprop<Scalar>(model.weights, ys, ys.back() - data.y.row(s).transpose(),
                                    model.num_layers() - 1);
    for (std::size_t l = 0; l < grad.size(); ++l) grad[l] += inv_n * g[l];
  }
  return grad;
}

/// r[l] holds r^(l+1) for hidden layers; ra and gamma have length n_L.
template <typename Scalar>
struct MaskSet {
  std::vector<Vector<Scalar>> r;
  Vector<Scalar> ra;
  Vector<Scalar> gamma;

  /// c = gamma o ra, the additive output offset per unit of alpha.
  Vector<Scalar> offset() const { return gamma.cwiseProduct(ra); }

  /// r uniform in [0.5, 2]; ra, gamma ~ N(0, additive_std^2).
  static MaskSet Sample(const std::vector<int>& sizes, RandomStream& rng,
                        double additive_std = 1.0) {
    CheckLayerSizes(sizes);
    MaskSet m;
    for (std::size_t l = 1; l + 1 < sizes.size(); ++l) {
      Vector<Scalar> v(sizes[l]);
      for (auto& x : v) x = Scalar(rng.Uniform(0.5, 2.0));
      m.r.push_back(std::move(v));
    }
    m.ra.resize(sizes.back());
    m.gamma.resize(sizes.back());
    for (auto& x : m.ra) x = Scalar(rng.Normal(0.0, additive_std));
    for (auto& x : m.gamma) x = Scalar(rng.Normal(0.0, additive_std));
    return m;
  }

  static MaskSet Identity(const std::vector<int>& sizes) {
    CheckLayerSizes(sizes);
    MaskSet m;
    for (std::size_t l = 1; l + 1 < sizes.size(); ++l) {
      m.r.push_back(Vector<Scalar>::Ones(sizes[l]));
    }
    m.ra = Vector<Scalar>::Zero(sizes.back());
    m.gamma = Vector<Scalar>::Zero(sizes.back());
    return m;
  }
};

/// Multiplicative masks R^(l), R_ij = r_i^(l) / r_j^(l-1) with r^(0) = r^(L) = 1.
template <typename Scalar>
LayerMatrices<Scalar> MaskMatrices(const std::vector<int>& sizes, const MaskSet<Scalar>& masks) {
  const std::size_t layers = sizes.size() - 1;
  if (masks.r.size() != layers - 1) throw std::invalid_argument("mask count does not match model");
  LayerMatrices<Scalar> out;
  for (std::size_t l = 0; l < layers; ++l) {
    const Vector<Scalar> num =
        l + 1 < layers ? masks.r[l] : Vector<Scalar>::Ones(sizes[l + 1]);
    const Vector<Scalar> den = l > 0 ? masks.r[l - 1] : Vector<Scalar>::Ones(sizes[l]);
    out.push_back(num * den.cwiseInverse().transpose());
  }
  return out;
}

template <typename Scalar>
struct EncryptedModel {
  std::vector<int> sizes;
  LayerMatrices<Scalar> weights;
  Vector<Scalar> ra;
};

template <typename Scalar>
EncryptedModel<Scalar> EncryptModel(const Mlp<Scalar>& model, const MaskSet<Scalar>& masks) {
  CheckLayerSizes(model.sizes);
  const auto rm = MaskMatrices(model.sizes, masks);
  EncryptedModel<Scalar> enc{model.sizes, {}, masks.ra};
  for (std::size_t l = 0; l < rm.size(); ++l) {
    enc.weights.push_back(rm[l].cwiseProduct(model.weights[l]));
  }
  enc.weights.back().colwise() += masks.offset();
  return enc;
}

/// Per layer: G, sigma_1..sigma_{n_L}, beta, each shaped like the weights.
template <typename Scalar>
struct EncryptedGradient {
  LayerMatrices<Scalar> g;
  std::vector<LayerMatrices<Scalar>> sigma;  // sigma[l][i]
  LayerMatrices<Scalar> beta;

  static EncryptedGradient Zero(const std::vector<int>& sizes) {
    EncryptedGradient out;
    const int out_dim = sizes.back();
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const Matrix<Scalar> z = Matrix<Scalar>::Zero(sizes[l + 1], sizes[l]);
      out.g.push_back(z);
      out.sigma.emplace_back(out_dim, z);
      out.beta.push_back(z);
    }
    return out;
  }

  /// Layer-major; within a layer G | sigma_1 .. sigma_{n_L} | beta, each row-major.
  std::vector<Scalar> Flatten() const {
    std::vector<Scalar> out;
    auto put = [&out](const Matrix<Scalar>& m) { out.insert(out.end(), m.data(), m.data() + m.size()); };
    for (std::size_t l = 0; l < g.size(); ++l) {
      put(g[l]);
      for (const auto& s : sigma[l]) put(s);
      put(beta[l]);
    }
    return out;
  }

  static EncryptedGradient Unflatten(const std::vector<int>& sizes, std::span<const Scalar> flat) {
    EncryptedGradient out = Zero(sizes);
    if (flat.size() != static_cast<std::size_t>(sizes.back() + 2) * ParameterCount(sizes)) {
      throw std::invalid_argument("flattened gradient has the wrong length");
    }
    std::size_t at = 0;
    auto take = [&](Matrix<Scalar>& m) {
      std::copy(flat.begin() + at, flat.begin() + at + m.size(), m.data());
      at += m.size();
    };
    for (std::size_t l = 0; l < out.g.size(); ++l) {
      take(out.g[l]);
      for (auto& s : out.sigma[l]) take(s);
      take(out.beta[l]);
    }
    return out;
  }

  EncryptedGradient& operator+=(const EncryptedGradient& o) {
    for (std::size_t l = 0; l < g.size(); ++l) {
      g[l] += o.g[l];
      for (std::size_t i = 0; i < sigma[l].size(); ++i) sigma[l][i] += o.sigma[l][i];
      beta[l] += o.beta[l];
    }
    return *this;
  }
  EncryptedGradient& operator*=(Scalar c) {
    for (std::size_t l = 0; l < g.size(); ++l) {
      g[l] *= c;
      for (auto& s : sigma[l]) s *= c;
      beta[l] *= c;
    }
    return *this;
  }
};

/// Flat vector length (n_L + 2) w.
inline std::size_t EncryptedGradientLength(const std::vector<int>& sizes) {
  return static_cast<std::size_t>(sizes.back() + 2) * ParameterCount(sizes);
}

/// Flat indices of the G block of `layer`, or of every layer when layer < 0.
inline std::vector<std::size_t> GradientBlockIndices(const std::vector<int>& sizes, int layer = -1) {
  std::vector<std::size_t> out;
  std::size_t at = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t n = static_cast<std::size_t>(sizes[l + 1]) * static_cast<std::size_t>(sizes[l]);
    if (layer < 0 || static_cast<std::size_t>(layer) == l) {
      for (std::size_t k = 0; k < n; ++k) out.push_back(at + k);
    }
    at += n * static_cast<std::size_t>(sizes.back() + 2);
  }
  return out;
}

/// Gradient material a data owner computes on the encrypted model.
template <typename Scalar>
EncryptedGradient<Scalar> ComputeEncryptedGradient(const EncryptedModel<Scalar>& enc,
                                                   const Dataset<Scalar>& data) {
  CheckDataset(enc.sizes, data);
  const int num_layers = static_cast<int>(enc.weights.size());
  const int out_dim = enc.sizes.back();
  if (enc.ra.size() != out_dim) throw std::invalid_argument("r^a has the wrong length");
  auto out = EncryptedGradient<Scalar>::Zero(enc.sizes);
  const Scalar inv_n = Scalar(1) / Scalar(data.size());
  const Vector<Scalar> ones = Vector<Scalar>::Ones(enc.sizes[num_layers - 1]);
  for (Eigen::Index s = 0; s < data.size(); ++s) {
    const auto ys = Forward<Scalar>(enc.weights, data.x.row(s).transpose());
    const Vector<Scalar> residual = ys.back() - data.y.row(s).transpose();
    const Scalar alpha = ys[num_layers - 1].sum();
    const auto g = Backprop<Scalar>(enc.weights, ys, residual, num_layers - 1);
    const auto dalpha = Backprop<Scalar>(enc.weights, ys, ones, num_layers - 2);
    for (int l = 0; l < num_layers; ++l) {
      out.g[l] += inv_n * g[l];
      out.beta[l] += (inv_n * alpha) * dalpha[l];
    }
    for (int i = 0; i < out_dim; ++i) {
      const auto dy = Backprop<Scalar>(enc.weights, ys, Vector<Scalar>::Unit(out_dim, i), num_layers - 1);
      for (int l = 0; l < num_layers; ++l) {
        out.sigma[l][i] += (inv_n * enc.ra[i]) * (alpha * dy[l] + residual[i] * dalpha[l]);
      }
    }
  }
  return out;
}

/// Recovers the plaintext gradient from an average of encrypted gradients.
template <typename Scalar>
LayerMatrices<Scalar> DecryptAggregate(const std::vector<int>& sizes,
                                       const EncryptedGradient<Scalar>& mean,
                                       const MaskSet<Scalar>& masks) {
  const auto rm = MaskMatrices(sizes, masks);
  const Scalar cc = masks.offset().squaredNorm();
  LayerMatrices<Scalar> out;
  for (std::size_t l = 0; l < rm.size(); ++l) {
    Matrix<Scalar> inner = mean.g[l] + cc * mean.beta[l];
    for (std::size_t i = 0; i < mean.sigma[l].size(); ++i) inner -= masks.gamma[i] * mean.sigma[l][i];
    out.push_back(rm[l].cwiseProduct(inner));
  }
  return out;
}

}  // namespace gradmarket

#endif  // GRADMARKET_PERTURB_H_

// Copyright 2026 The corpdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corpdist/metrics.hpp"

namespace corpdist {
namespace {

// Eigenvalues below this are treated as zero before taking square roots.
constexpr double kEigenClamp = 1e-10;

struct GaussianFit {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

GaussianFit fit_gaussian(const Corpus& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  const auto q = static_cast<Eigen::Index>(c.dim());
  Eigen::MatrixXd x(n, q);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto v = c.vector(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < q; ++j) x(i, j) = v[static_cast<std::size_t>(j)];
  }
  GaussianFit fit;
  fit.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - fit.mean.transpose();
  fit.cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  return fit;
}

Eigen::MatrixXd symmetric(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric(m));
  Eigen::VectorXd roots = eig.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    roots(i) = roots(i) < kEigenClamp ? 0.0 : std::sqrt(roots(i));
  }
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

// Tr((S_a S_b)^{1/2}) via the similar symmetric PSD matrix
// S_a^{1/2} S_b S_a^{1/2}, which shares the eigenvalues of S_a S_b.
double trace_sqrt_product(const Eigen::MatrixXd& sa, const Eigen::MatrixXd& sb) {
  const Eigen::MatrixXd root_a = psd_sqrt(sa);
  const Eigen::MatrixXd inner = symmetric(root_a * sb * root_a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(inner,
                                                     Eigen::EigenvaluesOnly);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    trace += std::sqrt(std::max(0.0, eig.eigenvalues()(i)));
  }
  return trace;
}

}  // namespace

double fid(const Corpus& a, const Corpus& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("FID needs at least two documents per corpus");
  }
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("corpora have different dimensions");
  }
  const GaussianFit fa = fit_gaussian(a);
  const GaussianFit fb = fit_gaussian(b);
  const double mean_term = (fa.mean - fb.mean).squaredNorm();
  // Both orders agree in exact arithmetic; averaging them keeps FID
  // symmetric bit for bit when a covariance is rank deficient.
  const double cross = 0.5 * (trace_sqrt_product(fa.cov, fb.cov) +
                              trace_sqrt_product(fb.cov, fa.cov));
  const double trace_term = fa.cov.trace() + fb.cov.trace() - 2.0 * cross;
  return std::max(0.0, mean_term + trace_term);
}

}  // namespace corpdist

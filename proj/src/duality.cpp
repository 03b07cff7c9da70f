// Copyright 2026 The mipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mipt/duality.hpp"

#include <cmath>

namespace mipt {

Mat4 spacetime_dual(const Mat4& u) {
  Mat4 d = Mat4::Zero();
  for (int i0 = 0; i0 < 2; ++i0)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int o0 = 0; o0 < 2; ++o0)
        for (int o1 = 0; o1 < 2; ++o1) d(2 * i1 + o1, 2 * i0 + o0) = u(2 * o0 + o1, 2 * i0 + i1);
  return d;
}

DualDecomposition polar_decompose(const Mat4& u_tilde) {
  constexpr double kKernelTol = 1e-7;
  DualDecomposition out;
  out.u_tilde = u_tilde;

  const Mat4 gram = (u_tilde.adjoint() * u_tilde / 4.0).eval();
  Eigen::SelfAdjointEigenSolver<Mat4> es(gram);
  Eigen::Vector4d lam = es.eigenvalues();
  for (int k = 0; k < 4; ++k) {
    if (lam(k) < 0.0) {
      if (lam(k) < -1e-12) throw Error("u_tilde^dag u_tilde has a negative eigenvalue");
      lam(k) = 0.0;
    }
    lam(k) = std::sqrt(lam(k));
  }
  const Mat4 q = es.eigenvectors();
  out.h = q * lam.cast<cplx>().asDiagonal() * q.adjoint();
  out.h = (0.5 * (out.h + out.h.adjoint())).eval();
  out.lambda_perp = lam(0);
  out.lambda_psi = lam(3);
  out.psi_theta = q.col(3);

  // v on the support of h: u_tilde h^{-1} / 2 column by column in the eigenbasis.
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> kernel(4, 0), image(4, 0);
  Mat4 v_eig = Mat4::Zero();  // v expressed as v * q
  for (int k = 0; k < 4; ++k) {
    if (lam(k) > kKernelTol) {
      v_eig.col(k) = u_tilde * q.col(k) / (2.0 * lam(k));
      image.conservativeResize(Eigen::NoChange, image.cols() + 1);
      image.col(image.cols() - 1) = v_eig.col(k);
    } else {
      kernel.conservativeResize(Eigen::NoChange, kernel.cols() + 1);
      kernel.col(kernel.cols() - 1) = q.col(k);
    }
  }
  if (kernel.cols() > 0) {
    out.kernel_completed = true;
    // Orthonormal basis r of the complement of the image.
    Eigen::Matrix<cplx, 4, Eigen::Dynamic> r;
    if (image.cols() == 0) {
      r = Mat4::Identity();
    } else {
      const Mat4 proj = Mat4::Identity() - image * image.adjoint();
      Eigen::SelfAdjointEigenSolver<Mat4> ps(proj);
      r = ps.eigenvectors().rightCols(kernel.cols());
    }
    // Unitary part of r^dag k: the rotation closest to identity when the
    // kernel already coincides with the missing image.
    const Eigen::MatrixXcd overlap = r.adjoint() * kernel;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();
    const Eigen::MatrixXcd mapped = r * w;
    int j = 0;
    for (int k = 0; k < 4; ++k)
      if (lam(k) <= kKernelTol) v_eig.col(k) = mapped.col(j++);
  }
  out.v = v_eig * q.adjoint();
  return out;
}

MeasurementStrength measurement_strength(double theta) {
  MeasurementStrength m;
  const double c = std::cos(theta);
  m.lambda_psi = 0.5 * std::sqrt(1.0 + 3.0 * c * c);
  m.lambda_perp = 0.5 * std::abs(std::sin(theta));
  const double s = 1.0 / std::sqrt(2.0);
  m.psi_theta = Vec4::Zero();
  m.psi_theta(0) = s * std::polar(1.0, -theta / 2.0);
  m.psi_theta(3) = s * std::polar(1.0, theta / 2.0);
  return m;
}

Mat2 v_prime(const DualDecomposition& d) {
  Mat2 m;
  m << d.v(0, 0), d.v(0, 3), d.v(3, 0), d.v(3, 3);
  return m;
}

}  // namespace mipt

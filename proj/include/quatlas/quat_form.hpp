#pragma once

#include "quatlas/isotypic.hpp"

#include <cstdint>
#include <string>

namespace quatlas {

/// Six-component quaternionic type: which of V S3H and V H are present, for
/// V = Lambda^3_0E (bit 4), K (bit 2), E (bit 1).
struct QuatType {
  std::uint8_t s3h = 0;
  std::uint8_t h = 0;
  std::string digits() const;  // e.g. "07"
  friend bool operator==(const QuatType&, const QuatType&) = default;
};

/// Omega = sum_A omega_A ^ omega_A (shuffle product).
Tensor fundamental_form(const QuatFrame& frame);

/// 2 sum_A nabla omega_A ^ omega_A.
Tensor nabla_Omega(const QuatFrame& frame, const TorsionTriple& t);
/// 2 sum over cyclic (A,B,C) of (B_(2) alpha_C - C_(2) alpha_B) ^ omega_A; no lambda terms.
Tensor nabla_Omega(const QuatFrame& frame, const TorsionParams& p);

struct OmegaSplit {
  Tensor s3h;
  Tensor h;
};

/// S3H = (4 dO - X) / 6,  H = (2 dO + X) / 6,  with
/// X = sum_A 4 alt(A_(1) A_(2) dO), alternation over the last four slots
/// (projection-normalized, hence the factor 4 = 24/3!).
OmegaSplit split_h_s3h(const QuatFrame& frame, const Tensor& nabla_omega_form);

/// Order-3 tensors sum_A A_(1) alpha_A^V (H-part) and the pair of differences
/// (S3H-part) for one isotypic type V.
struct QuatDeterminants {
  Tensor h;
  Tensor s3h_first;   // I_(1) a_I - J_(1) a_J
  Tensor s3h_second;  // J_(1) a_J - K_(1) a_K
};
QuatDeterminants quat_determinants(const QuatFrame& frame, const std::array<Tensor, 3>& alpha_v);

/// Quaternionic type from the alpha components.  Thresholds are relative to
/// the total alpha norm.  n >= 2.
QuatType quat_type(const ParamSpace& ps, const IsotypicDecomposition& alpha_iso,
                   const TorsionParams& p, double tol = 1e-8);

/// Xi = sum over cyclic (A,B,C) of (C_(2) b_B - B_(2) b_C) ^ omega_A.
Tensor xi_tensor(const QuatFrame& frame, const std::array<Tensor, 3>& beta);
/// sum_i Xi(X, Y, Z, e_i, I e_i).
Tensor xi_contraction(const QuatFrame& frame, const std::array<Tensor, 3>& beta);
/// Max-norm residual of sum_i Xi(X,Y,Z,e_i,Ie_i) = c (b_J(X,KY,Z) - b_K(X,JY,Z)),
/// c = 4n.
double xi_contraction_check(const QuatFrame& frame, const std::array<Tensor, 3>& beta);

/// Orthonormal basis of the span of all nabla Omega (image of the alpha
/// parameters).  Guarded to n <= 2: the order-5 ambient space grows as (4n)^5.
SubspaceBasis nabla_Omega_space(const ParamSpace& ps);

}  // namespace quatlas

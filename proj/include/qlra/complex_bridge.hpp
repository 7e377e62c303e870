#ifndef QLRA_COMPLEX_BRIDGE_HPP
#define QLRA_COMPLEX_BRIDGE_HPP

#include <Eigen/Dense>
#include <complex>

#include "qlra/qmatrix.hpp"

namespace qlra {

using CMatrix = Eigen::MatrixXcd;

// Writing Q = Q0 + Q1*j with Q0 = Qw + Qx*i and Q1 = Qy + Qz*i:
//
//   compact representation  Q_c  = [Q0; -conj(Q1)]            (2m x n)
//   full representation     chi_Q = [Q0, Q1; -conj(Q1), conj(Q0)]  (2m x 2n)
//
// chi is a ring homomorphism (chi_{PQ} = chi_P chi_Q, chi_{Q*} = chi_Q^*),
// and chi_Q = [Q_c, J*conj(Q_c)] with J = [0, -I; I, 0]. J is never formed
// densely; j_mul_conj applies it as a block swap with one sign flip.

CMatrix to_compact(const QMatrix& a);
CMatrix to_full(const QMatrix& a);

// Inverse of to_compact; rejects odd row counts.
QMatrix from_compact(const CMatrix& z);

// Returns J * conj(u) for 2m x k input. Every column v of the input satisfies
// <v, J conj(v)> = 0, and applying twice negates the argument.
CMatrix j_mul_conj(const CMatrix& u);

// Solves A X = B in the quaternion domain through the complex system
// chi_A Z = B_c. Square systems use partially pivoted LU; overdetermined
// systems (n1 > n2) return the Frobenius least-squares solution via
// column-pivoted QR. Throws SingularMatrixError when the reciprocal condition
// estimate of chi_A falls below 1e-14.
QMatrix solve_quaternion_linear(const QMatrix& a, const QMatrix& b);

}  // namespace qlra

#endif

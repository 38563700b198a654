#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "cca/dynamics.hpp"
#include "cca/effective.hpp"

namespace cca {

// Linear map on 4x4 operators over (|00>, |01>, |10>, |11>), stored as a
// 16x16 superoperator with row-major vectorization: column 4k+l holds
// vec(eps(|k><l|)).
struct GateChannel {
    Eigen::MatrixXcd super = Eigen::MatrixXcd::Zero(16, 16);

    Eigen::Matrix4cd apply(const Eigen::Matrix4cd& rho) const;
    // Probability lost outside the computational subspace for a maximally
    // mixed input.
    double leakage() const;
};

// Channel of a unitary acting on the computational space.
GateChannel unitary_channel(const Eigen::Matrix4cd& u);

// Choi matrix sum_kl |k><l| (x) eps(|k><l|); complete positivity shows up as
// nonnegative eigenvalues.
Eigen::MatrixXcd choi_matrix(const GateChannel& channel);

// Channel realized by the full model at time t: the four computational basis
// vectors are propagated in their excitation sectors and projected back to
// computational (x) vacuum (closed case), or the 16 operator-basis inputs are
// run through the master equation (open case).
GateChannel reconstruct_channel(const ModelParams& params, double t, bool open_system);

// Average gate fidelity over the 16 two-qubit Pauli operators:
// [sum_j tr(U U_j^dag U^dag eps(U_j)) + d^2] / [d^2 (d+1)], d = 4.
double average_fidelity(const GateChannel& channel, const Eigen::Matrix4cd& ideal);

// Process matrix over the modified Pauli basis {I, X, -iY, Z} tensor squared.
struct ChiMatrix {
    Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(16, 16);
};

ChiMatrix chi_tomography(const GateChannel& channel);

// Rebuild the superoperator from a chi matrix (for residual checks).
GateChannel channel_from_chi(const ChiMatrix& chi);

// tr(a b) / (tr a tr b).
double chi_overlap(const ChiMatrix& a, const ChiMatrix& b);

// The 16 modified-basis elements, ordering (II, IX, IY~, IZ, XI, ..., ZZ)
// with Y~ = -iY; and the 16 standard Pauli products in the same ordering.
const std::array<Eigen::Matrix4cd, 16>& modified_pauli_basis();
const std::array<Eigen::Matrix4cd, 16>& standard_pauli_basis();
std::string pauli_label(int index);  // e.g. "IX", "Y~Z"

}  // namespace cca

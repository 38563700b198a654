#pragma once

#include <Eigen/Dense>

#include "cca/chain.hpp"

namespace cca {

// Resolvent G0(z) = (z - H0)^{-1} of the defect-free m-site chain, assembled
// from the sine eigenbasis sin(i k pi / (m+1)) with normalization 2/(m+1).
// Throws PoleProximity when z is within 1e-12 of a free-chain eigenvalue.
Eigen::MatrixXd free_resolvent(int m, double j, double z);

// Resolvent of the chain with both boundary impurities, obtained from G0 by
// two rank-one updates: first the impurity at site M, then the one at site 1.
Eigen::MatrixXd dressed_resolvent(const ChainSpec& chain, double z);

// Spectrum of the impurity chain located as the roots of
// 1 - delta1 * G_{0M}(1,1)(z) = 0, bracketed between consecutive poles of
// G_{0M}(1,1) plus the out-of-band windows, and refined by bisection to
// 1e-12.  Falls back to diagonalization of the delta1-free chain when
// delta1 = 0.  Returns ascending energies.
Eigen::VectorXd find_spectrum_by_poles(const ChainSpec& chain);

// Unit-norm eigenvector for the dressed eigenvalue `energy` via the resolvent
// form of the Lippmann-Schwinger equation: solve (1 - G0(E) V) x = |E_k^0>
// with V the boundary-impurity potential and |E_k^0> the free sine vector of
// band index k (0-based).  Sign fixed by first-nonzero-entry-positive.
Eigen::VectorXd lippmann_schwinger_vector(const ChainSpec& chain, double energy, int band_index);

// Free sine eigenvector of band index k (0-based), entries
// sqrt(2/(m+1)) sin(i k pi / (m+1)).
Eigen::VectorXd free_chain_vector(int m, int band_index);

// Free-chain eigenvalue 2 j cos(k pi / (m+1)), k 0-based, ascending order.
double free_chain_energy(int m, double j, int band_index);

}  // namespace cca

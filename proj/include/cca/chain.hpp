#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cca/errors.hpp"

namespace cca {

// An M-site open chain with hopping j and on-site energies delta1, delta2 at
// the two end sites.  All energies are measured in units of j = 1.
struct ChainSpec {
    int m = 2;
    double j = 1.0;
    double delta1 = 0.0;
    double delta2 = 0.0;

    void validate() const;

    // Dense real symmetric tridiagonal representation.
    Eigen::MatrixXd matrix() const;

    bool mirror_symmetric() const { return delta1 == delta2; }
};

// Full spectrum of a chain.  energies ascending; vectors.col(k) is the
// orthonormal eigenvector of energies(k) with its first nonzero entry
// positive.  For mirror-symmetric chains the k-th vector (0-based) satisfies
// v(i) = (-1)^(m-1-k) v(m-1-i): with positive hopping the top state is
// nodeless and symmetric, and parity alternates downward from there.
struct ChainSpectrum {
    Eigen::VectorXd energies;
    Eigen::MatrixXd vectors;

    int size() const { return static_cast<int>(energies.size()); }
};

ChainSpectrum direct_diagonalize(const ChainSpec& chain);

// Fix the overall sign of a vector so its first entry of nonnegligible
// magnitude is positive.
void fix_vector_sign(Eigen::Ref<Eigen::VectorXd> v);

// The end-site spectral sums sum_k f_k^1 f_k^M / E_k (cross) and
// sum_k |f_k^i|^2 / E_k for i = 1 and i = M (local).
struct CouplingSums {
    double cross = 0.0;
    double local_1 = 0.0;
    double local_m = 0.0;
};

CouplingSums coupling_sums(const ChainSpectrum& spectrum);

// Closed forms for the symmetric-impurity chain: for odd M the cross sum is
// (-1)^((M-1)/2) / (2 delta) and both local sums are 1 / (2 delta); for even
// M the cross sum is (-1)^(M/2) j / (delta^2 - j^2) and the local sums are
// delta / (delta^2 - j^2).
CouplingSums closed_form_sums(int m, double j, double delta);

// One spectrum per impurity value, energies ascending.
struct DispersionRow {
    double delta;
    Eigen::VectorXd energies;
};

std::vector<DispersionRow> dispersion_scan(int m, double j, const std::vector<double>& deltas);

}  // namespace cca

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cca/model.hpp"

namespace cca {

// Reduced two-state model for the {|01>, |10>} pair: cross coupling with its
// parity sign plus the single-state energy shifts.
struct EffectiveModel {
    double coupling = 0.0;  // (-1)^((N+1)/2) * omega1 * omega2 / (2 delta) for odd N
    double stark1 = 0.0;    // shift written on |10>
    double stark2 = 0.0;    // shift written on |01>
    int n_cavities = 0;     // parity carrier
};

EffectiveModel build_effective(const ModelParams& params);

// sqrt(swap) gate duration T = pi * delta / (2 omega^2), in units of 1/j.
// Requires |omega1| = |omega2| != 0.
double gate_time(const ModelParams& params);

// Closed-form evolution of the (amp01, amp10) pair for time t.  The generator
// is the negative of the block written in EffectiveModel: that overall sign is
// fixed by second-order perturbation theory on the full Hamiltonian (the
// intermediate chain states lie above the pair), and it is the sign the full
// dynamics realizes.
struct PairAmplitudes {
    Complex amp01;
    Complex amp10;
};

PairAmplitudes evolve_effective(const EffectiveModel& model, Complex amp01, Complex amp10,
                                double t);

// The two-qubit sqrt(swap) unitary on basis (|00>, |01>, |10>, |11>).
Eigen::Matrix4cd ideal_sqrt_swap();

}  // namespace cca

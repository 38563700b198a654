#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <functional>
#include <optional>
#include <vector>

#include "cca/model.hpp"

namespace cca {

// exp(-i H t) psi0 for Hermitian H.  Dense eigendecomposition up to dimension
// 2000, Krylov propagation above.
Eigen::VectorXcd evolve_unitary(const SparseHermitian& h, const Eigen::VectorXcd& psi0, double t);

// Reusable propagator for repeated times on the same Hamiltonian.
class UnitaryPropagator {
public:
    explicit UnitaryPropagator(const SparseHermitian& h);
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;
    int dimension() const { return dim_; }

private:
    int dim_;
    bool dense_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
    Eigen::SparseMatrix<Complex> sparse_;
};

double state_fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& target);

// Direct sum of the 0-, 1-, and 2-excitation sectors with index offsets, the
// arena for density-operator evolution.
struct FullBasis {
    int n_cavities = 0;
    std::vector<SectorBasis> sectors;  // sectors 0, 1, 2
    std::vector<int> offsets;          // starting index of each sector

    int dimension() const;
    int index_of(int sector, const BasisState& s) const;
};

FullBasis make_full_basis(int n_cavities);

SparseHermitian build_full_hamiltonian(const ModelParams& params, const FullBasis& basis);

// Collapse operators: sqrt(kappa) a_i per cavity plus sqrt(gamma/2) sigma_0e
// and sqrt(gamma/2) sigma_1e per atom.
std::vector<Eigen::SparseMatrix<Complex>> jump_operators(const ModelParams& params,
                                                         const FullBasis& basis);

enum class LindbladMethod {
    Auto,    // RK4 for short integrations, Krylov propagation otherwise
    RungeKutta,
    Krylov,
};

struct LindbladOptions {
    LindbladMethod method = LindbladMethod::Auto;
    double tol = 1e-8;       // convergence threshold between halved-step runs
    int initial_steps = 64;  // starting step count for the halving sequence
    int max_doublings = 24;
};

// Master-equation evolution of rho0 (a matrix over the full <=2-excitation
// basis) for time t.  The fixed-step fourth-order integrator doubles its step
// count until two successive runs agree to options.tol in trace norm; for
// integration lengths where that is prohibitively slow the Krylov propagator
// on the vectorized generator is used instead, at tolerance 1e-10.
Eigen::MatrixXcd evolve_lindblad(const ModelParams& params, const Eigen::MatrixXcd& rho0,
                                 double t, const LindbladOptions& options = {});

// Same evolution, reporting the state at each requested time (ascending,
// starting at >= 0).
std::vector<Eigen::MatrixXcd> evolve_lindblad_samples(const ModelParams& params,
                                                      const Eigen::MatrixXcd& rho0,
                                                      const std::vector<double>& times,
                                                      const LindbladOptions& options = {});

// Vectorized generator (row-major vec) of the master equation; used by the
// Krylov path and as a test oracle via dense exponentiation.
Eigen::SparseMatrix<Complex> build_liouvillian(const ModelParams& params, const FullBasis& basis);

// Single fixed-step fourth-order integration with `steps` steps; exposed for
// the integrator-order checks.
Eigen::MatrixXcd lindblad_rk4_fixed(const ModelParams& params, const Eigen::MatrixXcd& rho0,
                                    double t, int steps);

}  // namespace cca

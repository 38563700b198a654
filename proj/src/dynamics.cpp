#include "cca/dynamics.hpp"

#include <cmath>
#include <string>

#include "cca/expm.hpp"

namespace cca {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

UnitaryPropagator::UnitaryPropagator(const SparseHermitian& h) : dim_(h.dimension()) {
    dense_ = dim_ <= 2000;
    if (dense_) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
        energies_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    } else {
        sparse_ = h.sparse();
    }
}

Eigen::VectorXcd UnitaryPropagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != dim_) throw DimensionMismatch("UnitaryPropagator: state size mismatch");
    if (dense_) {
        Eigen::VectorXcd coeff = vectors_.adjoint() * psi0;
        for (int k = 0; k < dim_; ++k) coeff(k) *= std::exp(-kI * energies_(k) * t);
        return vectors_ * coeff;
    }
    Eigen::SparseMatrix<Complex> gen = sparse_;
    gen *= -kI;
    return expm_multiply(gen, t, psi0, 1e-10);
}

Eigen::VectorXcd evolve_unitary(const SparseHermitian& h, const Eigen::VectorXcd& psi0, double t) {
    return UnitaryPropagator(h).evolve(psi0, t);
}

double state_fidelity(const Eigen::VectorXcd& psi, const Eigen::VectorXcd& target) {
    if (psi.size() != target.size()) throw DimensionMismatch("state_fidelity: size mismatch");
    return std::norm(target.dot(psi));
}

int FullBasis::dimension() const {
    return offsets.back() + sectors.back().dimension();
}

int FullBasis::index_of(int sector, const BasisState& s) const {
    return offsets.at(sector) + sectors.at(sector).index_of(s);
}

FullBasis make_full_basis(int n_cavities) {
    FullBasis basis;
    basis.n_cavities = n_cavities;
    int offset = 0;
    for (int sector = 0; sector <= 2; ++sector) {
        basis.sectors.push_back(enumerate_sector(n_cavities, sector));
        basis.offsets.push_back(offset);
        offset += basis.sectors.back().dimension();
    }
    return basis;
}

SparseHermitian build_full_hamiltonian(const ModelParams& params, const FullBasis& basis) {
    SparseHermitian h(basis.dimension());
    for (int sector = 0; sector <= 2; ++sector) {
        const SparseHermitian block = build_hamiltonian(params, basis.sectors[sector]);
        const int off = basis.offsets[sector];
        for (const auto& [rc, v] : block.entries()) {
            if (rc.first <= rc.second) continue;  // add() fills both triangles
            h.add(off + rc.first, off + rc.second, v);
        }
        for (const auto& [rc, v] : block.entries()) {
            if (rc.first == rc.second) h.add(off + rc.first, off + rc.second, v);
        }
    }
    return h;
}

std::vector<Eigen::SparseMatrix<Complex>> jump_operators(const ModelParams& params,
                                                         const FullBasis& basis) {
    params.validate();
    const int d = basis.dimension();
    const int n = basis.n_cavities;
    std::vector<Eigen::SparseMatrix<Complex>> ops;
    using Triplets = std::vector<Eigen::Triplet<Complex>>;

    auto finish = [&](Triplets& trip) {
        Eigen::SparseMatrix<Complex> op(d, d);
        op.setFromTriplets(trip.begin(), trip.end());
        ops.push_back(std::move(op));
    };

    if (params.kappa > 0.0) {
        const double amp = std::sqrt(params.kappa);
        for (int cav = 0; cav < n; ++cav) {
            Triplets trip;
            for (int sector = 1; sector <= 2; ++sector) {
                const SectorBasis& sb = basis.sectors[sector];
                for (int a = 0; a < sb.dimension(); ++a) {
                    const BasisState& s = sb.states[a];
                    if (s.photons[cav] == 0) continue;
                    BasisState t = s;
                    t.photons[cav] -= 1;
                    trip.emplace_back(basis.index_of(sector - 1, t),
                                      basis.offsets[sector] + a,
                                      amp * std::sqrt(double(s.photons[cav])));
                }
            }
            finish(trip);
        }
    }
    if (params.gamma > 0.0) {
        const double amp = std::sqrt(0.5 * params.gamma);
        for (int atom = 0; atom < 2; ++atom) {
            // sigma_0e: |e> -> |0>, lowers the excitation count.
            Triplets to_zero;
            // sigma_1e: |e> -> |1>, excitation preserving.
            Triplets to_one;
            for (int sector = 1; sector <= 2; ++sector) {
                const SectorBasis& sb = basis.sectors[sector];
                for (int a = 0; a < sb.dimension(); ++a) {
                    const BasisState& s = sb.states[a];
                    const Level level = (atom == 0) ? s.atom1 : s.atom2;
                    if (level != Level::Excited) continue;
                    BasisState t0 = s, t1 = s;
                    (atom == 0 ? t0.atom1 : t0.atom2) = Level::Zero;
                    (atom == 0 ? t1.atom1 : t1.atom2) = Level::One;
                    to_zero.emplace_back(basis.index_of(sector - 1, t0),
                                         basis.offsets[sector] + a, amp);
                    to_one.emplace_back(basis.index_of(sector, t1),
                                        basis.offsets[sector] + a, amp);
                }
            }
            finish(to_zero);
            finish(to_one);
        }
    }
    return ops;
}

namespace {

struct LindbladGenerator {
    Eigen::SparseMatrix<Complex> drift;  // -iH - (1/2) sum L^dag L
    Eigen::SparseMatrix<Complex> drift_adj;
    std::vector<Eigen::SparseMatrix<Complex>> jumps;
    std::vector<Eigen::SparseMatrix<Complex>> jumps_adj;

    LindbladGenerator(const ModelParams& params, const FullBasis& basis) {
        const SparseHermitian h = build_full_hamiltonian(params, basis);
        drift = h.sparse();
        drift *= -kI;
        jumps = jump_operators(params, basis);
        for (const auto& l : jumps) {
            Eigen::SparseMatrix<Complex> ldl = l.adjoint() * l;
            drift -= Complex(0.5, 0.0) * ldl;
            jumps_adj.emplace_back(l.adjoint());
        }
        drift_adj = drift.adjoint();
    }

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd out = drift * rho;
        out += rho * drift_adj;
        for (size_t i = 0; i < jumps.size(); ++i) {
            out += jumps[i] * (rho * jumps_adj[i]);
        }
        return out;
    }
};

double trace_norm(const Eigen::MatrixXcd& a) {
    return a.jacobiSvd().singularValues().sum();
}

Eigen::SparseMatrix<Complex> sparse_kron(const Eigen::SparseMatrix<Complex>& a,
                                         const Eigen::SparseMatrix<Complex>& b) {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (Eigen::SparseMatrix<Complex>::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (Eigen::SparseMatrix<Complex>::InnerIterator ib(b, kb); ib; ++ib) {
                    trip.emplace_back(ia.row() * b.rows() + ib.row(),
                                      ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
                }
            }
        }
    }
    Eigen::SparseMatrix<Complex> out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

}  // namespace

Eigen::SparseMatrix<Complex> build_liouvillian(const ModelParams& params, const FullBasis& basis) {
    const int d = basis.dimension();
    Eigen::SparseMatrix<Complex> ident(d, d);
    ident.setIdentity();
    const Eigen::SparseMatrix<Complex> h = build_full_hamiltonian(params, basis).sparse();
    // Row-major vectorization: vec(A rho B) = (A kron B^T) vec(rho).
    Eigen::SparseMatrix<Complex> super =
        -kI * (sparse_kron(h, ident) - sparse_kron(ident, Eigen::SparseMatrix<Complex>(h.transpose())));
    for (const auto& l : jump_operators(params, basis)) {
        const Eigen::SparseMatrix<Complex> ldl = l.adjoint() * l;
        super += sparse_kron(l, Eigen::SparseMatrix<Complex>(l.conjugate()));
        super -= Complex(0.5, 0.0) * sparse_kron(ldl, ident);
        super -= Complex(0.5, 0.0) *
                 sparse_kron(ident, Eigen::SparseMatrix<Complex>(ldl.transpose()));
    }
    return super;
}

Eigen::MatrixXcd lindblad_rk4_fixed(const ModelParams& params, const Eigen::MatrixXcd& rho0,
                                    double t, int steps) {
    const FullBasis basis = make_full_basis(params.n_cavities);
    if (rho0.rows() != basis.dimension() || rho0.cols() != basis.dimension()) {
        throw DimensionMismatch("lindblad_rk4_fixed: rho dimension mismatch");
    }
    const LindbladGenerator gen(params, basis);
    const double h = t / steps;
    Eigen::MatrixXcd rho = rho0;
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXcd k1 = gen.apply(rho);
        const Eigen::MatrixXcd k2 = gen.apply(rho + 0.5 * h * k1);
        const Eigen::MatrixXcd k3 = gen.apply(rho + 0.5 * h * k2);
        const Eigen::MatrixXcd k4 = gen.apply(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

namespace {

// Characteristic frequency-time product used to route between the fixed-step
// integrator and the Krylov propagator.
double integration_hardness(const ModelParams& params, double t) {
    double scale = 2.0 * params.j + params.g + std::abs(params.delta) +
                   std::abs(params.omega1) + std::abs(params.omega2) + params.kappa +
                   params.gamma;
    return std::abs(t) * scale;
}

Eigen::MatrixXcd evolve_krylov(const Eigen::SparseMatrix<Complex>& super,
                               const Eigen::MatrixXcd& rho0, double t) {
    const int d = static_cast<int>(rho0.rows());
    Eigen::VectorXcd v(d * d);
    for (int i = 0; i < d; ++i) v.segment(i * d, d) = rho0.row(i).transpose();
    v = expm_multiply(super, t, v, 1e-10);
    Eigen::MatrixXcd out(d, d);
    for (int i = 0; i < d; ++i) out.row(i) = v.segment(i * d, d).transpose();
    return out;
}

}  // namespace

Eigen::MatrixXcd evolve_lindblad(const ModelParams& params, const Eigen::MatrixXcd& rho0,
                                 double t, const LindbladOptions& options) {
    params.validate();
    if (t == 0.0) return rho0;
    LindbladMethod method = options.method;
    if (method == LindbladMethod::Auto) {
        method = integration_hardness(params, t) > 300.0 ? LindbladMethod::Krylov
                                                         : LindbladMethod::RungeKutta;
    }
    if (method == LindbladMethod::Krylov) {
        const FullBasis basis = make_full_basis(params.n_cavities);
        if (rho0.rows() != basis.dimension()) {
            throw DimensionMismatch("evolve_lindblad: rho dimension mismatch");
        }
        return evolve_krylov(build_liouvillian(params, basis), rho0, t);
    }
    int steps = options.initial_steps;
    Eigen::MatrixXcd coarse = lindblad_rk4_fixed(params, rho0, t, steps);
    for (int iter = 0; iter < options.max_doublings; ++iter) {
        steps *= 2;
        Eigen::MatrixXcd fine = lindblad_rk4_fixed(params, rho0, t, steps);
        if (trace_norm(fine - coarse) < options.tol) return fine;
        coarse.swap(fine);
    }
    throw ToleranceNotMet("evolve_lindblad: step halving did not converge to " +
                          std::to_string(options.tol));
}

std::vector<Eigen::MatrixXcd> evolve_lindblad_samples(const ModelParams& params,
                                                      const Eigen::MatrixXcd& rho0,
                                                      const std::vector<double>& times,
                                                      const LindbladOptions& options) {
    params.validate();
    LindbladMethod method = options.method;
    if (method == LindbladMethod::Auto && !times.empty()) {
        method = integration_hardness(params, times.back()) > 300.0 ? LindbladMethod::Krylov
                                                                    : LindbladMethod::RungeKutta;
    }
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(times.size());
    if (method == LindbladMethod::Krylov) {
        const FullBasis basis = make_full_basis(params.n_cavities);
        const Eigen::SparseMatrix<Complex> super = build_liouvillian(params, basis);
        Eigen::MatrixXcd rho = rho0;
        double prev = 0.0;
        for (double t : times) {
            if (t < prev) throw NumericError("evolve_lindblad_samples: times must ascend");
            rho = evolve_krylov(super, rho, t - prev);
            prev = t;
            out.push_back(rho);
        }
        return out;
    }
    LindbladOptions opts = options;
    opts.method = LindbladMethod::RungeKutta;
    Eigen::MatrixXcd rho = rho0;
    double prev = 0.0;
    for (double t : times) {
        if (t < prev) throw NumericError("evolve_lindblad_samples: times must ascend");
        if (t > prev) rho = evolve_lindblad(params, rho, t - prev, opts);
        prev = t;
        out.push_back(rho);
    }
    return out;
}

}  // namespace cca

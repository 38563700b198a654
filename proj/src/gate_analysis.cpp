#include "cca/gate_analysis.hpp"

#include <cmath>

namespace cca {

namespace {

const Complex kI(0.0, 1.0);

int vec_index(int row, int col) { return 4 * row + col; }

std::array<Eigen::Matrix2cd, 4> single_qubit_basis(bool modified) {
    std::array<Eigen::Matrix2cd, 4> b;
    b[0] = Eigen::Matrix2cd::Identity();
    b[1] << 0, 1, 1, 0;
    if (modified) {
        b[2] << 0, -1, 1, 0;  // -iY
    } else {
        b[2] << 0, -kI, kI, 0;
    }
    b[3] << 1, 0, 0, -1;
    return b;
}

std::array<Eigen::Matrix4cd, 16> tensor_basis(bool modified) {
    const auto single = single_qubit_basis(modified);
    std::array<Eigen::Matrix4cd, 16> out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            Eigen::Matrix4cd m;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    m.block<2, 2>(2 * i, 2 * j) = single[a](i, j) * single[b];
                }
            }
            out[4 * a + b] = m;
        }
    }
    return out;
}

}  // namespace

const std::array<Eigen::Matrix4cd, 16>& modified_pauli_basis() {
    static const auto basis = tensor_basis(true);
    return basis;
}

const std::array<Eigen::Matrix4cd, 16>& standard_pauli_basis() {
    static const auto basis = tensor_basis(false);
    return basis;
}

std::string pauli_label(int index) {
    static const char* names[] = {"I", "X", "Y~", "Z"};
    return std::string(names[index / 4]) + names[index % 4];
}

Eigen::Matrix4cd GateChannel::apply(const Eigen::Matrix4cd& rho) const {
    Eigen::VectorXcd v(16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) v(vec_index(i, j)) = rho(i, j);
    }
    v = super * v;
    Eigen::Matrix4cd out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) out(i, j) = v(vec_index(i, j));
    }
    return out;
}

double GateChannel::leakage() const {
    const Eigen::Matrix4cd out = apply(0.25 * Eigen::Matrix4cd::Identity());
    return 1.0 - out.trace().real();
}

GateChannel unitary_channel(const Eigen::Matrix4cd& u) {
    GateChannel ch;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            const Eigen::Matrix4cd out = u.col(k) * u.col(l).adjoint();
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    ch.super(vec_index(i, j), vec_index(k, l)) = out(i, j);
                }
            }
        }
    }
    return ch;
}

Eigen::MatrixXcd choi_matrix(const GateChannel& channel) {
    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(16, 16);
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            Eigen::Matrix4cd unit = Eigen::Matrix4cd::Zero();
            unit(k, l) = 1.0;
            const Eigen::Matrix4cd out = channel.apply(unit);
            choi.block<4, 4>(4 * k, 4 * l) = out;
        }
    }
    return choi;
}

GateChannel reconstruct_channel(const ModelParams& params, double t, bool open_system) {
    params.validate();
    if (t <= 0.0) throw NumericError("reconstruct_channel: t must be > 0");
    const int n = params.n_cavities;
    GateChannel ch;
    static const char* labels[] = {"00", "01", "10", "11"};

    if (!open_system) {
        // Transfer matrix K_im = <comp_i (x) vac | psi_m(t)>; sectors evolve
        // independently so K is built per sector.
        Eigen::Matrix4cd k_mat = Eigen::Matrix4cd::Zero();
        const FullBasis basis = make_full_basis(n);
        for (int sector = 0; sector <= 2; ++sector) {
            std::vector<int> members;
            for (int m = 0; m < 4; ++m) {
                if (embed_computational_state(labels[m], n).sector == sector) members.push_back(m);
            }
            const SectorBasis& sb = basis.sectors[sector];
            const UnitaryPropagator prop(build_hamiltonian(params, sb));
            for (int m : members) {
                Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(sb.dimension());
                psi0(sb.index_of(embed_computational_state(labels[m], n).state)) = 1.0;
                const Eigen::VectorXcd psi = prop.evolve(psi0, t);
                for (int i : members) {
                    const int pos = sb.index_of(embed_computational_state(labels[i], n).state);
                    k_mat(i, m) = psi(pos);
                }
            }
        }
        for (int k = 0; k < 4; ++k) {
            for (int l = 0; l < 4; ++l) {
                const Eigen::Matrix4cd out = k_mat.col(k) * k_mat.col(l).adjoint();
                for (int i = 0; i < 4; ++i) {
                    for (int j = 0; j < 4; ++j) {
                        ch.super(vec_index(i, j), vec_index(k, l)) = out(i, j);
                    }
                }
            }
        }
        return ch;
    }

    const FullBasis basis = make_full_basis(n);
    const int d = basis.dimension();
    std::array<int, 4> comp_index;
    for (int m = 0; m < 4; ++m) {
        const EmbeddedState e = embed_computational_state(labels[m], n);
        comp_index[m] = basis.index_of(e.sector, e.state);
    }
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(d, d);
            rho0(comp_index[k], comp_index[l]) = 1.0;
            const Eigen::MatrixXcd rho = evolve_lindblad(params, rho0, t);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    ch.super(vec_index(i, j), vec_index(k, l)) = rho(comp_index[i], comp_index[j]);
                }
            }
        }
    }
    return ch;
}

double average_fidelity(const GateChannel& channel, const Eigen::Matrix4cd& ideal) {
    const auto& paulis = standard_pauli_basis();
    Complex acc = 0.0;
    for (const auto& u_j : paulis) {
        const Eigen::Matrix4cd mapped = channel.apply(u_j);
        acc += (ideal * u_j.adjoint() * ideal.adjoint() * mapped).trace();
    }
    const double d = 4.0;
    return (acc.real() + d * d) / (d * d * (d + 1.0));
}

ChiMatrix chi_tomography(const GateChannel& channel) {
    const auto& basis = modified_pauli_basis();
    ChiMatrix chi;
    // chi_mn = tr[(E_m kron conj(E_n))^dag S] / 16, from orthogonality of the
    // basis superoperators.
    for (int m = 0; m < 16; ++m) {
        for (int n = 0; n < 16; ++n) {
            Complex acc = 0.0;
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    for (int k = 0; k < 4; ++k) {
                        for (int l = 0; l < 4; ++l) {
                            acc += std::conj(basis[m](i, k) * std::conj(basis[n](j, l))) *
                                   channel.super(vec_index(i, j), vec_index(k, l));
                        }
                    }
                }
            }
            chi.coeff(m, n) = acc / 16.0;
        }
    }
    return chi;
}

GateChannel channel_from_chi(const ChiMatrix& chi) {
    const auto& basis = modified_pauli_basis();
    GateChannel ch;
    for (int m = 0; m < 16; ++m) {
        for (int n = 0; n < 16; ++n) {
            if (chi.coeff(m, n) == Complex(0.0, 0.0)) continue;
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    for (int k = 0; k < 4; ++k) {
                        for (int l = 0; l < 4; ++l) {
                            ch.super(vec_index(i, j), vec_index(k, l)) +=
                                chi.coeff(m, n) * basis[m](i, k) * std::conj(basis[n](j, l));
                        }
                    }
                }
            }
        }
    }
    return ch;
}

double chi_overlap(const ChiMatrix& a, const ChiMatrix& b) {
    const double tra = a.coeff.trace().real();
    const double trb = b.coeff.trace().real();
    if (std::abs(tra) < 1e-14 || std::abs(trb) < 1e-14) {
        throw ZeroTrace("chi_overlap: chi matrix has zero trace");
    }
    return (a.coeff * b.coeff).trace().real() / (tra * trb);
}

}  // namespace cca

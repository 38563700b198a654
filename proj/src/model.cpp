#include "cca/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cca {

void ModelParams::validate() const {
    if (n_cavities < 1) throw NumericError("ModelParams: n_cavities must be >= 1");
    if (g <= 0.0) throw NumericError("ModelParams: g must be > 0");
    if (j <= 0.0) throw NumericError("ModelParams: j must be > 0");
    if (kappa < 0.0) throw NumericError("ModelParams: kappa must be >= 0");
    if (gamma < 0.0) throw NumericError("ModelParams: gamma must be >= 0");
}

bool ModelParams::weak_drive() const {
    validate();
    // Spectrum of the undriven sector-1 atom-cavity block.
    const int m = n_cavities + 2;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    h(0, 0) = delta;
    h(m - 1, m - 1) = delta;
    h(0, 1) = h(1, 0) = g;
    h(m - 1, m - 2) = h(m - 2, m - 1) = g;
    for (int i = 1; i + 2 < m; ++i) h(i, i + 1) = h(i + 1, i) = j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd e = solver.eigenvalues();
    double scale = std::abs(e(0));
    for (int k = 0; k < m; ++k) scale = std::min(scale, std::abs(e(k)));
    for (int k = 0; k + 1 < m; ++k) scale = std::min(scale, e(k + 1) - e(k));
    return std::max(std::abs(omega1), std::abs(omega2)) < 0.1 * scale;
}

int BasisState::excitation() const {
    int n = level_excitation(atom1) + level_excitation(atom2);
    for (auto p : photons) n += p;
    return n;
}

std::string BasisState::label() const {
    static const char* names = "01e";
    std::ostringstream os;
    os << '|' << names[static_cast<int>(atom1)] << names[static_cast<int>(atom2)] << ';';
    for (size_t i = 0; i < photons.size(); ++i) {
        if (i) os << ',';
        os << static_cast<int>(photons[i]);
    }
    os << '>';
    return os.str();
}

int SectorBasis::index_of(const BasisState& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw NumericError("SectorBasis: state not in sector " + std::to_string(sector));
    return it->second;
}

namespace {

BasisState make_state(Level a1, Level a2, int n_cavities) {
    BasisState s;
    s.atom1 = a1;
    s.atom2 = a2;
    s.photons.assign(n_cavities, 0);
    return s;
}

}  // namespace

SectorBasis enumerate_sector(int n_cavities, int sector) {
    if (n_cavities < 1) throw NumericError("enumerate_sector: n_cavities must be >= 1");
    if (sector < 0 || sector > 2) {
        throw UnsupportedSector("enumerate_sector: sector " + std::to_string(sector) +
                                " not supported (only 0, 1, 2)");
    }
    SectorBasis basis;
    basis.sector = sector;
    basis.n_cavities = n_cavities;
    const int n = n_cavities;
    auto push = [&basis](BasisState s) {
        basis.index.emplace(s, static_cast<int>(basis.states.size()));
        basis.states.push_back(std::move(s));
    };
    if (sector == 0) {
        push(make_state(Level::Zero, Level::Zero, n));
    } else if (sector == 1) {
        push(make_state(Level::One, Level::Zero, n));
        push(make_state(Level::Excited, Level::Zero, n));
        for (int k = 0; k < n; ++k) {
            BasisState s = make_state(Level::Zero, Level::Zero, n);
            s.photons[k] = 1;
            push(s);
        }
        push(make_state(Level::Zero, Level::Excited, n));
        push(make_state(Level::Zero, Level::One, n));
    } else {
        // Atomic-pair states first.
        push(make_state(Level::One, Level::One, n));
        push(make_state(Level::Excited, Level::One, n));
        push(make_state(Level::One, Level::Excited, n));
        push(make_state(Level::Excited, Level::Excited, n));
        // One photon with one atomic excitation.
        const std::pair<Level, Level> atom_configs[] = {
            {Level::One, Level::Zero},
            {Level::Excited, Level::Zero},
            {Level::Zero, Level::Excited},
            {Level::Zero, Level::One},
        };
        for (const auto& [a1, a2] : atom_configs) {
            for (int k = 0; k < n; ++k) {
                BasisState s = make_state(a1, a2, n);
                s.photons[k] = 1;
                push(s);
            }
        }
        // Two photons, atoms in (0,0); cavity pairs (i <= j) in ascending order.
        for (int i = 0; i < n; ++i) {
            for (int k = i; k < n; ++k) {
                BasisState s = make_state(Level::Zero, Level::Zero, n);
                s.photons[i] += 1;
                s.photons[k] += 1;
                push(s);
            }
        }
    }
    return basis;
}

void SparseHermitian::add(int row, int col, Complex value) {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_) {
        throw DimensionMismatch("SparseHermitian::add: index out of range");
    }
    if (value == Complex(0.0, 0.0)) return;
    if (row == col) {
        if (value.imag() != 0.0) throw NumericError("SparseHermitian: diagonal entries must be real");
        entries_[{row, col}] += value;
    } else {
        entries_[{row, col}] += value;
        entries_[{col, row}] += std::conj(value);
    }
}

Eigen::MatrixXcd SparseHermitian::dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& [rc, v] : entries_) h(rc.first, rc.second) = v;
    return h;
}

Eigen::SparseMatrix<Complex> SparseHermitian::sparse() const {
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(entries_.size());
    for (const auto& [rc, v] : entries_) trip.emplace_back(rc.first, rc.second, v);
    Eigen::SparseMatrix<Complex> s(dim_, dim_);
    s.setFromTriplets(trip.begin(), trip.end());
    return s;
}

bool SparseHermitian::is_real() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& e) { return e.second.imag() == 0.0; });
}

std::string SparseHermitian::coordinate_dump() const {
    std::ostringstream os;
    char buf[96];
    for (const auto& [rc, v] : entries_) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", rc.first, rc.second,
                      v.real(), v.imag());
        os << buf;
    }
    return os.str();
}

SparseHermitian build_hamiltonian(const ModelParams& params, const SectorBasis& basis) {
    params.validate();
    if (basis.n_cavities != params.n_cavities) {
        throw DimensionMismatch("build_hamiltonian: basis cavity count does not match params");
    }
    const int n = params.n_cavities;
    SparseHermitian h(basis.dimension());
    for (int a = 0; a < basis.dimension(); ++a) {
        const BasisState& s = basis.states[a];
        // Detuning of |e>.
        const int n_e = (s.atom1 == Level::Excited ? 1 : 0) + (s.atom2 == Level::Excited ? 1 : 0);
        if (n_e > 0) h.add(a, a, params.delta * n_e);
        // Classical drives |e><1|; the conjugate comes from the states where
        // the atom is excited, so only the raising direction is applied here.
        if (s.atom1 == Level::One) {
            BasisState t = s;
            t.atom1 = Level::Excited;
            h.add(basis.index_of(t), a, params.omega1);
        }
        if (s.atom2 == Level::One) {
            BasisState t = s;
            t.atom2 = Level::Excited;
            h.add(basis.index_of(t), a, params.omega2);
        }
        // Atom-cavity exchange g a|e><0| + h.c.: atom 1 with cavity 1, atom 2
        // with cavity N.  Raising direction: |0>, n photons -> |e>, n-1.
        if (s.atom1 == Level::Zero && s.photons[0] > 0) {
            BasisState t = s;
            t.atom1 = Level::Excited;
            t.photons[0] -= 1;
            h.add(basis.index_of(t), a, params.g * std::sqrt(double(s.photons[0])));
        }
        if (s.atom2 == Level::Zero && s.photons[n - 1] > 0) {
            BasisState t = s;
            t.atom2 = Level::Excited;
            t.photons[n - 1] -= 1;
            h.add(basis.index_of(t), a, params.g * std::sqrt(double(s.photons[n - 1])));
        }
        // Photon hopping; apply a_k^dag a_{k+1} only, h.c. is implied.
        for (int k = 0; k + 1 < n; ++k) {
            if (s.photons[k + 1] > 0) {
                BasisState t = s;
                t.photons[k] += 1;
                t.photons[k + 1] -= 1;
                const double amp = params.j * std::sqrt(double(s.photons[k + 1]) *
                                                        double(t.photons[k]));
                h.add(basis.index_of(t), a, amp);
            }
        }
    }
    return h;
}

EmbeddedState embed_computational_state(const std::string& label, int n_cavities) {
    if (label == "00") return {0, make_state(Level::Zero, Level::Zero, n_cavities)};
    if (label == "01") return {1, make_state(Level::Zero, Level::One, n_cavities)};
    if (label == "10") return {1, make_state(Level::One, Level::Zero, n_cavities)};
    if (label == "11") return {2, make_state(Level::One, Level::One, n_cavities)};
    throw NumericError("embed_computational_state: unknown label '" + label + "'");
}

}  // namespace cca

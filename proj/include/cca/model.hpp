#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cca/chain.hpp"
#include "cca/errors.hpp"

namespace cca {

using Complex = std::complex<double>;

// Physical configuration of the two-atom N-cavity array, in units of the
// photon hopping j = 1.
struct ModelParams {
    int n_cavities = 5;
    double g = 1.0;       // atom-cavity coupling
    double j = 1.0;       // photon hopping
    double delta = 1.0;   // one-photon detuning of |e>
    double omega1 = 0.0;  // classical drive on atom 1, real
    double omega2 = 0.0;  // classical drive on atom 2, real
    double kappa = 0.0;   // cavity decay rate
    double gamma = 0.0;   // total atomic decay rate from |e>

    void validate() const;

    // True when max(|omega1|, |omega2|) is below 0.1 times the smallest of
    // {|E_k|, |E_k - E_k'|} over the sector-1 atom-cavity spectrum.
    bool weak_drive() const;
};

enum class Level : std::uint8_t { Zero = 0, One = 1, Excited = 2 };

inline int level_excitation(Level l) { return l == Level::Zero ? 0 : 1; }

struct BasisState {
    Level atom1 = Level::Zero;
    Level atom2 = Level::Zero;
    std::vector<std::uint8_t> photons;  // occupation per cavity

    int excitation() const;
    auto operator<=>(const BasisState&) const = default;
    std::string label() const;
};

// Ordered basis of a fixed-excitation-number subspace.
struct SectorBasis {
    int sector = 0;
    int n_cavities = 0;
    std::vector<BasisState> states;
    std::map<BasisState, int> index;

    int dimension() const { return static_cast<int>(states.size()); }
    int index_of(const BasisState& s) const;
};

SectorBasis enumerate_sector(int n_cavities, int sector);

// Sparse Hermitian matrix with both triangles stored; diagonal entries real.
class SparseHermitian {
public:
    explicit SparseHermitian(int dimension) : dim_(dimension) {}

    int dimension() const { return dim_; }

    // Adds value at (row, col) and its conjugate at (col, row); diagonal
    // entries must be real.
    void add(int row, int col, Complex value);

    const std::map<std::pair<int, int>, Complex>& entries() const { return entries_; }

    Eigen::MatrixXcd dense() const;
    Eigen::SparseMatrix<Complex> sparse() const;
    bool is_real() const;

    // Coordinate-format text dump: "row col real imag" per line, 0-based.
    std::string coordinate_dump() const;

private:
    int dim_;
    std::map<std::pair<int, int>, Complex> entries_;
};

SparseHermitian build_hamiltonian(const ModelParams& params, const SectorBasis& basis);

// Embedding of a computational label into (sector, basis state with vacuum
// photons): 00 -> sector 0, 01/10 -> sector 1, 11 -> sector 2.
struct EmbeddedState {
    int sector;
    BasisState state;
};

EmbeddedState embed_computational_state(const std::string& label, int n_cavities);

}  // namespace cca

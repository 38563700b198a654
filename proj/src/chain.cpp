#include "cca/chain.hpp"

#include <cmath>
#include <string>

namespace cca {

void ChainSpec::validate() const {
    if (m < 2) throw NumericError("ChainSpec: m must be >= 2, got " + std::to_string(m));
    if (j <= 0.0) throw NumericError("ChainSpec: j must be > 0, got " + std::to_string(j));
}

Eigen::MatrixXd ChainSpec::matrix() const {
    validate();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    h(0, 0) = delta1;
    h(m - 1, m - 1) = delta2;
    for (int i = 0; i + 1 < m; ++i) {
        h(i, i + 1) = j;
        h(i + 1, i) = j;
    }
    return h;
}

void fix_vector_sign(Eigen::Ref<Eigen::VectorXd> v) {
    const double thresh = 1e-12 * v.norm();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > thresh) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

namespace {

// Replace a quasi-degenerate pair by its mirror-symmetric and antisymmetric
// projections.  Sorted ascending, the k-th eigenvector (0-based) of a
// symmetric-impurity chain has parity (-1)^(m-1-k): the top state is nodeless
// and symmetric since the hopping is positive.  A numerical eigensolver may
// mix a pair whose splitting is below its resolution.
void symmetrize_pair(Eigen::MatrixXd& vecs, int ka, int kb) {
    const Eigen::Index n = vecs.rows();
    auto parity_part = [n](const Eigen::VectorXd& v, int sign) {
        Eigen::VectorXd out(n);
        for (Eigen::Index i = 0; i < n; ++i) out(i) = 0.5 * (v(i) + sign * v(n - 1 - i));
        return out;
    };
    const int sign_a = ((static_cast<int>(n) - 1 - ka) % 2 == 0) ? +1 : -1;
    // Pick, for each parity, the pair member with the larger projection.
    Eigen::VectorXd a1 = parity_part(vecs.col(ka), sign_a);
    Eigen::VectorXd a2 = parity_part(vecs.col(kb), sign_a);
    Eigen::VectorXd va = (a1.norm() >= a2.norm()) ? a1 : a2;
    Eigen::VectorXd b1 = parity_part(vecs.col(ka), -sign_a);
    Eigen::VectorXd b2 = parity_part(vecs.col(kb), -sign_a);
    Eigen::VectorXd vb = (b1.norm() >= b2.norm()) ? b1 : b2;
    if (va.norm() < 1e-8 || vb.norm() < 1e-8) return;  // pair was not actually mixed
    vecs.col(ka) = va / va.norm();
    vecs.col(kb) = vb / vb.norm();
}

}  // namespace

ChainSpectrum direct_diagonalize(const ChainSpec& chain) {
    chain.validate();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(chain.matrix());
    ChainSpectrum out;
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    if (chain.mirror_symmetric()) {
        for (int k = 0; k + 1 < chain.m; ++k) {
            if (out.energies(k + 1) - out.energies(k) < 1e-8 * chain.j) {
                symmetrize_pair(out.vectors, k, k + 1);
            }
        }
        // Clean residual parity mixing (order eps/gap for close but resolved
        // pairs) by projecting each vector onto its theoretical parity class.
        for (int k = 0; k < chain.m; ++k) {
            const int sign = ((chain.m - 1 - k) % 2 == 0) ? +1 : -1;
            Eigen::VectorXd proj(chain.m);
            for (int i = 0; i < chain.m; ++i) {
                proj(i) = 0.5 * (out.vectors(i, k) + sign * out.vectors(chain.m - 1 - i, k));
            }
            const double norm = proj.norm();
            if (norm > 0.5) out.vectors.col(k) = proj / norm;
        }
    }
    for (int k = 0; k < chain.m; ++k) fix_vector_sign(out.vectors.col(k));
    return out;
}

CouplingSums coupling_sums(const ChainSpectrum& spectrum) {
    const int m = spectrum.size();
    for (int k = 0; k < m; ++k) {
        if (std::abs(spectrum.energies(k)) < 1e-10) {
            throw ZeroEigenvalue("coupling_sums: eigenvalue " + std::to_string(k) +
                                 " is zero within 1e-10; sums are undefined");
        }
    }
    CouplingSums sums;
    for (int k = 0; k < m; ++k) {
        const double e = spectrum.energies(k);
        const double f1 = spectrum.vectors(0, k);
        const double fm = spectrum.vectors(m - 1, k);
        sums.cross += f1 * fm / e;
        sums.local_1 += f1 * f1 / e;
        sums.local_m += fm * fm / e;
    }
    return sums;
}

CouplingSums closed_form_sums(int m, double j, double delta) {
    CouplingSums sums;
    if (m % 2 == 1) {
        if (delta == 0.0) throw ZeroEigenvalue("closed_form_sums: odd chain needs delta != 0");
        const double sign = ((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        sums.cross = sign / (2.0 * delta);
        sums.local_1 = sums.local_m = 1.0 / (2.0 * delta);
    } else {
        const double denom = delta * delta - j * j;
        if (std::abs(denom) < 1e-10) {
            throw EvenChainResonance("closed_form_sums: |delta^2 - j^2| < 1e-10 for even chain");
        }
        const double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
        sums.cross = sign * j / denom;
        sums.local_1 = sums.local_m = delta / denom;
    }
    return sums;
}

std::vector<DispersionRow> dispersion_scan(int m, double j, const std::vector<double>& deltas) {
    std::vector<DispersionRow> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        ChainSpec chain{m, j, delta, delta};
        rows.push_back({delta, direct_diagonalize(chain).energies});
    }
    return rows;
}

}  // namespace cca

#include "cca/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace cca {

namespace {

constexpr double kPoleTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

}  // namespace

double free_chain_energy(int m, double j, int band_index) {
    // Ascending order: band_index a (0-based) corresponds to the standard
    // quantum number k = m - a in 2 j cos(k pi / (m+1)).
    const int k = m - band_index;
    return 2.0 * j * std::cos(k * kPi / (m + 1));
}

Eigen::VectorXd free_chain_vector(int m, int band_index) {
    const int k = m - band_index;
    Eigen::VectorXd v(m);
    const double norm = std::sqrt(2.0 / (m + 1));
    for (int i = 0; i < m; ++i) v(i) = norm * std::sin((i + 1) * k * kPi / (m + 1));
    return v;
}

Eigen::MatrixXd free_resolvent(int m, double j, double z) {
    if (m < 1) throw NumericError("free_resolvent: m must be >= 1");
    for (int a = 0; a < m; ++a) {
        if (std::abs(z - free_chain_energy(m, j, a)) < kPoleTol) {
            throw PoleProximity("free_resolvent: z = " + std::to_string(z) +
                                " is within 1e-12 of a free-chain eigenvalue");
        }
    }
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a) {
        const Eigen::VectorXd v = free_chain_vector(m, a);
        g += v * v.transpose() / (z - free_chain_energy(m, j, a));
    }
    return g;
}

Eigen::MatrixXd dressed_resolvent(const ChainSpec& chain, double z) {
    chain.validate();
    const int m = chain.m;
    Eigen::MatrixXd g = free_resolvent(m, chain.j, z);
    // Rank-one update at site M, then at site 1.
    const double denom_m = 1.0 - chain.delta2 * g(m - 1, m - 1);
    if (std::abs(denom_m) < kPoleTol) {
        throw ResonanceDenominator("dressed_resolvent: |1 - delta2 G0(M,M)| < 1e-12");
    }
    if (chain.delta2 != 0.0) {
        const Eigen::VectorXd col = g.col(m - 1);
        g += col * (chain.delta2 / denom_m) * col.transpose();
    }
    const double denom_1 = 1.0 - chain.delta1 * g(0, 0);
    if (std::abs(denom_1) < kPoleTol) {
        throw ResonanceDenominator("dressed_resolvent: |1 - delta1 G_{0M}(1,1)| < 1e-12");
    }
    if (chain.delta1 != 0.0) {
        const Eigen::VectorXd col = g.col(0);
        g += col * (chain.delta1 / denom_1) * col.transpose();
    }
    return g;
}

namespace {

// Sign and log-magnitude of det(zI - H) for the impurity chain, from the
// tridiagonal three-term recurrence with periodic rescaling.
struct SignLog {
    double sign;
    double log_abs;
};

SignLog char_poly(const ChainSpec& chain, double z) {
    const double j2 = chain.j * chain.j;
    double prev = 1.0;
    double cur = z - chain.delta1;
    double log_scale = 0.0;
    for (int i = 2; i <= chain.m; ++i) {
        const double diag = (i == chain.m) ? chain.delta2 : 0.0;
        const double next = (z - diag) * cur - j2 * prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(prev), std::abs(cur));
        if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
            prev /= mag;
            cur /= mag;
            log_scale += std::log(mag);
        }
    }
    if (cur == 0.0) return {0.0, 0.0};
    return {cur > 0.0 ? 1.0 : -1.0, std::log(std::abs(cur)) + log_scale};
}

}  // namespace

Eigen::VectorXd find_spectrum_by_poles(const ChainSpec& chain) {
    chain.validate();
    const int m = chain.m;
    if (chain.delta1 == 0.0) {
        // No impurity at site 1: the spectrum is that of the delta2-only chain.
        return direct_diagonalize(chain).energies;
    }

    // Poles of G_{0M}(1,1) are the eigenvalues of the chain with the site-1
    // impurity removed; they strictly interlace the dressed spectrum.
    ChainSpec base = chain;
    base.delta1 = 0.0;
    const Eigen::VectorXd poles = direct_diagonalize(base).energies;

    // The pole equation 1 - delta1 G_{0M}(1,1)(z) = 0 is evaluated through the
    // rank-one determinant identity 1 - delta1 G_{0M}(1,1) =
    // det(zI - H) / det(zI - H_base): the Dyson form suffers catastrophic
    // cancellation when a dressed root sits on a free-chain eigenvalue, while
    // the determinant ratio keeps the same sign structure everywhere.
    auto f = [&](double z) {
        const SignLog full = char_poly(chain, z);
        const SignLog bare = char_poly(base, z);
        if (full.sign == 0.0) return 0.0;
        if (bare.sign == 0.0) return std::numeric_limits<double>::infinity();
        const double log_ratio = std::clamp(full.log_abs - bare.log_abs, -600.0, 600.0);
        return full.sign * bare.sign * std::exp(log_ratio);
    };

    const double pad = std::abs(chain.delta1) + std::abs(chain.delta2) + chain.j;
    const double lo = std::min(poles(0), -2.0 * chain.j) - pad;
    const double hi = std::max(poles(m - 1), 2.0 * chain.j) + pad;

    std::vector<double> edges(m + 2);
    edges[0] = lo;
    for (int i = 0; i < m; ++i) edges[i + 1] = poles(i);
    edges[m + 1] = hi;

    std::vector<double> roots;
    roots.reserve(m);
    for (int i = 0; i + 1 < static_cast<int>(edges.size()); ++i) {
        const double a = edges[i];
        const double b = edges[i + 1];
        if (b - a < kPoleTol) continue;
        const bool a_is_pole = (i > 0);
        const bool b_is_pole = (i + 1 <= m);
        // Inset the evaluation points from any pole endpoint, shrinking the
        // inset until a sign change appears or the inset bottoms out.
        double found_a = std::numeric_limits<double>::quiet_NaN();
        double found_b = found_a;
        const double span = b - a;
        const double scale_a = std::max(1.0, std::abs(a));
        const double scale_b = std::max(1.0, std::abs(b));
        for (double inset = 1e-8 * std::max(1.0, span); inset >= 1e-15;
             inset *= 1e-3) {
            const double xa = a_is_pole ? a + inset * scale_a : a;
            const double xb = b_is_pole ? b - inset * scale_b : b;
            if (xb <= xa) continue;
            if (a_is_pole && xa <= a) continue;
            if (b_is_pole && xb >= b) continue;
            const double fa = f(xa);
            const double fb = f(xb);
            if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
            if (fa * fb < 0.0) {
                found_a = xa;
                found_b = xb;
                break;
            }
        }
        if (std::isnan(found_a)) {
            // No resolvable sign change: the root has collapsed onto a pole
            // endpoint (quasi-degenerate bound state); decide which end by the
            // sign expected next to the pole.
            const double probe = f(0.5 * (a + b));
            const bool root_at_a = a_is_pole && probe * chain.delta1 > 0.0;
            const bool root_at_b = b_is_pole && probe * chain.delta1 < 0.0;
            if (root_at_a) roots.push_back(a);
            if (root_at_b && !root_at_a) roots.push_back(b);
            continue;
        }
        double xa = found_a, xb = found_b;
        double fa = f(xa);
        for (int iter = 0; iter < 200 && xb - xa > kPoleTol; ++iter) {
            const double mid = 0.5 * (xa + xb);
            const double fm = f(mid);
            if (fa * fm <= 0.0) {
                xb = mid;
            } else {
                xa = mid;
                fa = fm;
            }
        }
        roots.push_back(0.5 * (xa + xb));
    }

    if (static_cast<int>(roots.size()) != m) {
        throw RootCountMismatch("find_spectrum_by_poles: isolated " +
                                std::to_string(roots.size()) + " roots, expected " +
                                std::to_string(m));
    }
    std::sort(roots.begin(), roots.end());
    return Eigen::Map<Eigen::VectorXd>(roots.data(), m);
}

Eigen::VectorXd lippmann_schwinger_vector(const ChainSpec& chain, double energy, int band_index) {
    chain.validate();
    const int m = chain.m;
    if (band_index < 0 || band_index >= m) {
        throw NumericError("lippmann_schwinger_vector: band index out of range");
    }
    if (chain.delta1 == 0.0 && chain.delta2 == 0.0) {
        Eigen::VectorXd v = free_chain_vector(m, band_index);
        fix_vector_sign(v);
        return v;
    }
    for (int a = 0; a < m; ++a) {
        if (std::abs(energy - free_chain_energy(m, chain.j, a)) < 1e-10) {
            throw SingularSystem(
                "lippmann_schwinger_vector: energy collides with a free-chain eigenvalue");
        }
    }
    const Eigen::MatrixXd g0 = free_resolvent(m, chain.j, energy);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    a.col(0) -= chain.delta1 * g0.col(0);
    a.col(m - 1) -= chain.delta2 * g0.col(m - 1);
    // At a true eigenvalue the system is singular up to rounding, which is
    // exactly what makes the solve an inverse iteration; if the LU happens to
    // hit an exact zero pivot, nudge the energy by a few ulps and retry.
    Eigen::VectorXd x;
    bool solved = false;
    const double shift_scale = std::max(1.0, std::abs(energy));
    for (double shift : {0.0, 1e-13, -1e-13, 1e-12, -1e-12, 1e-11, -1e-11}) {
        Eigen::MatrixXd system = a;
        if (shift != 0.0) {
            const Eigen::MatrixXd g0s = free_resolvent(m, chain.j, energy + shift * shift_scale);
            system = Eigen::MatrixXd::Identity(m, m);
            system.col(0) -= chain.delta1 * g0s.col(0);
            system.col(m - 1) -= chain.delta2 * g0s.col(m - 1);
        }
        x = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(
            free_chain_vector(m, band_index));
        if (x.allFinite() && x.norm() > 0.0) {
            solved = true;
            break;
        }
    }
    if (!solved) throw SingularSystem("lippmann_schwinger_vector: solve failed");
    if (chain.mirror_symmetric()) {
        // Project onto the parity sector of the free vector; this removes any
        // contamination from the quasi-degenerate mirror partner.
        const int sign = ((m - 1 - band_index) % 2 == 0) ? +1 : -1;
        Eigen::VectorXd sym(m);
        for (int i = 0; i < m; ++i) sym(i) = 0.5 * (x(i) + sign * x(m - 1 - i));
        if (sym.norm() > 1e-8 * x.norm()) x = sym;
    }
    x /= x.norm();
    fix_vector_sign(x);
    return x;
}

}  // namespace cca

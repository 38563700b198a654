#include "cca/expm.hpp"

#include <cmath>

#include "cca/errors.hpp"

namespace cca {

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    // Pade-13 with scaling and squaring (Higham 2005 constants).
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw DimensionMismatch("expm: matrix must be square");
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    const double theta13 = 5.371920351148152;
    int squarings = 0;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    }
    const Eigen::MatrixXcd as = a / std::pow(2.0, squarings);

    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd a2 = as * as;
    const Eigen::MatrixXcd a4 = a2 * a2;
    const Eigen::MatrixXcd a6 = a2 * a4;
    const Eigen::MatrixXcd u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
              b[1] * ident);
    const Eigen::MatrixXcd v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
        b[0] * ident;
    Eigen::MatrixXcd r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

Eigen::VectorXcd expm_multiply(const Eigen::SparseMatrix<std::complex<double>>& a, double t,
                               const Eigen::VectorXcd& v, double tol, int krylov_dim) {
    using Complex = std::complex<double>;
    const Eigen::Index n = a.rows();
    if (a.cols() != n || v.size() != n) throw DimensionMismatch("expm_multiply: size mismatch");
    if (t == 0.0) return v;

    const int m = std::min<Eigen::Index>(krylov_dim, n);
    Eigen::VectorXcd w = v;
    double done = 0.0;
    // Initial substep from a crude norm estimate; refined adaptively.
    double anorm = 0.0;
    for (int k = 0; k < a.outerSize(); ++k) {
        double col = 0.0;
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(a, k); it; ++it) {
            col += std::abs(it.value());
        }
        anorm = std::max(anorm, col);
    }
    double dt = (anorm > 0.0) ? std::min(std::abs(t), 2.0 * m / anorm) : std::abs(t);
    const double direction = (t >= 0.0) ? 1.0 : -1.0;
    const double t_abs = std::abs(t);

    Eigen::MatrixXcd basis(n, m + 1);
    Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 2, m + 2);

    int guard = 0;
    while (done < t_abs) {
        if (++guard > 1000000) throw ToleranceNotMet("expm_multiply: step count exceeded");
        dt = std::min(dt, t_abs - done);
        const double beta = w.norm();
        if (beta == 0.0) break;
        basis.col(0) = w / beta;
        hess.setZero();
        int used = m;
        bool breakdown = false;
        for (int jcol = 0; jcol < m; ++jcol) {
            Eigen::VectorXcd p = direction * (a * basis.col(jcol));
            for (int i = 0; i <= jcol; ++i) {
                const Complex hij = basis.col(i).dot(p);
                hess(i, jcol) = hij;
                p -= hij * basis.col(i);
            }
            // One reorthogonalization pass keeps the basis clean.
            for (int i = 0; i <= jcol; ++i) {
                const Complex corr = basis.col(i).dot(p);
                hess(i, jcol) += corr;
                p -= corr * basis.col(i);
            }
            const double hnext = p.norm();
            if (hnext < 1e-14 * beta) {
                used = jcol + 1;
                breakdown = true;
                break;
            }
            hess(jcol + 1, jcol) = hnext;
            basis.col(jcol + 1) = p / hnext;
        }

        while (true) {
            // Exponential of the Hessenberg block augmented with the leaked
            // direction; its first column carries both the propagated
            // coefficients and the local error estimate (Saad / expokit).
            const int k = used;
            Eigen::MatrixXcd hk = Eigen::MatrixXcd::Zero(k + 1, k + 1);
            hk.topLeftCorner(k, k) = hess.topLeftCorner(k, k) * dt;
            if (!breakdown) hk(k, k - 1) = hess(k, k - 1) * dt;
            const Eigen::MatrixXcd ek = expm(hk);
            const double err = breakdown ? 0.0 : std::abs(ek(k, 0)) * beta;
            const double budget = tol * std::max(dt / t_abs, 1e-16) * std::max(1.0, beta);
            if (err <= budget || dt <= 1e-14 * t_abs) {
                w = beta * (basis.leftCols(k) * ek.col(0).head(k));
                done += dt;
                if (err < 0.1 * budget) dt *= 1.6;
                break;
            }
            dt *= 0.5;
        }
    }
    return w;
}

}  // namespace cca

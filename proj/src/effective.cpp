#include "cca/effective.hpp"

#include <cmath>

namespace cca {

EffectiveModel build_effective(const ModelParams& params) {
    params.validate();
    if (params.delta == 0.0) throw ZeroDetuning("build_effective: delta must be nonzero");
    const int n = params.n_cavities;
    EffectiveModel model;
    model.n_cavities = n;
    if (n % 2 == 1) {
        const double sign = ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        model.coupling = sign * params.omega1 * params.omega2 / (2.0 * params.delta);
        model.stark1 = params.omega1 * params.omega1 / (2.0 * params.delta);
        model.stark2 = params.omega2 * params.omega2 / (2.0 * params.delta);
    } else {
        // Even cavity count: coefficients carried by the even-chain sums.
        const double denom = params.delta * params.delta - params.j * params.j;
        if (std::abs(denom) < 1e-10) {
            throw EvenChainResonance("build_effective: |delta^2 - j^2| < 1e-10 for even N");
        }
        const int m = n + 2;
        const double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
        model.coupling = sign * params.omega1 * params.omega2 * params.j / denom;
        model.stark1 = params.omega1 * params.omega1 * params.delta / denom;
        model.stark2 = params.omega2 * params.omega2 * params.delta / denom;
    }
    return model;
}

double gate_time(const ModelParams& params) {
    params.validate();
    if (params.delta == 0.0) throw ZeroDetuning("gate_time: delta must be nonzero");
    const double o1 = std::abs(params.omega1);
    const double o2 = std::abs(params.omega2);
    if (std::abs(o1 - o2) > 1e-12) {
        throw ConditionViolated("gate_time: requires |omega1| = |omega2|");
    }
    if (o1 == 0.0) throw ConditionViolated("gate_time: omega must be nonzero");
    const double pi = 3.14159265358979323846;
    return pi * params.delta / (2.0 * o1 * o1);
}

PairAmplitudes evolve_effective(const EffectiveModel& model, Complex amp01, Complex amp10,
                                double t) {
    const double norm2 = std::norm(amp01) + std::norm(amp10);
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw NumericError("evolve_effective: input amplitudes must be unit norm");
    }
    // Generator -[[s2, c], [c, s1]] on (amp01, amp10); exponentiate the real
    // symmetric 2x2 in closed form.
    const double s2 = -model.stark2;
    const double s1 = -model.stark1;
    const double c = -model.coupling;
    const double avg = 0.5 * (s1 + s2);
    const double half_diff = 0.5 * (s2 - s1);
    const double r = std::hypot(half_diff, c);
    const Complex i_unit(0.0, 1.0);
    const Complex phase = std::exp(-i_unit * avg * t);
    Complex u00, u01, u10, u11;
    if (r == 0.0) {
        u00 = u11 = 1.0;
        u01 = u10 = 0.0;
    } else {
        const double cs = std::cos(r * t);
        const double sn = std::sin(r * t);
        // exp(-i t (d sz + c sx)) with d = half_diff.
        u00 = cs - i_unit * sn * (half_diff / r);
        u11 = cs + i_unit * sn * (half_diff / r);
        u01 = u10 = -i_unit * sn * (c / r);
    }
    PairAmplitudes out;
    out.amp01 = phase * (u00 * amp01 + u01 * amp10);
    out.amp10 = phase * (u10 * amp01 + u11 * amp10);
    return out;
}

Eigen::Matrix4cd ideal_sqrt_swap() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    const Complex p(0.5, 0.5);   // (1+i)/2
    const Complex m(0.5, -0.5);  // (1-i)/2
    u(0, 0) = 1.0;
    u(3, 3) = 1.0;
    u(1, 1) = p;
    u(1, 2) = m;
    u(2, 1) = m;
    u(2, 2) = p;
    return u;
}

}  // namespace cca

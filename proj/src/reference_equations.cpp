#include "lhm/reference_equations.hpp"

#include <complex>

namespace lhm {

Matrix4c reference_rhs(const SystemParams& p, const Matrix4c& m)
{
    const complex i(0.0, 1.0);
    auto r = [&m](int a, int b) { return m(a - 1, b - 1); };

    const double oc = p.omega_c;
    const double os = p.omega_s;
    const double op = p.omega_p;

    const double g14 = p.decay_rate(4, 1);
    const double g13 = p.decay_rate(3, 1);
    const double g12 = p.decay_rate(2, 1);
    const double g24 = p.decay_rate(4, 2);
    const double g23 = p.decay_rate(3, 2);
    const double g34 = p.decay_rate(3, 4);
    const double g21 = p.decay_rate(1, 2);

    // Coherence widths: dephasing plus half the population loss of both ends.
    const double loss1 = g21;
    const double loss2 = g12;
    const double loss3 = g13 + g23 + g34;
    const double loss4 = g14 + g24;
    auto width = [&](int a, int b, double la, double lb) {
        return p.dephasing_rate(a, b) + 0.5 * (la + lb);
    };
    const double w12 = width(1, 2, loss1, loss2);
    const double w13 = width(1, 3, loss1, loss3);
    const double w14 = width(1, 4, loss1, loss4);
    const double w23 = width(2, 3, loss2, loss3);
    const double w24 = width(2, 4, loss2, loss4);
    const double w34 = width(3, 4, loss3, loss4);

    const double d12 = p.delta_c - p.delta_s;
    const double d13 = p.delta_c;
    const double d14 = p.delta_c - p.delta_s + p.delta_p;
    const double d23 = p.delta_s;
    const double d24 = p.delta_p;
    const double d34 = p.delta_p - p.delta_s;

    Matrix4c out;
    auto set = [&out](int a, int b, complex v) { out(a - 1, b - 1) = v; };

    // Populations. Repairs: -g21 rho11 added to rho11; Omega_c term of
    // rho11 and Omega_s term of rho22 flipped; Omega_p term added to rho22.
    set(1, 1, g14 * r(4, 4) + g13 * r(3, 3) + g12 * r(2, 2) - g21 * r(1, 1)
                  + i * oc * (r(3, 1) - r(1, 3)));
    set(2, 2, g24 * r(4, 4) + g23 * r(3, 3) - g12 * r(2, 2) + g21 * r(1, 1)
                  + i * os * (r(3, 2) - r(2, 3)) + i * op * (r(4, 2) - r(2, 4)));
    set(3, 3, -g34 * r(3, 3) - g13 * r(3, 3) - g23 * r(3, 3)
                  - i * oc * (r(3, 1) - r(1, 3)) - i * os * (r(3, 2) - r(2, 3)));
    set(4, 4, -g24 * r(4, 4) - g14 * r(4, 4) + g34 * r(3, 3) + i * op * (r(2, 4) - r(4, 2)));

    // Coherences: -(w - i delta) rho_jk plus the field cross terms.
    set(1, 2, -(w12 - i * d12) * r(1, 2) + i * oc * r(3, 2) - i * os * r(1, 3)
                  - i * op * r(1, 4));
    set(1, 3, -(w13 - i * d13) * r(1, 3) - i * oc * (r(1, 1) - r(3, 3)) - i * os * r(1, 2));
    set(1, 4, -(w14 - i * d14) * r(1, 4) - i * op * r(1, 2) + i * oc * r(3, 4));
    set(2, 3, -(w23 - i * d23) * r(2, 3) - i * os * (r(2, 2) - r(3, 3)) + i * op * r(4, 3)
                  - i * oc * r(2, 1));
    set(2, 4, -(w24 - i * d24) * r(2, 4) - i * op * (r(2, 2) - r(4, 4)) + i * os * r(3, 4));
    set(3, 4, -(w34 - i * d34) * r(3, 4) - i * op * r(3, 2) + i * os * r(2, 4)
                  + i * oc * r(1, 4));

    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b < a; ++b) {
            set(a, b, std::conj(out(b - 1, a - 1)));
        }
    }
    return out;
}

}  // namespace lhm

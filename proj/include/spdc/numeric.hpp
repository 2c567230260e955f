#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spdc/errors.hpp"

namespace spdc::numeric {

// sin(x)/x with a series fallback below |x| = 1e-4 (cancellation guard).
inline double sinc(double x) {
    const double ax = std::fabs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// 15-point Kronrod rule with embedded 7-point Gauss estimate (QUADPACK dqk15
// constants). Returns the K15 value and the |K15-G7| based error estimate.
template <class F>
std::pair<double, double> gauss_kronrod_15(const F& f, double a, double b) {
    static const double xgk[8] = {
        0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
        0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
        0.2077849550078985, 0.0};
    static const double wgk[8] = {
        0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
        0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
        0.2044329400752989, 0.2094821410847278};
    static const double wg[4] = {
        0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
        0.4179591836734694};

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_mid = f(mid);
    double k15 = wgk[7] * f_mid;
    double g7 = wg[3] * f_mid;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        k15 += wgk[i] * fsum;
        if (i % 2 == 1) g7 += wg[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    const double err = std::pow(200.0 * std::fabs(k15 - g7), 1.5);
    return {k15, err};
}

// Globally adaptive quadrature: repeatedly bisects the interval with the
// largest error estimate until the summed error meets rel_tol against the
// running integral. Deterministic: ties broken by lowest interval index,
// final accumulation in creation order.
template <class F>
double adaptive_integrate(const F& f, double a, double b, double rel_tol,
                          std::size_t max_evals) {
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> parts;
    auto [v0, e0] = gauss_kronrod_15(f, a, b);
    parts.push_back({a, b, v0, e0});
    std::size_t evals = 15;

    const double abs_floor = std::numeric_limits<double>::min() * 64;
    for (;;) {
        double total = 0.0, err = 0.0;
        for (const auto& p : parts) {
            total += p.value;
            err += p.error;
        }
        if (err <= std::max(rel_tol * std::fabs(total), abs_floor)) return total;
        if (evals + 30 > max_evals) {
            const double achieved =
                std::fabs(total) > 0 ? err / std::fabs(total) : err;
            throw QuadratureError(
                "adaptive quadrature did not reach rel_tol " +
                    std::to_string(rel_tol) + " within " +
                    std::to_string(max_evals) + " evaluations (achieved " +
                    std::to_string(achieved) + ")",
                achieved);
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < parts.size(); ++i)
            if (parts[i].error > parts[worst].error) worst = i;
        const Interval piece = parts[worst];
        const double mid = 0.5 * (piece.a + piece.b);
        auto [vl, el] = gauss_kronrod_15(f, piece.a, mid);
        auto [vr, er] = gauss_kronrod_15(f, mid, piece.b);
        parts[worst] = {piece.a, mid, vl, el};
        parts.push_back({mid, piece.b, vr, er});
        evals += 30;
    }
}

// Brent's method on a sign-changing bracket [a, b].
template <class F>
double brent_root(const F& f, double a, double b, double xtol = 1e-13,
                  int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw NoRootError("brent_root: no sign change on bracket [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
            0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                                   std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

// Expand a bracket around x0 until f changes sign; used for the idler root.
template <class F>
std::pair<double, double> expand_bracket(const F& f, double x0, double step,
                                         double max_halfwidth) {
    double h = step;
    while (h <= max_halfwidth) {
        const double lo = x0 - h, hi = x0 + h;
        if ((f(lo) > 0) != (f(hi) > 0)) return {lo, hi};
        h *= 2.0;
    }
    throw NoRootError("expand_bracket: no sign change within half-width " +
                      std::to_string(max_halfwidth) + " of " +
                      std::to_string(x0));
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int n) {
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return gl;
}

}  // namespace spdc::numeric

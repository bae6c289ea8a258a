#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gvcrand {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

// 15-point Gauss-Kronrod pair on [-1,1]; the embedded 7-point Gauss rule
// uses the odd-indexed nodes.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kGk15Nodes[i]);
        fv[14 - i] = f(center + half * kGk15Nodes[i]);
    }
    fv[7] = f(center);

    double kronrod = kGk15WeightsK[7] * fv[7];
    for (int i = 0; i < 7; ++i) kronrod += kGk15WeightsK[i] * (fv[i] + fv[14 - i]);

    double gauss = kGauss7Weights[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        gauss += kGauss7Weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    value = kronrod * half;
    error = std::abs((kronrod - gauss) * half);
}

} // namespace detail

// Globally adaptive bisection: the segment with the largest error estimate
// is split until the summed error drops below rel_tol * |integral|.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double rel_tol,
                                    long max_evaluations = 2000000) {
    struct Segment {
        double a, b, value, error;
    };

    QuadratureResult result;
    std::vector<Segment> segments;
    {
        double v, e;
        detail::gk15(f, a, b, v, e);
        result.evaluations += 15;
        segments.push_back({a, b, v, e});
    }

    for (;;) {
        double total = 0.0, total_error = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            total += segments[i].value;
            total_error += segments[i].error;
            if (segments[i].error > segments[worst].error) worst = i;
        }
        const double target = rel_tol * std::max(std::abs(total), 1e-300);
        if (total_error <= target) {
            result.value = total;
            result.abs_error_estimate = total_error;
            return result;
        }
        if (result.evaluations + 30 > max_evaluations)
            throw std::runtime_error("integrate_adaptive: evaluation budget exhausted");

        const Segment seg = segments[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        Segment left{seg.a, mid, 0, 0}, right{mid, seg.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        result.evaluations += 30;
        segments[worst] = left;
        segments.push_back(right);
    }
}

} // namespace gvcrand

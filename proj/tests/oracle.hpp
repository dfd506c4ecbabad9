#pragma once

// Reference computations that share no code path with the library: big
// floats for field elements, Cox-de Boor in doubles for B-splines, Gauss
// quadrature for integrals, brute-force cut-and-project for the chain.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quasiwave/quadfield.hpp"

namespace oracle {

inline mpf_class beta(const quasiwave::FieldSpec& f, unsigned bits = 512) {
    mpf_class d(f.disc(), bits), root(0, bits);
    mpf_sqrt(root.get_mpf_t(), d.get_mpf_t());
    mpf_class b(f.a(), bits);
    b += root;
    b /= 2;
    return b;
}

inline mpf_class value(const quasiwave::QuadRat& x, const quasiwave::FieldSpec& f, unsigned bits = 512) {
    mpf_class p(x.p(), bits), q(x.q(), bits);
    return p + q * beta(f, bits);
}

inline double tau() { return (1.0 + std::sqrt(5.0)) / 2.0; }

/// Fixed point of L -> LLS, S -> LS grown from "L".
inline std::string fibonacci_word(std::size_t n) {
    std::string w = "L";
    while (w.size() < n) {
        std::string next;
        for (char c : w) next += c == 'L' ? "LLS" : "LS";
        w = std::move(next);
    }
    return w.substr(0, n);
}

/// Points m + n*tau with conjugate m + n(1 - tau) in [0, tau^2) and value in
/// [lo, hi], sorted; the integer pairs are returned.
inline std::vector<std::pair<long, long>> cut_and_project(double lo, double hi) {
    const double t = tau(), conj_t = 1.0 - t;
    std::vector<std::pair<double, std::pair<long, long>>> pts;
    const long nmax = static_cast<long>(std::max(std::fabs(lo), std::fabs(hi))) + 10;
    for (long n = -nmax; n <= nmax; ++n) {
        const double mlo = -n * conj_t, mhi = t * t - n * conj_t;
        for (long m = static_cast<long>(std::ceil(mlo)) - 1; m <= static_cast<long>(std::floor(mhi)) + 1; ++m) {
            const double c = m + n * conj_t;
            if (c < 0 || c >= t * t) continue;
            const double x = m + n * t;
            if (x >= lo && x <= hi) pts.push_back({x, {m, n}});
        }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<long, long>> out;
    for (const auto& p : pts) out.push_back(p.second);
    return out;
}

/// Normalised B-spline of order s = knots.size() - 1 (partition of unity),
/// right-continuous.
inline double cox_de_boor(const std::vector<double>& t, double x) {
    const std::size_t s = t.size() - 1;
    std::vector<double> N(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) N[i] = (t[i] <= x && x < t[i + 1]) ? 1.0 : 0.0;
    for (std::size_t k = 2; k <= s; ++k)
        for (std::size_t i = 0; i + k <= s; ++i) {
            double v = 0.0;
            if (t[i + k - 1] > t[i]) v += (x - t[i]) / (t[i + k - 1] - t[i]) * N[i];
            if (t[i + k] > t[i + 1]) v += (t[i + k] - x) / (t[i + k] - t[i + 1]) * N[i + 1];
            N[i] = v;
        }
    return N[0];
}

/// 8-point Gauss-Legendre on each interval between consecutive breaks.
inline double integrate(const std::function<double(double)>& f, const std::vector<double>& breaks) {
    static const double x[] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    static const double w[] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1], m = (a + b) / 2, h = (b - a) / 2;
        for (int j = 0; j < 4; ++j) total += h * w[j] * (f(m - h * x[j]) + f(m + h * x[j]));
    }
    return total;
}

inline std::vector<double> to_doubles(const std::vector<quasiwave::QuadRat>& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(x.to_double());
    return out;
}

}  // namespace oracle

#include "quasiwave/spline.hpp"

#include <algorithm>

namespace quasiwave {

namespace {

// f(x) * (alpha x + beta) piecewise.
PiecewisePoly times_linear(const PiecewisePoly& f, const QuadRat& alpha, const QuadRat& beta) {
    if (f.empty()) return f;
    std::vector<LocalPoly> pieces;
    for (std::size_t i = 0; i < f.num_pieces(); ++i) {
        const LocalPoly lin{alpha * f.breaks()[i] + beta, alpha};
        pieces.push_back(poly::multiply(f.pieces()[i], lin));
    }
    return PiecewisePoly(f.breaks(), std::move(pieces), f.first_index());
}

std::vector<QuadRat> knots_of(const NodeSequence& seq, int n, int s) {
    if (s < 1) throw ParameterOutOfRange("spline order must be >= 1");
    if (!seq.has_index(n) || !seq.has_index(n + s))
        throw RangeError("nodes " + std::to_string(n) + " .. " + std::to_string(n + s) + " not in the sequence");
    std::vector<QuadRat> k;
    for (int l = 0; l <= s; ++l) k.push_back(seq.node(n + l));
    return k;
}

QuadRat factorial(int s) {
    QuadRat f(1);
    for (int i = 2; i <= s; ++i) f *= QuadRat(i);
    return f;
}

}  // namespace

PiecewisePoly bspline_on_knots(const std::vector<QuadRat>& knots) {
    if (knots.size() < 2) throw ParameterOutOfRange("need at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1])) throw RepeatedNode("knots must be strictly increasing");
    const int s = static_cast<int>(knots.size()) - 1;
    // Order-1 indicators on each knot interval, all on the full break list.
    std::vector<PiecewisePoly> level;
    for (int l = 0; l < s; ++l) {
        std::vector<LocalPoly> pieces(static_cast<std::size_t>(s));
        pieces[static_cast<std::size_t>(l)] = {QuadRat(1)};
        level.emplace_back(knots, std::move(pieces));
    }
    for (int order = 2; order <= s; ++order) {
        std::vector<PiecewisePoly> next;
        for (int l = 0; l + order <= s; ++l) {
            // omega_{order,l}(x) = (x - x_l) / (x_{l+order-1} - x_l)
            const QuadRat d0 = (knots[l + order - 1] - knots[l]).inverse();
            const QuadRat d1 = (knots[l + order] - knots[l + 1]).inverse();
            PiecewisePoly a = times_linear(level[l], d0, -knots[l] * d0);
            PiecewisePoly b = times_linear(level[l + 1], -d1, QuadRat(1) + knots[l + 1] * d1);
            next.push_back(a + b);
        }
        level = std::move(next);
    }
    PiecewisePoly r = level.front();
    std::vector<LocalPoly> pieces = r.pieces();
    for (auto& p : pieces) poly::trim(p);
    return PiecewisePoly(knots, std::move(pieces));
}

PiecewisePoly bspline(const NodeSequence& seq, int n, int s) {
    PiecewisePoly b = bspline_on_knots(knots_of(seq, n, s));
    b.set_first_index(n);
    return b;
}

std::vector<QuadRat> vandermonde_weights(const std::vector<QuadRat>& knots) {
    const int s = static_cast<int>(knots.size()) - 1;
    if (s < 1) throw ParameterOutOfRange("need at least two knots");
    const QuadRat inv_fact = factorial(s).inverse();
    std::vector<QuadRat> a;
    for (int l = 0; l <= s; ++l) {
        QuadRat prod(1);
        for (int m = 0; m <= s; ++m) {
            if (m == l) continue;
            const QuadRat d = m < l ? knots[l] - knots[m] : knots[m] - knots[l];
            if (d.is_zero()) throw RepeatedNode("repeated knot " + knots[l].str());
            prod *= d;
        }
        QuadRat v = inv_fact / prod;
        a.push_back(l % 2 ? -v : v);
    }
    return a;
}

std::vector<QuadRat> dirac_moments(const std::vector<QuadRat>& weights, const std::vector<QuadRat>& knots) {
    std::vector<QuadRat> m;
    const std::size_t s = knots.size() - 1;
    for (std::size_t j = 0; j <= s; ++j) {
        QuadRat acc;
        for (std::size_t l = 0; l < knots.size(); ++l) acc += weights[l] * knots[l].pow(static_cast<long>(j));
        m.push_back(acc);
    }
    return m;
}

VandermondeSpline bspline_vandermonde(const NodeSequence& seq, int n, int s) {
    const std::vector<QuadRat> knots = knots_of(seq, n, s);
    VandermondeSpline out;
    out.weights = vandermonde_weights(knots);
    const std::vector<QuadRat> mom = dirac_moments(out.weights, knots);
    for (int j = 0; j < s; ++j)
        if (!mom[static_cast<std::size_t>(j)].is_zero())
            throw ConsistencyError("Dirac weights miss moment " + std::to_string(j));
    const QuadRat top = factorial(s).inverse();
    if (!(mom[static_cast<std::size_t>(s)] == (s % 2 ? -top : top)))
        throw ConsistencyError("Dirac weights give top moment " + mom.back().str());

    // First antiderivative: partial sums of the weights as a step function.
    std::vector<LocalPoly> steps;
    QuadRat partial;
    for (int l = 0; l < s; ++l) {
        partial += out.weights[static_cast<std::size_t>(l)];
        steps.push_back({partial});
    }
    PiecewisePoly f(knots, std::move(steps), n);
    for (int k = 1; k < s; ++k) f = f.antiderivative(true);
    out.spline = f;
    const PiecewisePoly b = bspline(seq, n, s);
    out.proportionality = f.integral() / b.integral();
    if (!f.equals(b.scaled(out.proportionality)))
        throw ConsistencyError("Dirac-weight spline is not a multiple of the recurrence spline");
    return out;
}

PiecewisePoly normalize_bspline(const PiecewisePoly& b, int s) {
    const QuadRat area = b.integral();
    if (area.is_zero()) throw ZeroIntegral("cannot normalise a function with zero integral");
    return b.scaled((b.hi() - b.lo()) / QuadRat(s) / area);
}

std::vector<QuadRat> bernstein_coefficients(const LocalPoly& c, const QuadRat& h) {
    const std::size_t n = c.empty() ? 0 : c.size() - 1;
    auto binom = [](std::size_t a, std::size_t b) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), a, b);
        return QuadRat(mpq_class(r));
    };
    std::vector<QuadRat> scaled(c.size());
    QuadRat hp(1);
    for (std::size_t j = 0; j < c.size(); ++j) {
        scaled[j] = c[j] * hp;
        hp *= h;
    }
    std::vector<QuadRat> b(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t j = 0; j <= k && j < c.size(); ++j)
            if (!scaled[j].is_zero()) b[k] += scaled[j] * binom(k, j) / binom(n, j);
    return b;
}

bool positive_on_support(const PiecewisePoly& f) {
    if (f.empty()) return false;
    for (std::size_t i = 0; i < f.num_pieces(); ++i) {
        const auto b = bernstein_coefficients(f.pieces()[i], f.breaks()[i + 1] - f.breaks()[i]);
        bool any = false;
        for (const auto& v : b) {
            if (v.sign() < 0) return false;
            any = any || v.sign() > 0;
        }
        if (!any) return false;
    }
    return true;
}

std::vector<ScalingClass> scaling_classes(const NodeSequence& seq, int s) {
    std::vector<WordClass> words = classify_words(seq, s);
    std::vector<ScalingClass> out;
    for (const auto& w : words) {
        ScalingClass c;
        c.word = w.word;
        c.members = w.members;
        c.representative = w.representative;
        c.shape = bspline(seq, c.representative, s).translated(-seq.node(c.representative));
        c.shape.set_first_index(0);
        out.push_back(std::move(c));
    }
    return out;
}

const ScalingClass& class_at(const std::vector<ScalingClass>& classes, const NodeSequence& seq, int k) {
    if (classes.empty()) throw ParameterOutOfRange("no scaling classes");
    const int s = static_cast<int>(classes.front().word.size());
    const std::string w = seq.word(k, s);
    for (const auto& c : classes)
        if (c.word == w) return c;
    throw ConsistencyError("no scaling class for word " + w);
}

}  // namespace quasiwave

#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "quasiwave/spline.hpp"

using namespace quasiwave;

namespace {

const FieldSpec kTau = tau_field();
const QuadRat t = QuadRat::beta(kTau);

QuadRat q(const char* s) { return parse_quad(s, kTau); }

const NodeSequence& chain() {
    static const NodeSequence seq = generate_fibonacci_chain(-60, 60);
    return seq;
}

mpz_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

PiecewisePoly random_poly(std::mt19937& rng, int pieces, int degree) {
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<QuadRat> breaks{QuadRat(d(rng)).bound_to(kTau)};
    std::vector<LocalPoly> ps;
    for (int i = 0; i < pieces; ++i) {
        breaks.push_back(breaks.back() + (i % 2 ? QuadRat(1) : t.inverse()));
        LocalPoly c;
        for (int j = 0; j <= degree; ++j) c.push_back(QuadRat(kTau, d(rng), mpq_class(d(rng), 1 + std::abs(d(rng)))));
        ps.push_back(c);
    }
    return PiecewisePoly(breaks, ps);
}

}  // namespace

TEST_CASE("order 1 is the indicator of one gap") {
    const auto b = bspline(chain(), 0, 1);
    CHECK(b.breaks() == std::vector<QuadRat>{QuadRat(0), QuadRat(1)});
    CHECK(b.eval(QuadRat(0)) == QuadRat(1));
    CHECK(b.eval(QuadRat(1)).is_zero());
    CHECK(b.eval(QuadRat(1), Side::Left) == QuadRat(1));
    CHECK(b.integral() == QuadRat(1));
}

TEST_CASE("hat functions on LL and SL") {
    const auto ll = bspline(chain(), 0, 2);
    CHECK(chain().word(0, 2) == "LL");
    CHECK(ll.equals(PiecewisePoly({QuadRat(0), QuadRat(1), QuadRat(2)}, {{QuadRat(0), QuadRat(1)}, {QuadRat(1), QuadRat(-1)}})));
    CHECK(ll.eval(QuadRat(1)) == QuadRat(1));
    CHECK(ll.moment(0) == QuadRat(1));
    CHECK(ll.integral() == QuadRat(1));

    CHECK(chain().word(-1, 2) == "SL");
    const auto sl = bspline(chain(), -1, 2);
    // tau (x + 1/tau) on [-1/tau, 0] and tau - (x + 1/tau) on [0, 1]
    const PiecewisePoly expected({-t.inverse(), QuadRat(0), QuadRat(1)}, {{QuadRat(0), t}, {QuadRat(1), QuadRat(-1)}});
    CHECK(sl.equals(expected));
    for (const char* x : {"-1/2", "-1/(2b)", "1/3", "b - 1"}) {
        const QuadRat v = q(x);
        const QuadRat direct = v.sign() < 0 ? t * (v + t.inverse()) : t - (v + t.inverse());
        CHECK(sl.eval(v) == direct);
    }
}

TEST_CASE("normalisation: integral is (support length) / s") {
    CHECK(chain().word(1, 2) == "LS");
    const auto ls = bspline(chain(), 1, 2);
    CHECK(ls.integral() == t / QuadRat(2));
    CHECK(normalize_bspline(ls.scaled(QuadRat(7)), 2).equals(ls));
    CHECK(normalize_bspline(bspline(chain(), 0, 1), 1).integral() == QuadRat(1));
    CHECK_THROWS_AS(normalize_bspline(bspline(chain(), 0, 2) - bspline(chain(), 0, 2), 2), ZeroIntegral);
}

TEST_CASE("B-spline contract for s = 2, 3, 4 on the chain") {
    for (int s = 2; s <= 4; ++s)
        for (int n = -20; n <= 20; ++n) {
            CAPTURE(s);
            CAPTURE(n);
            const auto b = bspline(chain(), n, s);
            // support of s+1 nodes, s-1 nodes inside
            REQUIRE(b.lo() == chain().node(n));
            REQUIRE(b.hi() == chain().node(n + s));
            REQUIRE(b.breaks().size() == static_cast<std::size_t>(s + 1));
            for (int k = 1; k < s; ++k) REQUIRE(b.breaks()[k] == chain().node(n + k));
            REQUIRE(b.integral() == (chain().node(n + s) - chain().node(n)) / QuadRat(s));
            REQUIRE(b.continuity_order() == s - 2);
            REQUIRE(b.degree() == s - 1);
            REQUIRE(positive_on_support(b));
        }
}

TEST_CASE("recurrence agrees with floating Cox-de Boor") {
    for (int s = 1; s <= 5; ++s)
        for (int n = -10; n <= 10; ++n) {
            const auto b = bspline(chain(), n, s);
            std::vector<double> knots;
            for (int k = 0; k <= s; ++k) knots.push_back(chain().node(n + k).to_double());
            for (int i = 0; i <= 50; ++i) {
                const double x = knots.front() + (knots.back() - knots.front()) * (i + 0.37) / 51.0;
                REQUIRE(b.eval_double(x) == doctest::Approx(oracle::cox_de_boor(knots, x)).epsilon(1e-12));
            }
        }
}

TEST_CASE("Dirac weights: closed form solves the moment system") {
    const std::vector<QuadRat> uniform = {QuadRat(0), QuadRat(1), QuadRat(2)};
    const auto a = vandermonde_weights(uniform);
    CHECK(a == std::vector<QuadRat>{QuadRat(mpq_class(1, 4)), QuadRat(mpq_class(-1, 2)), QuadRat(mpq_class(1, 4))});
    CHECK(dirac_moments(a, uniform) == std::vector<QuadRat>{QuadRat(0), QuadRat(0), QuadRat(mpq_class(1, 2))});

    // word LS: gaps 1 and 1/tau
    const std::vector<QuadRat> ls = {chain().node(1), chain().node(2), chain().node(3)};
    const auto w = vandermonde_weights(ls);
    CHECK(w[0] == QuadRat(1) / (QuadRat(2) * (QuadRat(1) + t.inverse())));
    CHECK(w[0].sign() > 0);
    CHECK(w[1].sign() < 0);
    CHECK(w[2].sign() > 0);

    // sum a_l x_l^j = 0 for j < s and (-1)^s / s! for j = s (signed divided difference of x^s)
    for (int s = 1; s <= 5; ++s)
        for (int n = -8; n <= 8; ++n) {
            std::vector<QuadRat> knots;
            for (int k = 0; k <= s; ++k) knots.push_back(chain().node(n + k));
            const auto m = dirac_moments(vandermonde_weights(knots), knots);
            for (int j = 0; j < s; ++j) REQUIRE(m[j].is_zero());
            REQUIRE(m[s] == QuadRat(mpq_class(s % 2 ? -1 : 1, factorial(s))));
        }
    CHECK_THROWS_AS(vandermonde_weights({QuadRat(0), QuadRat(1), QuadRat(1)}), RepeatedNode);
}

TEST_CASE("Vandermonde route agrees with the recurrence after normalisation") {
    for (int s = 2; s <= 4; ++s)
        for (int n = -10; n <= 10; ++n) {
            const auto v = bspline_vandermonde(chain(), n, s);
            const auto b = bspline(chain(), n, s);
            REQUIRE(!v.proportionality.is_zero());
            REQUIRE(v.spline.equals(b.scaled(v.proportionality)));
            REQUIRE(normalize_bspline(v.spline, s).equals(b));
        }
}

TEST_CASE("scaling classes") {
    CHECK(scaling_classes(chain(), 2).size() == 3);
    CHECK(scaling_classes(chain(), 3).size() == 4);
    CHECK(scaling_classes(chain(), 4).size() == 5);
    const auto c2 = scaling_classes(chain(), 2);
    CHECK(c2[0].word == "LL");
    CHECK(c2[1].word == "LS");
    CHECK(c2[2].word == "SL");
    CHECK(c2[0].representative == 0);
    CHECK(c2[1].representative == -2);
    CHECK(c2[2].representative == -1);
    for (int s = 2; s <= 4; ++s)
        for (const auto& c : scaling_classes(chain(), s))
            for (int m : c.members) {
                if (m < -50 || m > 50) continue;
                REQUIRE(c.shape.translated(chain().node(m)).equals(bspline(chain(), m, s)));
                REQUIRE(&class_at(scaling_classes(chain(), s), chain(), m) != nullptr);
            }
    CHECK_THROWS_AS(scaling_classes(generate_fibonacci_chain(0, 3), 3), SequenceTooShort);
}

TEST_CASE("piecewise calculus against quadrature") {
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        const auto f = random_poly(rng, 1 + i % 5, i % 4);
        const auto g = random_poly(rng, 1 + (i + 2) % 5, (i + 1) % 4);
        const auto fb = oracle::to_doubles(merge_breaks(f.breaks(), g.breaks()));
        auto fd = [&](double x) { return f.eval_double(x); };
        auto gd = [&](double x) { return g.eval_double(x); };
        REQUIRE(f.integral().to_double() == doctest::Approx(oracle::integrate(fd, oracle::to_doubles(f.breaks()))));
        REQUIRE(inner_product(f, g).to_double() ==
                doctest::Approx(oracle::integrate([&](double x) { return fd(x) * gd(x); }, fb)).epsilon(1e-10));
        REQUIRE(f.moment(2).to_double() ==
                doctest::Approx(oracle::integrate([&](double x) { return x * x * fd(x); }, oracle::to_doubles(f.breaks())))
                    .epsilon(1e-10));
        REQUIRE((f + g - g).equals(f));
        REQUIRE((f * g).integral() == inner_product(f, g));
        // derivative of the antiderivative, refinement and trimming preserve the function
        REQUIRE(f.antiderivative().derivative().equals(f));
        REQUIRE(f.refined(merge_breaks(f.breaks(), g.breaks())).equals(f));
        REQUIRE(f.mirrored().mirrored().equals(f));
        // f(theta x - c) integrates to (1/theta) * integral f
        const QuadRat th = t * t;
        REQUIRE(f.dilated(th, QuadRat(3)).integral() == f.integral() / th);
    }
    const auto c = PiecewisePoly::constant(QuadRat(0), QuadRat(2), QuadRat(5));
    CHECK(c.derivative().is_zero());
    CHECK(c.integral() == QuadRat(10));
    CHECK_THROWS_AS(c.antiderivative(true), SupportError);
    CHECK(bspline(chain(), 0, 2).derivative().antiderivative(true).equals(bspline(chain(), 0, 2)));
}

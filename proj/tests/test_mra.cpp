#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "quasiwave/mra.hpp"

using namespace quasiwave;

namespace {

const FieldSpec kTau = tau_field();
const QuadRat t = QuadRat::beta(kTau);
const QuadRat t2 = t * t;

const NodeSequence& chain() {
    static const NodeSequence seq = generate_fibonacci_chain(-60, 120);
    return seq;
}

const Multiresolution& mra(int scale = 0) {
    static const Multiresolution m0(chain(), t2, 2, 0, 30, 0);
    static const Multiresolution m1(chain(), t2, 2, 0, 30, 1);
    return scale == 0 ? m0 : m1;
}

std::vector<QuadRat> random_exact(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<QuadRat> x(n);
    for (auto& v : x) v = QuadRat(kTau, mpq_class(d(rng), 1 + std::abs(d(rng))), mpq_class(d(rng)));
    return x;
}

bool all_zero(const std::vector<QuadRat>& v) {
    return std::all_of(v.begin(), v.end(), [](const QuadRat& x) { return x.is_zero(); });
}

}  // namespace

TEST_CASE("basis layout") {
    const auto& m = mra();
    CHECK(m.dim() == m.fine().size());
    CHECK(m.synthesis().rows() == m.dim());
    CHECK(m.synthesis().cols() == m.coarse().size() + m.detail().size() + m.boundary().size());
    CHECK(m.synthesis().cols() == m.dim());
    CHECK_FALSE(m.detail().empty());
    const QuadRat lo = m.nodes().node(m.lo()), hi = m.nodes().node(m.hi());
    for (const auto* set : {&m.fine(), &m.coarse(), &m.detail(), &m.boundary()})
        for (const auto& b : *set) {
            REQUIRE(b.f.lo() >= lo);
            REQUIRE(b.f.hi() <= hi);
        }
    for (const auto& b : m.fine()) REQUIRE(b.kind == BasisFunction::Kind::Fine);
    CHECK(basis_kind_name(BasisFunction::Kind::Detail) == "detail");
}

TEST_CASE("exact round trip") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_exact(rng, mra().dim());
        REQUIRE(mra().reconstruct(mra().decompose(x)) == x);
    }
}

TEST_CASE("float round trip") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(mra().dim());
        for (auto& v : x) v = u(rng);
        const auto split = mra().decompose(x);
        CHECK(split.rcond > 0);
        const auto y = mra().reconstruct(split);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            num += (x[i] - y[i]) * (x[i] - y[i]);
            den += x[i] * x[i];
        }
        REQUIRE(std::sqrt(num / den) <= 1e-10);
    }
}

TEST_CASE("coarse input has no detail") {
    const auto& m = mra();
    for (std::size_t j = 0; j < m.coarse().size(); ++j) {
        const auto x = m.project(m.coarse()[j].f);
        REQUIRE((m.synthesize(x) - m.coarse()[j].f).is_zero());
        const auto split = m.decompose(x);
        REQUIRE(all_zero(split.detail));
        REQUIRE(all_zero(split.boundary));
        for (std::size_t i = 0; i < split.coarse.size(); ++i) REQUIRE(split.coarse[i] == QuadRat(i == j ? 1 : 0));
    }
}

TEST_CASE("detail functions are orthogonal to the coarse space") {
    const auto& m = mra();
    for (const auto& d : m.detail())
        for (const auto& c : m.coarse()) REQUIRE(inner_product(d.f, c.f).is_zero());
}

TEST_CASE("projection is idempotent and matches a float fit") {
    const auto& m = mra();
    std::mt19937 rng(3);
    const auto c = random_exact(rng, m.dim());
    const auto f = m.synthesize(c);
    CHECK(m.project(f) == c);
    const auto again = m.project(m.synthesize(m.project(f)));
    CHECK(again == c);

    std::vector<double> xs, ys;
    const double lo = m.nodes().node(m.lo()).to_double(), hi = m.nodes().node(m.hi()).to_double();
    for (int i = 0; i <= 2000; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / 2001.0;
        xs.push_back(x);
        ys.push_back(f.eval_double(x));
    }
    const auto fit = m.project_samples(xs, ys);
    CHECK(fit.rcond > 0);
    CHECK(fit.residual_rms < 1e-9);
    for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(fit.coeffs[i] == doctest::Approx(c[i].to_double()).epsilon(1e-8));
}

TEST_CASE("Gram matrix against quadrature") {
    const auto& m = mra();
    const auto g = m.gram_double();
    const std::size_t n = m.dim();
    REQUIRE(g.size() == n * n);
    for (std::size_t i = 0; i < n; i += 3)
        for (std::size_t j = i; j < std::min(n, i + 4); ++j) {
            const auto& a = m.fine()[i].f;
            const auto& b = m.fine()[j].f;
            const double ref = oracle::integrate([&](double x) { return a.eval_double(x) * b.eval_double(x); },
                                                 oracle::to_doubles(merge_breaks(a.breaks(), b.breaks())));
            REQUIRE(g[i * n + j] == doctest::Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("scale covariance") {
    // f in V_0 and f(theta x) in V_1 have the same coefficients
    const auto& m0 = mra(0);
    const auto& m1 = mra(1);
    REQUIRE(m0.dim() == m1.dim());
    std::mt19937 rng(4);
    const auto c = random_exact(rng, m0.dim());
    const auto f = m0.synthesize(c);
    const auto g = m1.synthesize(c);
    CHECK((f.dilated(t2) - g).is_zero());
    CHECK(m1.project(f.dilated(t2)) == c);
    const auto a = m0.decompose(c), b = m1.decompose(c);
    CHECK(a.coarse == b.coarse);
    CHECK(a.detail == b.detail);
    CHECK(a.boundary == b.boundary);
}

TEST_CASE("frame bounds") {
    const auto sys = build_wavelet_system(chain(), t2, 2);
    const auto fb = wavelet_frame_bounds(sys, chain(), {20, 40, 80});
    REQUIRE(fb.size() == 3);
    for (const auto& b : fb) {
        CHECK(b.A > 1e-3);
        CHECK(b.B >= b.A);
        CHECK(b.B < 10);
    }
    CHECK(std::abs(fb[2].A - fb[1].A) / fb[1].A < 0.2);
    CHECK(std::abs(fb[2].B - fb[1].B) / fb[1].B < 0.2);

    const auto one = gram_extremes({sys.mothers.front().psi});
    CHECK(one.A == doctest::Approx(1.0));
    CHECK(one.B == doctest::Approx(1.0));
    const auto hat = gram_extremes_normalized({bspline(chain(), 0, 2)});
    CHECK(hat.A == doctest::Approx(1.0));
}

#include <doctest.h>

#include <map>
#include <random>

#include "quasiwave/refine.hpp"

using namespace quasiwave;

namespace {

const FieldSpec kTau = tau_field();
const QuadRat t = QuadRat::beta(kTau);
const QuadRat t2 = t * t;

QuadRat q(const char* s) { return parse_quad(s, kTau); }

const NodeSequence& chain() {
    static const NodeSequence seq = generate_fibonacci_chain(-80, 80);
    return seq;
}

const std::vector<ScalingClass>& hats() {
    static const auto c = scaling_classes(chain(), 2);
    return c;
}

QuadRat coeff_at(const RefinementTable& table, const std::string& basis, const QuadRat& translate) {
    const auto* term = table.find(basis, translate);
    REQUIRE(term != nullptr);
    REQUIRE(term->coeff.radicand == QuadRat(1));
    return term->coeff.factor;
}

PiecewisePoly basis_at(const std::vector<ScalingClass>& classes, int node) {
    const auto& c = class_at(classes, chain(), node);
    return c.shape.translated(chain().node(node));
}

std::map<int, QuadRat> by_node(const RefinementTable& t) {
    std::map<int, QuadRat> m;
    for (const auto& term : t.terms) m[term.node] += term.coeff.factor;
    return m;
}

}  // namespace

TEST_CASE("hat scaling equations") {
    const auto tables = scaling_equations(chain(), hats(), t2);
    REQUIRE(tables.size() == 3);
    const RefinementTable* ll = nullptr;
    const RefinementTable* sl = nullptr;
    for (const auto& x : tables) {
        if (x.target == "LL") ll = &x;
        if (x.target == "SL") sl = &x;
        CHECK(x.dilation == t2);
        for (const auto& term : x.terms) CHECK_FALSE(term.coeff.factor.is_zero());
    }
    REQUIRE(ll);
    REQUIRE(ll->terms.size() == 5);
    CHECK(coeff_at(*ll, "LL", q("0")) == t2.inverse());
    CHECK(coeff_at(*ll, "LS", q("1")) == QuadRat(2) / t2);
    CHECK(coeff_at(*ll, "SL", q("2")) == QuadRat(1));
    CHECK(coeff_at(*ll, "LL", t2) == t.inverse());
    CHECK(coeff_at(*ll, "LS", t2 + QuadRat(1)) == t.pow(-3));

    REQUIRE(sl);
    CHECK(sl->terms.size() == 4);
    CHECK(sl->terms.front().basis == "LS");
    CHECK(sl->terms.front().translate == -t);
    CHECK(sl->terms.front().coeff.factor == t.inverse());

    // each equation reproduces phi(x / theta) in the fine basis
    for (const auto& x : tables) {
        const auto& c = *std::find_if(hats().begin(), hats().end(), [&](const ScalingClass& k) { return k.word == x.target; });
        const auto coarse = c.shape.translated(chain().node(c.representative)).dilated(t2.inverse());
        CHECK((expand(x, hats()) - coarse).is_zero());
    }
}

TEST_CASE("identity and zero expansions") {
    const auto phi = basis_at(hats(), 3);
    const auto self = refine_general(phi, chain(), hats());
    REQUIRE(self.terms.size() == 1);
    CHECK(self.terms[0].node == 3);
    CHECK(self.terms[0].coeff.factor == QuadRat(1));
    CHECK(refine_linear(phi, chain(), hats()).terms.size() == 1);

    const PiecewisePoly zero = phi - phi;
    CHECK(refine_general(zero, chain(), hats()).terms.empty());
    CHECK(refine_linear(zero, chain(), hats()).terms.empty());

    // a step is not a combination of hats
    const auto step = PiecewisePoly::constant(QuadRat(0), QuadRat(1), QuadRat(1));
    CHECK_THROWS_AS(refine_linear(step, chain(), hats()), NotInSpan);
    CHECK_THROWS_AS(refine_general(step, chain(), hats()), NotInSpan);
}

TEST_CASE("linear and general solvers agree on random hat combinations") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int trial = 0; trial < 40; ++trial) {
        const int lo = d(rng);
        const int len = 1 + trial % 7;
        PiecewisePoly f = basis_at(hats(), lo).scaled(QuadRat(kTau, d(rng), d(rng)));
        for (int k = lo + 1; k < lo + len; ++k) f = f + basis_at(hats(), k).scaled(QuadRat(kTau, mpq_class(d(rng), 7), d(rng)));
        const auto a = refine_linear(f, chain(), hats());
        const auto b = refine_general(f, chain(), hats());
        REQUIRE(by_node(a) == by_node(b));
        REQUIRE((expand(a, hats()) - f).is_zero());
    }
}

TEST_CASE("cubic targets use the general solver") {
    const auto cubic = scaling_classes(chain(), 4);
    for (const auto& eq : scaling_equations(chain(), cubic, t2)) {
        const auto& c = *std::find_if(cubic.begin(), cubic.end(), [&](const ScalingClass& k) { return k.word == eq.target; });
        const auto coarse = c.shape.translated(chain().node(c.representative)).dilated(t2.inverse());
        CHECK((expand(eq, cubic) - coarse).is_zero());
    }
}

TEST_CASE("two-scale composition") {
    for (const auto& c : hats()) {
        CAPTURE(c.word);
        const auto phi = c.shape.translated(chain().node(c.representative));
        // direct: phi(x / theta^2) in the scale-0 basis
        const auto direct = by_node(refine_general(phi.dilated(t2.pow(-2)), chain(), hats()));
        // composed: phi(x / theta) = sum g_j phi_j(x), then each phi_j(x / theta)
        const auto first = refine_general(phi.dilated(t2.inverse()), chain(), hats());
        std::map<int, QuadRat> composed;
        for (const auto& term : first.terms) {
            const auto second = refine_general(basis_at(hats(), term.node).dilated(t2.inverse()), chain(), hats());
            for (const auto& s : second.terms) composed[s.node] += term.coeff.factor * s.coeff.factor;
        }
        std::erase_if(composed, [](const auto& kv) { return kv.second.is_zero(); });
        CHECK(composed == direct);
    }
}

TEST_CASE("wavelet refinement columns") {
    const auto sys = build_wavelet_system(chain(), t2, 2);
    const auto eqs = wavelet_scaling_equations(sys, chain());
    REQUIRE(eqs.size() == 4);
    std::map<int, const WaveletEquation*> by_start;
    for (const auto& e : eqs) by_start[e.n] = &e;

    for (const auto& e : eqs) {
        CAPTURE(e.word);
        const auto& m = sys.mother(e.word);
        CHECK(e.table.terms.size() == static_cast<std::size_t>(m.plan.N - 1));
        CHECK((expand(e.table, hats()) - m.zeta).is_zero());
        CHECK(e.norm_sq == m.norm_sq);
        for (const auto& term : e.table.terms) CHECK_FALSE(term.coeff.factor.is_zero());
    }

    REQUIRE(by_start.count(-5));
    const auto& a = by_start[-5]->table;
    CHECK(coeff_at(a, "LL", chain().node(-5)) == QuadRat(6));
    CHECK(coeff_at(a, "LS", chain().node(-4)) == q("12/11 (5-13b)"));
    CHECK(coeff_at(a, "SL", chain().node(-3)) == q("12/11 (4+5b)"));
    CHECK(coeff_at(a, "LS", chain().node(-2)) == q("12/11 (2-3b)"));

    REQUIRE(by_start.count(-4));
    CHECK(coeff_at(by_start[-4]->table, "SL", chain().node(-1)) == q("-18/11 (13+16b)"));

    REQUIRE(by_start.count(0));
    const auto& d = by_start[0]->table;
    CHECK(coeff_at(d, "LL", chain().node(0)) == QuadRat(6));
    CHECK(coeff_at(d, "LS", chain().node(1)) == q("36/11 (6-7b)"));
    CHECK(coeff_at(d, "SL", chain().node(2)) == q("-36/11 (1-3b)"));
    CHECK(coeff_at(d, "LL", chain().node(3)) == q("6/11 (1-3b)"));

    // the column starting at lambda_{-2}: recomputation gives 3(8+11b) at phi_LL(tau^2 x)
    REQUIRE(by_start.count(-2));
    CHECK(coeff_at(by_start[-2]->table, "LL", QuadRat(0)) == q("3(8+11b)"));
    CHECK_FALSE(coeff_at(by_start[-2]->table, "LL", QuadRat(0)) == q("3(49+79b)"));
}

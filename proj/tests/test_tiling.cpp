#include <doctest.h>

#include <regex>
#include <set>

#include "oracle.hpp"
#include "quasiwave/tiling.hpp"

using namespace quasiwave;

namespace {

const FieldSpec kTau = tau_field();
const FieldSpec kTau2 = FieldSpec::make(Family::Plus, 3);
const QuadRat t = QuadRat::beta(kTau);

QuadRat q(const char* s, const FieldSpec& f = kTau) { return parse_quad(s, f); }

std::vector<QuadRat> qs(std::initializer_list<const char*> xs, const FieldSpec& f = kTau) {
    std::vector<QuadRat> out;
    for (const char* x : xs) out.push_back(q(x, f));
    return out;
}

}  // namespace

TEST_CASE("substitution rules") {
    for (int a = 1; a <= 5; ++a) {
        const auto f = FieldSpec::make(Family::Minus, a);
        for (const auto& r : {SubstitutionRule::beta_integers(f), SubstitutionRule::model_set(f)}) {
            CHECK(r.inflation_consistent());
            CHECK(r.perron_consistent());
        }
    }
    for (int a = 3; a <= 6; ++a) {
        const auto r = SubstitutionRule::beta_integers(FieldSpec::make(Family::Plus, a));
        CHECK(r.inflation_consistent());
        CHECK(r.perron_consistent());
    }
    const auto fib = SubstitutionRule::fibonacci_chain();
    CHECK(fib.image_L == "LLS");
    CHECK(fib.image_S == "LS");
    CHECK(fib.scale == t * t);
    CHECK(fib.inflation_consistent());
}

TEST_CASE("substitution fixed point: generation g maps to a prefix of g+1") {
    for (const auto& rule : {SubstitutionRule::fibonacci_chain(), SubstitutionRule::beta_integers(kTau),
                             SubstitutionRule::beta_integers(FieldSpec::make(Family::Minus, 3)),
                             SubstitutionRule::beta_integers(kTau2)}) {
        std::string g = "L";
        for (int i = 0; i < 8; ++i) {
            const std::string next = rule.apply(g);
            REQUIRE(next.compare(0, g.size(), g) == 0);
            g = next;
        }
    }
}

TEST_CASE("tau-integers around the origin") {
    const auto seq = generate_beta_integers(kTau, 5);
    CHECK(seq.nodes() == qs({"0", "1", "b", "b^2", "b^2 + 1", "b^3"}));
    CHECK(seq.letters() == "LSLLS");
    const auto one = generate_beta_integers(kTau, 1);
    CHECK(one.nodes() == qs({"0", "1"}));
    CHECK(one.letters() == "L");
    CHECK_THROWS_AS(generate_beta_integers(kTau, 0), ParameterOutOfRange);

    const auto sym = generate_beta_integers(kTau, 3, true);
    CHECK(sym.first_index() == -3);
    CHECK(sym.node(-2) == -t);
    CHECK(sym.node(2) == t);
}

TEST_CASE("tau^2-integers around the origin") {
    const auto seq = generate_beta_integers(kTau2, 7);
    CHECK(seq.nodes() == qs({"0", "1", "2", "b", "b+1", "b+2", "2b", "2b+1"}, kTau2));
}

TEST_CASE("greedy digits") {
    CHECK(digits_to_string(greedy_beta_digits(q("b^2 + 1"), kTau)) == "101");
    CHECK(digits_to_string(greedy_beta_digits(QuadRat(0), kTau)) == "0");
    CHECK(digits_to_string(greedy_beta_digits(q("2b + 1", kTau2), kTau2)) == "21");
    CHECK_THROWS_AS(greedy_beta_digits(q("1/2"), kTau), NotABetaInteger);
    CHECK_THROWS_AS(greedy_beta_digits(q("b - 1"), kTau), NotABetaInteger);
    CHECK(is_beta_integer(q("b^3"), kTau));
    CHECK_FALSE(is_beta_integer(q("1/b"), kTau));

    // digits evaluate back to the node
    const auto seq = generate_beta_integers(FieldSpec::make(Family::Minus, 2), 60);
    const QuadRat b = QuadRat::beta(FieldSpec::make(Family::Minus, 2));
    for (const auto& x : seq.nodes()) {
        QuadRat v;
        for (int d : greedy_beta_digits(x, FieldSpec::make(Family::Minus, 2))) v = v * b + QuadRat(d);
        REQUIRE(v == x);
    }
}

TEST_CASE("greedy digits avoid the forbidden patterns") {
    const auto z1 = generate_beta_integers(kTau, 400);
    for (const auto& x : z1.nodes())
        REQUIRE(digits_to_string(greedy_beta_digits(x, kTau)).find("11") == std::string::npos);
    const std::regex forbidden("21*2");
    const auto z2 = generate_beta_integers(kTau2, 400);
    for (const auto& x : z2.nodes())
        REQUIRE_FALSE(std::regex_search(digits_to_string(greedy_beta_digits(x, kTau2)), forbidden));
}

TEST_CASE("Fibonacci chain around the origin") {
    const auto seq = generate_fibonacci_chain(-5, 5);
    CHECK(seq.nodes() == qs({"-b^3", "-b^2 - 1/b", "-b - 1/b", "-b", "-1/b", "0", "1", "b + 1/b^2", "b^2",
                             "b^2 + 1", "b^3 + 1/b^2"}));
    CHECK(seq.node(0).is_zero());
    CHECK(generate_fibonacci_chain(0, 8).word(0, 8) == "LLSLLSLS");
}

TEST_CASE("Fibonacci chain matches brute-force cut-and-project") {
    const auto seq = generate_fibonacci_chain(-300, 300);
    const double lo = seq.node(-300).to_double() + 1e-9, hi = seq.node(300).to_double() - 1e-9;
    std::vector<QuadRat> expected;
    for (auto [m, n] : oracle::cut_and_project(lo, hi)) expected.push_back(QuadRat(kTau, m, n));
    std::vector<QuadRat> got(seq.nodes().begin() + 1, seq.nodes().end() - 1);
    CHECK(got == expected);
}

TEST_CASE("letters: chain word equals the substitution fixed point; gaps match letters") {
    const auto seq = generate_fibonacci_chain(-500, 1000);
    CHECK(seq.word(0, 1000) == oracle::fibonacci_word(1000));
    for (int k = -500; k < 1000; ++k) {
        const QuadRat gap = seq.node(k + 1) - seq.node(k);
        REQUIRE(gap.sign() == 1);
        REQUIRE(gap == (seq.letter(k) == 'L' ? seq.len_L() : seq.len_S()));
    }
    CHECK(seq.len_L() == QuadRat(1));
    CHECK(seq.len_S() == t.inverse());
}

TEST_CASE("conjugates of chain nodes lie in the window [0, tau^2)") {
    const auto seq = generate_fibonacci_chain(-400, 400);
    for (const auto& x : seq.nodes()) {
        const QuadRat c = x.conjugate();
        REQUIRE(c.sign() >= 0);
        REQUIRE(c < t * t);
        REQUIRE(seq.contains_point(x));
    }
    CHECK_FALSE(seq.contains_point(t * t * t));
    CHECK_FALSE(seq.contains_point(q("1/2")));
}

TEST_CASE("membership in tau^2 Lambda") {
    const auto seq = generate_fibonacci_chain(-5, 5);
    const QuadRat th = t * t;
    const std::vector<bool> row = {true, false, false, true, false, true, false, false, true, false, false};
    for (int k = -5; k <= 5; ++k) CHECK(seq.in_scaled(seq.node(k), th) == row[k + 5]);
    const auto scaled = seq.rescaled(th);
    CHECK(scaled.letters() == seq.letters());
    CHECK(scaled.node(2) == th * seq.node(2));
}

TEST_CASE("self-similarity: theta Lambda is contained in Lambda") {
    const auto seq = generate_fibonacci_chain(-200, 600);
    const QuadRat th = t * t;
    std::set<std::pair<mpq_class, mpq_class>> nodes;
    for (const auto& x : seq.nodes()) nodes.insert({x.p(), x.q()});
    for (int k = -70; k <= 200; ++k) {
        const QuadRat y = th * seq.node(k);
        REQUIRE(nodes.count({y.p(), y.q()}) == 1);
    }
    const auto zb = generate_beta_integers(kTau, 300);
    std::set<std::pair<mpq_class, mpq_class>> zn;
    for (const auto& x : zb.nodes()) zn.insert({x.p(), x.q()});
    for (int k = 0; k <= 100; ++k) {
        const QuadRat y = t * zb.node(k);
        REQUIRE(zn.count({y.p(), y.q()}) == 1);
    }
}

TEST_CASE("neighbour map") {
    CHECK(neighbor_map(QuadRat(0).bound_to(kTau), Direction::Right) == QuadRat(1));
    CHECK(neighbor_map(QuadRat(1).bound_to(kTau), Direction::Right) == QuadRat(2));
    const auto seq = generate_fibonacci_chain(-5, 5);
    CHECK(seq.node(2).conjugate() == QuadRat(2));
    CHECK(neighbor_map(neighbor_map(QuadRat(0).bound_to(kTau), Direction::Right), Direction::Right) == QuadRat(2));
    CHECK_THROWS_AS(neighbor_map(t * t, Direction::Right), OutOfWindow);
    CHECK_THROWS_AS(neighbor_map(QuadRat(-1).bound_to(kTau), Direction::Left), OutOfWindow);

    const auto big = generate_fibonacci_chain(-300, 300);
    for (int k = -299; k < 299; ++k) {
        const QuadRat c = big.node(k).conjugate();
        REQUIRE(neighbor_map(c, Direction::Right) == big.node(k + 1).conjugate());
        REQUIRE(neighbor_map(c, Direction::Left) == big.node(k - 1).conjugate());
    }
}

TEST_CASE("word classes: n + 1 classes with exact windows") {
    const auto seq = generate_fibonacci_chain(-300, 300);
    const auto c2 = classify_words(seq, 2);
    REQUIRE(c2.size() == 3);
    CHECK(c2[0].word == "LL");
    CHECK(c2[1].word == "LS");
    CHECK(c2[2].word == "SL");
    const auto c1 = classify_words(seq, 1);
    CHECK(c1.size() == 2);
    CHECK(classify_words(seq, 4).size() == 5);
    for (int n = 1; n <= 25; ++n) {
        const auto cl = classify_words(seq, n);
        REQUIRE(cl.size() == static_cast<std::size_t>(n + 1));
        // windows tile [0, tau^2) in order and contain the members' conjugates
        QuadRat edge = QuadRat(0);
        for (std::size_t i = 0; i < cl.size(); ++i) {
            REQUIRE(cl[i].window.has_value());
            REQUIRE(cl[i].window->first == edge);
            edge = cl[i].window->second;
            if (i > 0) REQUIRE(word_before(cl[i - 1].word, cl[i].word));
            for (int m : cl[i].members) {
                const QuadRat c = seq.node(m).conjugate();
                REQUIRE(cl[i].window->first <= c);
                REQUIRE(c < cl[i].window->second);
            }
        }
        REQUIRE(edge == t * t);
    }
    CHECK_THROWS_AS(classify_words(generate_fibonacci_chain(0, 3), 3), SequenceTooShort);
}

TEST_CASE("left ends of all n-letter words") {
    const auto seq = generate_fibonacci_chain(-60, 60);
    CHECK(left_ends_of_all_words(seq, 2) == std::vector<int>{-2, -1, 0});
    CHECK(left_ends_of_all_words(seq, 1) == std::vector<int>{-1, 0});
    const auto five = left_ends_of_all_words(seq, 5);
    CHECK(five.size() == 6);
    std::set<std::string> words;
    for (int k : five) words.insert(seq.word(k, 5));
    CHECK(words.size() == 6);
    CHECK_THROWS_AS(left_ends_of_all_words(generate_fibonacci_chain(-2, 10), 5), SequenceTooShort);
}

TEST_CASE("letter counts") {
    const auto seq = generate_fibonacci_chain(-60, 60);
    CHECK(seq.word(0, 5) == "LLSLL");
    CHECK(word_letter_counts(seq, 0, 5) == LetterCounts{4, 1});
    CHECK(word_letter_counts(seq, 0, 1) == LetterCounts{1, 0});
    CHECK(seq.word(-3, 3) == "SLS");
    CHECK(word_letter_counts(seq, -3, 3) == LetterCounts{1, 2});
    const auto [hi, lo] = fibonacci_count_pairs(5);
    CHECK(hi == LetterCounts{4, 1});
    CHECK(lo == LetterCounts{3, 2});
    CHECK_THROWS_AS(word_letter_counts(seq, 58, 5), RangeError);

    const auto rep = sweep_letter_counts(generate_fibonacci_chain(-300, 300), 200);
    CHECK(rep.words_checked > 0);
    CHECK(rep.formula_mismatches == 0);
    CHECK(rep.balance_violations == 0);
}

TEST_CASE("two model-set routes agree (sieve and substitution)") {
    // tau^2 integers re-embedded in Q(tau) are the chain
    const auto pts = fibonacci_from_tau2_integers(40);
    const auto seq = generate_fibonacci_chain(-120, 120);
    std::set<std::pair<mpq_class, mpq_class>> nodes;
    for (const auto& x : seq.nodes()) nodes.insert({x.p(), x.q()});
    const QuadRat lo = pts.front(), hi = pts.back();
    std::size_t inside = 0;
    for (const auto& x : seq.nodes()) inside += lo <= x && x <= hi;
    for (const auto& x : pts) REQUIRE(nodes.count({x.p(), x.q()}) == 1);
    CHECK(inside == pts.size());

    // tiles beta + 1 and beta from the substitution route equal tau^2 times the chain
    const auto sub = model_set_by_substitution(kTau, 4);
    const auto chain = generate_fibonacci_chain(sub.first_index(), sub.last_index());
    for (int k = sub.first_index(); k <= sub.last_index(); ++k) REQUIRE(sub.node(k) == t * t * chain.node(k));

    const ModelSetSpec unit{QuadRat(0), QuadRat(1)};
    for (int a = 1; a <= 3; ++a) {
        CAPTURE(a);
        const auto f = FieldSpec::make(Family::Minus, a);
        // substitution route equals the direct cut-and-project points
        const auto by_sub = model_set_by_substitution(f, 3);
        CHECK(by_sub.nodes() == model_set_points(f, unit, by_sub.nodes().front(), by_sub.nodes().back()));
        // sieved beta-integers equal the cut-and-project points well inside the generated range
        const auto sieve = sieve_beta_integers(f, 600);
        const QuadRat lo = sieve.front() / QuadRat(2), hi = sieve.back() / QuadRat(2);
        std::vector<QuadRat> inner;
        for (const auto& x : sieve)
            if (lo <= x && x <= hi) inner.push_back(x);
        CHECK(inner.size() > 20);
        CHECK(inner == model_set_points(f, unit, lo, hi));
    }
    CHECK_THROWS_AS(sieve_beta_integers(kTau2, 10), ParameterOutOfRange);
}

// One PASS/FAIL line per acceptance criterion.  Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qwave/golden.hpp"
#include "qwave/verify.hpp"
#include "quasiwave/haar.hpp"
#include "quasiwave/mra.hpp"
#include "quasiwave/refine.hpp"

using namespace quasiwave;

namespace {

constexpr double kDecimalTol = 1e-3;
constexpr std::size_t kTypoBudget = 2;
constexpr double kFloatRoundTripTol = 1e-10;
constexpr double kMinLowerBound = 1e-3;
constexpr double kMaxBoundDrift = 0.20;

const FieldSpec kTau = tau_field();
const QuadRat kTheta = QuadRat::beta(kTau).pow(2);

struct Outcome {
    bool pass = true;
    std::string detail;
};

const NodeSequence& chain() {
    static const NodeSequence seq = generate_fibonacci_chain(-120, 160);
    return seq;
}

const qwave::VerifyReport& report() {
    static const qwave::VerifyReport r = [] {
        qwave::VerifyOptions opt;
        opt.typo_budget = kTypoBudget;
        opt.decimal_tolerance = kDecimalTol;
        return qwave::verify(qwave::load_golden(qwave::embedded_golden_text(), "embedded"), opt);
    }();
    return r;
}

Outcome groups_clean(std::initializer_list<const char*> groups) {
    Outcome o;
    std::size_t pass = 0;
    for (const char* g : groups) {
        pass += report().count(g, qwave::Status::Pass);
        const auto bad = report().count(g, qwave::Status::Fail) + report().count(g, qwave::Status::Warn);
        if (bad) {
            o.pass = false;
            o.detail += std::string(g) + ": " + std::to_string(bad) + " not passing; ";
        }
    }
    o.detail += std::to_string(pass) + " checks passed";
    return o;
}

Outcome chain_points() { return groups_clean({"fibonacci_points"}); }

Outcome zeta_tables() { return groups_clean({"zeta_pieces", "zeta_norms"}); }

Outcome refinement_tables() {
    Outcome o;
    std::size_t cells = 0, pass = 0;
    std::string flagged;
    for (const auto& c : report().checks) {
        const bool relevant = c.group == "wavelet_refinement" || c.group == "scaled_norms" || c.group == "scaling_equations";
        if (!relevant) continue;
        if (c.status == qwave::Status::Fail) {
            o.pass = false;
            flagged += " FAIL[" + c.id + ": printed " + c.expected + ", recomputed " + c.actual + "]";
        } else if (c.status == qwave::Status::Warn) {
            const bool cell = c.group == "wavelet_refinement" && c.id.find("heading") == std::string::npos;
            cells += cell;
            flagged += " [" + c.id + ": printed " + c.expected + ", recomputed " + c.actual + "]";
        } else {
            ++pass;
        }
    }
    if (cells > kTypoBudget) o.pass = false;
    o.detail = std::to_string(pass) + " checks passed, " + std::to_string(cells) + " coefficient cell(s) flagged (budget " +
               std::to_string(kTypoBudget) + ");" + flagged;
    return o;
}

Outcome mother_words() {
    Outcome o;
    std::set<std::string> got;
    for (const auto& w : enumerate_mother_words(chain(), kTheta, 2)) got.insert(w.word);
    if (got != std::set<std::string>{"LLSLS", "LSLSLL", "LSLLS", "LLSLL"}) o.pass = false;
    for (int s = 2; s <= 4; ++s) {
        const auto ws = enumerate_mother_words(chain(), kTheta, s);
        const int p = fibonacci_support_length(s);
        bool lengths = true;
        for (const auto& w : ws) lengths = lengths && (static_cast<int>(w.word.size()) == p || static_cast<int>(w.word.size()) == p + 1);
        o.pass = o.pass && lengths && ws.size() == static_cast<std::size_t>(2 * s);
        o.detail += "s=" + std::to_string(s) + ": " + std::to_string(ws.size()) + " words, lengths " + std::to_string(p) +
                    "/" + std::to_string(p + 1) + (lengths ? "" : " VIOLATED") + "; ";
    }
    return o;
}

Outcome haar_identities() {
    Outcome o;
    int equations = 0;
    for (const auto& f : {FieldSpec::make(Family::Minus, 1), FieldSpec::make(Family::Minus, 2),
                          FieldSpec::make(Family::Minus, 3), FieldSpec::make(Family::Plus, 3)}) {
        const HaarSystem h(f);
        for (const auto& e : h.refinement_equations()) {
            ++equations;
            if (!h.residual(e).is_zero()) {
                o.pass = false;
                o.detail += "nonzero residual " + f.name() + " " + e.label + "; ";
            }
        }
    }
    const HaarSystem h(kTau);
    const auto basis = haar_basis_window(h, HaarVariant::Orthonormal, 100);
    std::size_t off = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            if (basis[i].hi() <= basis[j].lo() || basis[j].hi() <= basis[i].lo()) continue;
            const RootSum ip = inner_product(basis[i], basis[j]);
            const bool ok = i == j ? ip.as_quad() == std::optional<QuadRat>(QuadRat(1)) : ip.is_zero();
            off += !ok;
        }
    o.pass = o.pass && off == 0;
    o.detail += std::to_string(equations) + " refinement equations with zero residual; Gram of " +
                std::to_string(basis.size()) + " functions over 100 tiles: " + std::to_string(off) + " entries off identity";
    return o;
}

Outcome bspline_contract() {
    Outcome o;
    int checked = 0;
    for (int s = 2; s <= 4; ++s)
        for (int n = -60; n <= 60; ++n) {
            const auto b = bspline(chain(), n, s);
            bool ok = b.lo() == chain().node(n) && b.hi() == chain().node(n + s) &&
                      b.breaks().size() == static_cast<std::size_t>(s + 1) &&
                      b.integral() == (chain().node(n + s) - chain().node(n)) / QuadRat(s) &&
                      b.continuity_order() == s - 2 && positive_on_support(b);
            for (int k = 1; k < s; ++k) ok = ok && b.breaks()[k] == chain().node(n + k);
            ok = ok && normalize_bspline(bspline_vandermonde(chain(), n, s).spline, s).equals(b);
            if (!ok) {
                o.pass = false;
                o.detail += "s=" + std::to_string(s) + " n=" + std::to_string(n) + " fails; ";
            }
            ++checked;
        }
    o.detail += std::to_string(checked) + " splines (s = 2, 3, 4), recurrence = Dirac-weight route";
    return o;
}

Outcome wavelet_structure() {
    Outcome o;
    for (int s = 2; s <= 3; ++s) {
        const auto sys = build_wavelet_system(chain(), kTheta, s);
        for (const auto& m : sys.mothers) {
            bool ok = !m.zeta.moment(s).is_zero();
            for (int k = 0; k < s; ++k) ok = ok && m.zeta.moment(k).is_zero();
            for (int j = m.n; j <= m.n + m.plan.N; ++j)
                if (chain().in_scaled(chain().node(j), kTheta)) ok = ok && m.Psi.eval(chain().node(j)).is_zero();
            if (!ok) {
                o.pass = false;
                o.detail += "s=" + std::to_string(s) + " " + m.word + " fails; ";
            }
        }
        int lo_count = 1 << 20, hi_count = 0;
        for (int m = -60; m <= 60; ++m) {
            int count = 0;
            for (int k : sys.E)
                if (k <= m && k + support_plan(chain(), kTheta, k, 2 * s).N >= m + 1 && k >= m - 20) ++count;
            lo_count = std::min(lo_count, count);
            hi_count = std::max(hi_count, count);
        }
        if (lo_count < 2 * s - 1 || hi_count > 2 * s) o.pass = false;
        o.detail += "s=" + std::to_string(s) + ": " + std::to_string(sys.mothers.size()) + " shapes, overlap " +
                    std::to_string(lo_count) + ".." + std::to_string(hi_count) + "; ";
    }
    return o;
}

Outcome combinatorics() {
    Outcome o;
    const auto seq = generate_fibonacci_chain(-2500, 2500 + 2001);
    // sweep the 5000-node window [-2500, 2500) with words up to length 2000
    const auto window = seq.slice(-2500, 2500 + 2000);
    const auto r = sweep_letter_counts(window, 2000);
    o.pass = r.formula_mismatches == 0 && r.balance_violations == 0 && r.words_checked > 0;
    o.detail = std::to_string(r.words_checked) + " words, " + std::to_string(r.formula_mismatches) + " formula mismatches, " +
               std::to_string(r.balance_violations) + " count-pair violations; ";
    int prop_ok = 0;
    for (int n = 1; n <= 50; ++n) {
        std::set<std::string> near, all;
        for (int k : left_ends_of_all_words(seq, n)) near.insert(seq.word(k, n));
        for (const auto& c : classify_words(seq, n)) all.insert(c.word);
        if (near == all && all.size() == static_cast<std::size_t>(n + 1)) ++prop_ok;
    }
    o.pass = o.pass && prop_ok == 50;
    o.detail += "left ends cover all n+1 words for " + std::to_string(prop_ok) + "/50 lengths";
    return o;
}

Outcome round_trip() {
    Outcome o;
    const Multiresolution m(chain(), kTheta, 2, 0, 60);
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> digit(-9, 9);
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    int exact_ok = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::vector<QuadRat> x(m.dim());
        for (auto& v : x) v = QuadRat(kTau, mpq_class(digit(rng), 1 + std::abs(digit(rng))), mpq_class(digit(rng)));
        exact_ok += m.reconstruct(m.decompose(x)) == x;
        std::vector<double> y(m.dim());
        for (auto& v : y) v = real(rng);
        const auto z = m.reconstruct(m.decompose(y));
        double num = 0, den = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            num += (y[i] - z[i]) * (y[i] - z[i]);
            den += y[i] * y[i];
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    o.pass = exact_ok == 100 && worst <= kFloatRoundTripTol;
    char buf[160];
    std::snprintf(buf, sizeof buf, "dim %zu; exact equal %d/100; float max relative L2 error %.3g (tol %.0e)", m.dim(),
                  exact_ok, worst, kFloatRoundTripTol);
    o.detail = buf;
    return o;
}

Outcome frame_bounds() {
    Outcome o;
    const auto sys = build_wavelet_system(chain(), kTheta, 2);
    const auto fb = wavelet_frame_bounds(sys, chain(), {20, 40, 80});
    std::ostringstream d;
    for (const auto& b : fb) {
        d << "w=" << b.window_nodes << " A=" << b.A << " B=" << b.B << "; ";
        o.pass = o.pass && b.A > kMinLowerBound && std::isfinite(b.B);
    }
    const double drift_a = std::abs(fb[2].A - fb[1].A) / fb[1].A, drift_b = std::abs(fb[2].B - fb[1].B) / fb[1].B;
    o.pass = o.pass && drift_a < kMaxBoundDrift && drift_b < kMaxBoundDrift;
    d << "drift 40->80: A " << drift_a << ", B " << drift_b;
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"chain points around the origin", chain_points},
        {"linear wavelet pieces and norms", zeta_tables},
        {"wavelet refinement coefficients", refinement_tables},
        {"mother wavelet supports", mother_words},
        {"Haar identities", haar_identities},
        {"B-spline contract", bspline_contract},
        {"wavelet structure", wavelet_structure},
        {"letter counts and left ends", combinatorics},
        {"transform round trip", round_trip},
        {"frame-bound stability", frame_bounds},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("%s %2zu  %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, o.detail.c_str());
    }
    return failed ? 1 : 0;
}

#include "quasiwave/refine.hpp"

#include "quasiwave/linsolve.hpp"

namespace quasiwave {

const RefinementTerm* RefinementTable::find(const std::string& basis, const QuadRat& translate) const {
    for (const auto& t : terms)
        if (t.basis == basis && t.translate == translate) return &t;
    return nullptr;
}

namespace {

struct Span {
    int lo;
    int hi;
};

// Node indices of the support ends; the target refined onto every node inside.
Span support_span(const PiecewisePoly& target, const NodeSequence& seq, PiecewisePoly& refined) {
    PiecewisePoly t = target.trimmed();
    auto lo = seq.index_of(t.lo());
    auto hi = seq.index_of(t.hi());
    if (!lo || !hi) throw NotInSpan("support ends are not nodes of the fine sequence");
    std::vector<QuadRat> nodes;
    for (int k = *lo; k <= *hi; ++k) nodes.push_back(seq.node(k));
    for (const auto& b : t.breaks())
        if (!seq.index_of(b)) throw NotInSpan("break " + b.str() + " is not a fine node");
    refined = t.refined(nodes);
    return {*lo, *hi};
}

int order_of(const std::vector<ScalingClass>& basis) {
    if (basis.empty()) throw ParameterOutOfRange("empty fine basis");
    return static_cast<int>(basis.front().word.size());
}

PiecewisePoly basis_function(const std::vector<ScalingClass>& basis, const std::string& word, const QuadRat& at) {
    for (const auto& c : basis)
        if (c.word == word) return c.shape.translated(at);
    throw ConsistencyError("no fine basis class " + word);
}

}  // namespace

RefinementTable refine_linear(const PiecewisePoly& target, const NodeSequence& fine_seq,
                              const std::vector<ScalingClass>& fine_basis) {
    if (order_of(fine_basis) != 2) throw ParameterOutOfRange("refine_linear needs the hat basis (s = 2)");
    RefinementTable table;
    if (target.is_zero()) return table;
    if (target.degree() > 1) throw NotInSpan("target is not piecewise linear");
    PiecewisePoly t;
    const Span sp = support_span(target, fine_seq, t);
    auto q = [&](int i) { return poly::eval(t.pieces()[static_cast<std::size_t>(i - sp.lo)], QuadRat()); };
    auto at_right = [&](int i) {
        return poly::eval(t.pieces()[static_cast<std::size_t>(i - sp.lo)], fine_seq.node(i + 1) - fine_seq.node(i));
    };
    if (!q(sp.lo).is_zero()) throw NotInSpan("target does not vanish at its left end");
    for (int i = sp.lo; i + 1 < sp.hi; ++i) {
        const QuadRat g = at_right(i);  // k_i h_i + q_i
        if (!(g == q(i + 1))) throw NotInSpan("target jumps at lambda_" + std::to_string(i + 1));
        if (g.is_zero()) continue;
        const std::string w = class_at(fine_basis, fine_seq, i).word;
        table.terms.push_back({w, i, fine_seq.node(i), RootCoeff::rational(g)});
    }
    if (!at_right(sp.hi - 1).is_zero()) throw NotInSpan("target does not close to zero at its right end");
    if (!expand(table, fine_basis).equals(target)) throw NotInSpan("hat expansion leaves a residual");
    return table;
}

RefinementTable refine_general(const PiecewisePoly& target, const NodeSequence& fine_seq,
                               const std::vector<ScalingClass>& fine_basis) {
    const int s = order_of(fine_basis);
    RefinementTable table;
    if (target.is_zero()) return table;
    if (target.degree() > s - 1) throw NotInSpan("target degree exceeds the basis degree");
    PiecewisePoly t;
    const Span sp = support_span(target, fine_seq, t);
    const int m = sp.hi - sp.lo - s + 1;
    if (m <= 0) throw NotInSpan("support holds no fine B-spline");
    std::vector<QuadRat> nodes;
    for (int k = sp.lo; k <= sp.hi; ++k) nodes.push_back(fine_seq.node(k));
    const std::size_t intervals = nodes.size() - 1;
    QMatrix a(intervals * s, static_cast<std::size_t>(m));
    std::vector<QuadRat> b(intervals * s);
    for (int j = 0; j < m; ++j) {
        const int k = sp.lo + j;
        const PiecewisePoly bj = basis_function(fine_basis, class_at(fine_basis, fine_seq, k).word, fine_seq.node(k))
                                     .refined(nodes);
        for (std::size_t p = 0; p < intervals; ++p)
            for (int c = 0; c < s && c < static_cast<int>(bj.pieces()[p].size()); ++c)
                a(p * s + c, j) = bj.pieces()[p][c];
    }
    for (std::size_t p = 0; p < intervals; ++p)
        for (int c = 0; c < s && c < static_cast<int>(t.pieces()[p].size()); ++c) b[p * s + c] = t.pieces()[p][c];
    const EchelonReport rep = bareiss_solve(a, b);
    if (!rep.consistent()) {
        std::string msg = "target not in the fine span; inconsistent rows:";
        for (auto r : rep.inconsistent_rows)
            msg += " (interval " + std::to_string(sp.lo + static_cast<int>(r / s)) + ", power " +
                   std::to_string(r % s) + ")";
        throw NotInSpan(msg);
    }
    if (!rep.unique()) throw SingularSystem("fine B-splines are dependent on the support");
    for (int j = 0; j < m; ++j) {
        const QuadRat& g = (*rep.solution)[static_cast<std::size_t>(j)];
        if (g.is_zero()) continue;
        const int k = sp.lo + j;
        table.terms.push_back({class_at(fine_basis, fine_seq, k).word, k, fine_seq.node(k), RootCoeff::rational(g)});
    }
    return table;
}

PiecewisePoly expand(const RefinementTable& table, const std::vector<ScalingClass>& fine_basis) {
    PiecewisePoly f;
    for (const auto& t : table.terms) {
        if (!(t.coeff.radicand == QuadRat(1))) throw ParameterOutOfRange("expand needs coefficients in Q(beta)");
        f = f + basis_function(fine_basis, t.basis, t.translate).scaled(t.coeff.factor);
    }
    return f.trimmed();
}

std::vector<RefinementTable> scaling_equations(const NodeSequence& seq, const std::vector<ScalingClass>& classes,
                                               const QuadRat& theta) {
    std::vector<RefinementTable> out;
    const QuadRat inv = theta.inverse();
    for (const auto& c : classes) {
        const PiecewisePoly coarse = c.shape.translated(seq.node(c.representative)).dilated(inv);
        RefinementTable t = refine_general(coarse, seq, classes);
        t.target = c.word;
        t.dilation = theta;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<WaveletEquation> wavelet_scaling_equations(const WaveletSystem& sys, const NodeSequence& seq) {
    std::vector<WaveletEquation> out;
    for (const auto& m : sys.mothers) {
        WaveletEquation e;
        e.word = m.word;
        e.n = m.n;
        e.table = sys.s == 2 ? refine_linear(m.zeta, seq, sys.scaling) : refine_general(m.zeta, seq, sys.scaling);
        e.table.target = m.word;
        e.table.dilation = sys.theta;
        e.norm_sq = m.norm_sq;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace quasiwave

#include "quasiwave/wavelet.hpp"

#include <algorithm>
#include <map>

namespace quasiwave {

namespace {

QuadRat falling(int j, int r) {
    // j! / (j - r)!
    QuadRat v(1);
    for (int i = 0; i < r; ++i) v *= QuadRat(j - i);
    return v;
}

}  // namespace

std::vector<int> compute_E(const NodeSequence& seq, const QuadRat& theta) {
    std::vector<int> e;
    for (int n = seq.first_index(); n < seq.last_index(); ++n)
        if (!seq.in_scaled(seq.node(n + 1), theta)) e.push_back(n);
    return e;
}

WaveletSupportPlan support_plan(const NodeSequence& seq, const QuadRat& theta, int n, int s2) {
    if (s2 < 2) throw ParameterOutOfRange("wavelet order must be >= 2");
    if (!seq.has_index(n + 1)) throw RangeError("index " + std::to_string(n) + " has no right neighbour");
    if (seq.in_scaled(seq.node(n + 1), theta))
        throw ParameterOutOfRange("index " + std::to_string(n) + " is not in E");
    WaveletSupportPlan plan;
    plan.n = n;
    std::vector<int> inside;
    for (int N = 1; n + N <= seq.last_index(); ++N) {
        if (N >= 2 && seq.in_scaled(seq.node(n + N - 1), theta)) inside.push_back(n + N - 1);
        if (N >= s2 && N == s2 + static_cast<int>(inside.size())) {
            plan.N = N;
            plan.word = seq.word(n, N);
            plan.theta_points_inside = inside;
            return plan;
        }
    }
    throw SequenceTooShort("support of the wavelet at " + std::to_string(n) + " leaves the sequence");
}

PsiSystem psi_system(const NodeSequence& seq, const QuadRat& theta, int n, int N, int s2, const QuadRat& u) {
    if (N < 1 || !seq.has_index(n) || !seq.has_index(n + N)) throw RangeError("support outside the sequence");
    const std::size_t cols = static_cast<std::size_t>(N) * s2;
    std::vector<std::vector<QuadRat>> rows;
    PsiSystem sys;
    auto col = [&](int piece, int j) { return static_cast<std::size_t>(piece) * s2 + j; };
    auto add_row = [&](std::vector<QuadRat> r, QuadRat b, std::string label) {
        rows.push_back(std::move(r));
        sys.rhs.push_back(std::move(b));
        sys.row_labels.push_back(std::move(label));
    };
    auto h = [&](int piece) { return seq.node(n + piece + 1) - seq.node(n + piece); };
    // r-th derivative of piece at its right end
    auto right_end = [&](std::vector<QuadRat>& r, int piece, int order, const QuadRat& sign) {
        const QuadRat hp = h(piece);
        for (int j = order; j < s2; ++j) r[col(piece, j)] += sign * falling(j, order) * hp.pow(j - order);
    };

    for (int i = 0; i + 1 < N; ++i)
        for (int r = 0; r <= s2 - 2; ++r) {
            std::vector<QuadRat> row(cols);
            right_end(row, i, r, QuadRat(1));
            row[col(i + 1, r)] -= falling(r, r);
            add_row(std::move(row), QuadRat(), "smoothness order " + std::to_string(r) + " at lambda_" +
                                                   std::to_string(n + i + 1));
        }
    for (int r = 0; r <= s2 - 2; ++r) {
        std::vector<QuadRat> row(cols);
        row[col(0, r)] = QuadRat(1);
        add_row(std::move(row), QuadRat(), "vanishing order " + std::to_string(r) + " at lambda_" + std::to_string(n));
    }
    for (int r = 0; r <= s2 - 2; ++r) {
        std::vector<QuadRat> row(cols);
        right_end(row, N - 1, r, QuadRat(1));
        add_row(std::move(row), QuadRat(),
                "vanishing order " + std::to_string(r) + " at lambda_" + std::to_string(n + N));
    }
    for (int k = n + 1; k < n + N; ++k)
        if (seq.in_scaled(seq.node(k), theta)) {
            std::vector<QuadRat> row(cols);
            row[col(k - n, 0)] = QuadRat(1);
            add_row(std::move(row), QuadRat(), "zero at theta-point lambda_" + std::to_string(k));
        }
    if (N >= 2) {
        std::vector<QuadRat> row(cols);
        row[col(1, 0)] = QuadRat(1);
        add_row(std::move(row), u, "value at lambda_" + std::to_string(n + 1));
    }
    sys.matrix = QMatrix(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) sys.matrix(r, c) = rows[r][c];
    return sys;
}

PiecewisePoly build_Psi(const NodeSequence& seq, const QuadRat& theta, const WaveletSupportPlan& plan, int s2,
                        const QuadRat& u) {
    if (u.is_zero()) throw ParameterOutOfRange("interpolation value u must be nonzero");
    const PsiSystem sys = psi_system(seq, theta, plan.n, plan.N, s2, u);
    const EchelonReport rep = bareiss_solve(sys.matrix, sys.rhs);
    if (!rep.unique()) {
        std::string msg = "system for the wavelet at " + std::to_string(plan.n) + " has rank " +
                          std::to_string(rep.rank) + " of " + std::to_string(sys.matrix.cols());
        for (auto r : rep.inconsistent_rows) msg += "; inconsistent: " + sys.row_labels[r];
        for (auto r : rep.redundant_rows) msg += "; redundant: " + sys.row_labels[r];
        throw SingularSystem(msg);
    }
    std::vector<QuadRat> breaks;
    std::vector<LocalPoly> pieces;
    for (int i = 0; i <= plan.N; ++i) breaks.push_back(seq.node(plan.n + i));
    for (int i = 0; i < plan.N; ++i) {
        LocalPoly p(rep.solution->begin() + static_cast<long>(i) * s2,
                    rep.solution->begin() + static_cast<long>(i + 1) * s2);
        poly::trim(p);
        pieces.push_back(std::move(p));
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces), plan.n);
}

PiecewisePoly build_zeta(const PiecewisePoly& psi, int s) {
    PiecewisePoly z = psi.derivative(s);
    if (z.continuity_order() < s - 2) throw ConsistencyError("zeta is not C^(s-2)");
    return z;
}

RadicalFunction build_psi(const PiecewisePoly& zeta, const QuadRat& theta) {
    if (zeta.is_zero()) throw ParameterOutOfRange("zeta is zero");
    const QuadRat norm_sq = inner_product(zeta, zeta) / theta;
    return RadicalFunction::normalized(zeta.dilated(theta), norm_sq);
}

MotherWavelet build_mother(const NodeSequence& seq, const QuadRat& theta, int n, int s) {
    const int s2 = 2 * s;
    MotherWavelet m;
    m.plan = support_plan(seq, theta, n, s2);
    m.n = n;
    m.word = m.plan.word;
    const PiecewisePoly raw = build_Psi(seq, theta, m.plan, s2, QuadRat(1));
    const LocalPoly& first = raw.pieces().front();
    if (first.size() != static_cast<std::size_t>(s2) || first.back().is_zero())
        throw ConsistencyError("first piece of Psi is not of full degree");
    const QuadRat scale = first.back().inverse();
    m.u = scale;
    m.Psi = raw.scaled(scale);
    m.zeta = build_zeta(m.Psi, s);
    m.zeta_norm_sq = inner_product(m.zeta, m.zeta);
    m.norm_sq = m.zeta_norm_sq / theta;
    m.psi = RadicalFunction::normalized(m.zeta.dilated(theta), m.norm_sq);
    return m;
}

std::vector<MotherWord> enumerate_mother_words(const NodeSequence& seq, const QuadRat& theta, int s) {
    std::map<std::string, MotherWord> by_word;
    for (int n : compute_E(seq, theta)) {
        WaveletSupportPlan p;
        try {
            p = support_plan(seq, theta, n, 2 * s);
        } catch (const SequenceTooShort&) {
            continue;
        }
        by_word[p.word].members.push_back(n);
    }
    std::vector<MotherWord> out;
    for (auto& [w, m] : by_word) {
        m.word = w;
        m.representative = m.members.front();
        for (int k : m.members)
            if (k <= 0) m.representative = k;
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(),
              [](const MotherWord& a, const MotherWord& b) { return a.representative < b.representative; });
    return out;
}

int fibonacci_support_length(int s) {
    const QuadRat t = QuadRat::beta(tau_field());
    return static_cast<int>((QuadRat(2 * s - 2) * t).ceil().get_si()) + 1;
}

const MotherWavelet& WaveletSystem::mother(const std::string& word) const {
    for (const auto& m : mothers)
        if (m.word == word) return m;
    throw ParameterOutOfRange("no mother wavelet for word " + word);
}

PiecewisePoly WaveletSystem::zeta_at(const NodeSequence& seq, int k) const {
    const WaveletSupportPlan p = support_plan(seq, theta, k, 2 * s);
    const MotherWavelet& m = mother(p.word);
    PiecewisePoly z = m.zeta.translated(seq.node(k) - seq.node(m.n));
    z.set_first_index(k);
    return z;
}

PiecewisePoly WaveletSystem::Psi_at(const NodeSequence& seq, int k) const {
    const WaveletSupportPlan p = support_plan(seq, theta, k, 2 * s);
    const MotherWavelet& m = mother(p.word);
    PiecewisePoly z = m.Psi.translated(seq.node(k) - seq.node(m.n));
    z.set_first_index(k);
    return z;
}

WaveletSystem build_wavelet_system(const NodeSequence& seq, const QuadRat& theta, int s) {
    WaveletSystem sys;
    sys.s = s;
    sys.theta = theta;
    sys.E = compute_E(seq, theta);
    sys.scaling = scaling_classes(seq, s);
    for (const auto& w : enumerate_mother_words(seq, theta, s))
        sys.mothers.push_back(build_mother(seq, theta, w.representative, s));
    return sys;
}

}  // namespace quasiwave

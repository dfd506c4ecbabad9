#include "qwave/verify.hpp"

#include <cmath>
#include <map>

#include "quasiwave/haar.hpp"
#include "quasiwave/refine.hpp"
#include "quasiwave/wavelet.hpp"

namespace qwave {

using quasiwave::QuadRat;

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Warn: return "WARN";
        case Status::Fail: return "FAIL";
    }
    return "?";
}

std::size_t VerifyReport::count(Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
}

std::size_t VerifyReport::count(const std::string& group, Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.group == group && c.status == s;
    return n;
}

namespace {

std::string show(const QuadRat& x) { return x.pretty("τ"); }

class Recorder {
public:
    Recorder(VerifyReport& r, const VerifyOptions& o) : report_(r), opt_(o) {}

    void exact(const std::string& group, const std::string& id, const QuadRat& expected, const QuadRat& actual) {
        add(group, id, expected == actual ? Status::Pass : Status::Fail, show(expected), show(actual));
    }
    void decimal(const std::string& group, const std::string& id, double expected, double actual) {
        const bool ok = std::fabs(expected - actual) <= opt_.decimal_tolerance;
        add(group, id, ok ? Status::Pass : Status::Fail, io::format_double(expected), io::format_double(actual));
    }
    void flag(const std::string& group, const std::string& id, bool ok, std::string expected, std::string actual,
              std::string note = {}) {
        add(group, id, ok ? Status::Pass : Status::Fail, std::move(expected), std::move(actual), std::move(note));
    }
    void anomaly(const std::string& group, const std::string& id, std::string expected, std::string actual,
                 std::string note) {
        add(group, id, opt_.strict ? Status::Fail : Status::Warn, std::move(expected), std::move(actual),
            std::move(note));
    }
    void add(const std::string& group, const std::string& id, Status s, std::string expected, std::string actual,
             std::string note = {}) {
        report_.checks.push_back({group, id, s, std::move(expected), std::move(actual), std::move(note)});
    }

private:
    VerifyReport& report_;
    const VerifyOptions& opt_;
};

const quasiwave::MotherWavelet* mother_at(const quasiwave::WaveletSystem& sys, int n) {
    for (const auto& m : sys.mothers)
        if (m.n == n) return &m;
    return nullptr;
}

void check_points(const Golden& g, Recorder& rec) {
    const auto& sec = g.data.at("fibonacci_points");
    const auto idx = sec.at("indices").get<std::vector<int>>();
    const std::string letters = sec.at("letters").get<std::string>();
    const auto flags = sec.at("in_theta_lambda").get<std::vector<bool>>();
    if (idx.empty()) return;
    const auto seq = quasiwave::generate_fibonacci_chain(idx.front(), idx.back() + 1);
    const QuadRat t = QuadRat::beta(g.field);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const int k = idx[i];
        const std::string id = "lambda_" + std::to_string(k);
        rec.exact("fibonacci_points", id + " tau form", g.value(sec.at("tau_forms").at(i)), seq.node(k));
        rec.exact("fibonacci_points", id + " a+b tau", g.value(sec.at("integer_forms").at(i)), seq.node(k));
        rec.flag("fibonacci_points", id + " letter", seq.letter(k) == letters.at(i), std::string(1, letters.at(i)),
                 std::string(1, seq.letter(k)));
        const bool in = seq.in_scaled(seq.node(k), t * t);
        rec.flag("fibonacci_points", id + " in tau^2 Lambda", in == flags.at(i), flags.at(i) ? "yes" : "no",
                 in ? "yes" : "no");
    }
}

void check_zeta(const Golden& g, const quasiwave::WaveletSystem& sys, Recorder& rec) {
    for (const auto& col : g.data.at("zeta_pieces")) {
        const std::string word = col.at("word").get<std::string>();
        const int start = col.at("start").get<int>();
        const auto* m = mother_at(sys, start);
        if (!m) {
            rec.flag("zeta_pieces", word, false, "mother wavelet at " + std::to_string(start), "none");
            continue;
        }
        rec.flag("zeta_pieces", word + " word", m->word == word, word, m->word);
        const auto& ks = col.at("k");
        const auto& qs = col.at("q");
        rec.flag("zeta_pieces", word + " pieces", m->zeta.num_pieces() == ks.size(), std::to_string(ks.size()),
                 std::to_string(m->zeta.num_pieces()));
        for (std::size_t i = 0; i < ks.size() && i < m->zeta.num_pieces(); ++i) {
            const auto& p = m->zeta.pieces()[i];
            const QuadRat q = p.empty() ? QuadRat() : p[0];
            const QuadRat k = p.size() > 1 ? p[1] : QuadRat();
            const std::string at = " [lambda_" + std::to_string(start + static_cast<int>(i)) + ", lambda_" +
                                   std::to_string(start + static_cast<int>(i) + 1) + ")";
            rec.exact("zeta_pieces", word + at + " k", g.value(ks.at(i)), k);
            rec.exact("zeta_pieces", word + at + " q", g.value(qs.at(i)), q);
        }
        rec.exact("zeta_norms", word + " norm^2", g.value(col.at("norm_sq")), m->zeta_norm_sq);
        rec.decimal("zeta_norms", word + " norm", col.at("norm").get<double>(),
                    std::sqrt(m->zeta_norm_sq.to_double()));
    }
}

void check_refinement(const Golden& g, const quasiwave::WaveletSystem& sys, const quasiwave::NodeSequence& seq,
                      const VerifyOptions& opt, Recorder& rec) {
    const auto eqs = quasiwave::wavelet_scaling_equations(sys, seq);
    std::size_t misprints = 0;
    for (const auto& col : g.data.at("wavelet_refinement")) {
        const int start = col.at("start").get<int>();
        const std::string printed = col.at("printed_word").get<std::string>();
        const quasiwave::WaveletEquation* eq = nullptr;
        for (const auto& e : eqs)
            if (e.n == start) eq = &e;
        const std::string cid = "kappa_" + std::to_string(start);
        if (!eq) {
            rec.flag("wavelet_refinement", cid, false, "wavelet at " + std::to_string(start), "none");
            continue;
        }
        if (eq->word == printed)
            rec.flag("wavelet_refinement", cid + " heading", true, printed, eq->word);
        else
            rec.anomaly("wavelet_refinement", cid + " heading", printed, eq->word,
                        "column heading names another word; matched by start index");
        std::map<std::pair<std::string, int>, bool> seen;
        for (const auto& cell : col.at("cells")) {
            const std::string basis = cell.at("basis").get<std::string>();
            const int node = cell.at("node").get<int>();
            seen[{basis, node}] = true;
            const std::string id = cid + " phi_" + basis + "(tau^2 x - lambda_" + std::to_string(node) + ")";
            const QuadRat expected = g.value(cell.at("g"));
            const quasiwave::RefinementTerm* term = nullptr;
            for (const auto& t : eq->table.terms)
                if (t.basis == basis && t.node == node) term = &t;
            const QuadRat actual = term ? term->coeff.factor : QuadRat();
            if (expected == actual) {
                rec.exact("wavelet_refinement", id, expected, actual);
            } else {
                ++misprints;
                rec.anomaly("wavelet_refinement", id, show(expected), show(actual),
                            "printed coefficient disagrees with the recomputed expansion");
            }
        }
        for (const auto& t : eq->table.terms)
            if (!seen.count({t.basis, t.node})) {
                ++misprints;
                rec.anomaly("wavelet_refinement",
                            cid + " phi_" + t.basis + "(tau^2 x - lambda_" + std::to_string(t.node) + ")", "(empty)",
                            show(t.coeff.factor), "recomputed term missing from the printed column");
            }
    }
    rec.flag("wavelet_refinement", "misprint budget", misprints <= opt.typo_budget,
             "<= " + std::to_string(opt.typo_budget), std::to_string(misprints));
}

void check_scaled_norms(const Golden& g, const quasiwave::WaveletSystem& sys, Recorder& rec) {
    int row = 0;
    for (const auto& e : g.data.at("scaled_norms")) {
        ++row;
        const std::string printed = e.at("printed_word").get<std::string>();
        const QuadRat expected = g.value(e.at("norm_sq"));
        const std::string id = "row " + std::to_string(row) + " (" + printed + ")";
        const quasiwave::MotherWavelet* hit = nullptr;
        for (const auto& m : sys.mothers)
            if (m.norm_sq == expected) hit = &m;
        if (!hit) {
            rec.flag("scaled_norms", id, false, show(expected), "no wavelet with this norm");
            continue;
        }
        if (hit->word == printed)
            rec.flag("scaled_norms", id + " label", true, printed, hit->word);
        else
            rec.anomaly("scaled_norms", id + " label", printed, hit->word, "matched by value; printed label differs");
        rec.exact("scaled_norms", id + " norm^2", expected, hit->norm_sq);
        rec.decimal("scaled_norms", id + " norm", e.at("norm").get<double>(), std::sqrt(hit->norm_sq.to_double()));
    }
}

void check_scaling_equations(const Golden& g, const quasiwave::NodeSequence& seq, const QuadRat& theta,
                             Recorder& rec) {
    const auto classes = quasiwave::scaling_classes(seq, 2);
    const auto tables = quasiwave::scaling_equations(seq, classes, theta);
    for (const auto& eq : g.data.at("scaling_equations")) {
        const std::string word = eq.at("word").get<std::string>();
        const quasiwave::RefinementTable* t = nullptr;
        for (const auto& x : tables)
            if (x.target == word) t = &x;
        if (!t) {
            rec.flag("scaling_equations", word, false, "equation", "none");
            continue;
        }
        const int rep = eq.at("representative").get<int>();
        const int actual_rep = quasiwave::class_at(classes, seq, rep).representative;
        rec.flag("scaling_equations", word + " representative", actual_rep == rep, std::to_string(rep),
                 std::to_string(actual_rep));
        const auto& terms = eq.at("terms");
        rec.flag("scaling_equations", word + " term count", terms.size() == t->terms.size(),
                 std::to_string(terms.size()), std::to_string(t->terms.size()));
        for (const auto& term : terms) {
            const std::string basis = term.at("basis").get<std::string>();
            const QuadRat at = g.value(term.at("translate"));
            const auto* found = t->find(basis, at);
            const std::string id = word + " phi_" + basis + "(tau^2 x - (" + show(at) + "))";
            rec.exact("scaling_equations", id, g.value(term.at("g")), found ? found->coeff.factor : QuadRat());
        }
    }
}

void check_words(const quasiwave::NodeSequence& seq, const QuadRat& theta, Recorder& rec) {
    for (int s = 2; s <= 4; ++s) {
        const auto words = quasiwave::enumerate_mother_words(seq, theta, s);
        rec.flag("mother_words", "s=" + std::to_string(s) + " count", words.size() == static_cast<std::size_t>(2 * s),
                 std::to_string(2 * s), std::to_string(words.size()));
        const int p = quasiwave::fibonacci_support_length(s);
        for (const auto& w : words) {
            const int n = static_cast<int>(w.word.size());
            rec.flag("mother_words", "s=" + std::to_string(s) + " " + w.word + " length", n == p || n == p + 1,
                     std::to_string(p) + " or " + std::to_string(p + 1), std::to_string(n));
        }
    }
    std::string got;
    for (const auto& w : quasiwave::enumerate_mother_words(seq, theta, 2)) got += (got.empty() ? "" : " ") + w.word;
    rec.flag("mother_words", "s=2 words", got == "LLSLS LSLSLL LSLLS LLSLL", "LLSLS LSLSLL LSLLS LLSLL", got);
}

void check_haar(Recorder& rec) {
    using quasiwave::Family;
    const std::vector<std::pair<Family, int>> fields = {
        {Family::Minus, 1}, {Family::Minus, 2}, {Family::Minus, 3}, {Family::Plus, 3}, {Family::Plus, 4}};
    for (const auto& [fam, a] : fields) {
        const quasiwave::HaarSystem h(quasiwave::FieldSpec::make(fam, a));
        const std::string fid = h.field().name();
        for (const auto& e : h.refinement_equations())
            rec.flag("haar", fid + " " + e.label + " residual", h.residual(e).is_zero(), "0", "nonzero");
        const QuadRat printed = h.riesz_LS_normalizer_printed();
        const QuadRat recomputed = h.riesz_LS_normalizer_recomputed();
        if (printed == recomputed)
            rec.exact("haar", fid + " psi_LS normaliser", printed, recomputed);
        else
            rec.anomaly("haar", fid + " psi_LS normaliser", printed.str(), recomputed.str(),
                        "printed normaliser differs from exact integration");
    }
    const quasiwave::HaarSystem tau(quasiwave::tau_field());
    const auto ws = tau.orthonormal_wavelets();
    const QuadRat t = QuadRat::beta(tau.field());
    bool ok = ws.size() == 1 && ws[0].terms.terms.size() == 2 &&
              ws[0].terms.terms[0].coeff.equals(quasiwave::RootCoeff::root(t.inverse())) &&
              ws[0].terms.terms[1].coeff.equals(quasiwave::RootCoeff::rational(QuadRat(-1)));
    rec.flag("haar", "tau psi_L", ok, "tau^(-1/2) phi_L(tau x) - phi_S(tau x - 1)",
             ws.empty() ? "none" : ws[0].terms.terms.empty() ? "empty" : ws[0].terms.terms[0].coeff.str());
}

}  // namespace

VerifyReport verify(const Golden& g, const VerifyOptions& opt) {
    VerifyReport report;
    Recorder rec(report, opt);
    const auto seq = quasiwave::generate_fibonacci_chain(-60, 60);
    const QuadRat t = QuadRat::beta(g.field);
    const QuadRat theta = t * t;
    const auto sys = quasiwave::build_wavelet_system(seq, theta, 2);
    check_points(g, rec);
    check_zeta(g, sys, rec);
    check_refinement(g, sys, seq, opt, rec);
    check_scaled_norms(g, sys, rec);
    check_scaling_equations(g, seq, theta, rec);
    check_words(seq, theta, rec);
    check_haar(rec);
    return report;
}

}  // namespace qwave

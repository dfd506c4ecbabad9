#include "qwave/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qwave/golden.hpp"
#include "qwave/io.hpp"
#include "qwave/verify.hpp"
#include "quasiwave/haar.hpp"
#include "quasiwave/mra.hpp"
#include "quasiwave/refine.hpp"
#include "quasiwave/wavelet.hpp"

namespace qwave {

namespace {

using io::json;
using quasiwave::FieldSpec;
using quasiwave::NodeSequence;
using quasiwave::QuadRat;

using Row = std::vector<std::string>;

struct Table {
    Row columns;
    std::vector<Row> rows;
};

/// Everything a subcommand produces; rendered as JSON, CSV or text.
struct Report {
    json result = json::object();
    Table table;
    std::vector<std::string> notes;
    int exit_code = kOk;
};

struct Options {
    std::string format = "text";
    std::string output;
    bool no_timestamp = false;

    std::string set = "fibonacci";
    std::string family = "minus";
    int a = 1;
    std::string range = "-5..5";
    int letters = 8;
    int s = 2;
    std::string emit = "summary";

    std::string golden;
    bool strict = false;

    std::vector<std::string> functions;
    int density = 100;

    std::string variant = "orthonormal";
    int gram_tiles = 0;

    std::vector<int> windows = {20, 40, 80};
    int roundtrip = 0;
    unsigned seed = 1;
    std::string numeric = "exact";
    int window = 60;
};

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string decimal(const QuadRat& x) { return io::format_double(x.to_double()); }

/// "lo..hi"; lo > hi is an empty range.
std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw ConfigError("range must look like lo..hi, got '" + text + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        const int lo = std::stoi(a, &used1);
        const int hi = std::stoi(b, &used2);
        if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing characters");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ConfigError("range must look like lo..hi, got '" + text + "'");
    }
}

FieldSpec field_of(const Options& o) {
    try {
        return FieldSpec::make(quasiwave::parse_family(o.family), o.a);
    } catch (const quasiwave::Error& e) {
        throw ConfigError(e.what());
    }
}

std::string field_symbol(const FieldSpec& f) { return f == quasiwave::tau_field() ? "τ" : "β"; }

json config_json(const std::string& command, const Options& o, const CLI::App& sub) {
    json c = {{"command", command}, {"format", o.format}, {"output", o.output}, {"no-timestamp", o.no_timestamp}};
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_name(false, true);
        const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
        if (key.empty() || key == "help") continue;
        const auto results = opt->reduced_results();
        if (opt->get_expected_min() == 0) {
            c[key] = opt->count() > 0;
        } else if (!results.empty()) {
            c[key] = results.size() == 1 ? json(results.front()) : json(results);
        } else if (!opt->get_default_str().empty()) {
            c[key] = opt->get_default_str();
        }
    }
    return c;
}

// ---- generate ----------------------------------------------------------

Report cmd_generate(const Options& o, const CLI::App& sub) {
    Report r;
    r.table.columns = {"index", "p", "q", "value", "letter", "in_theta_lambda"};
    std::optional<NodeSequence> seq;
    QuadRat theta;
    FieldSpec field = quasiwave::tau_field();
    int lo = 0, hi = -1;
    if (o.set == "fibonacci") {
        if (sub.count("--family") || sub.count("--a"))
            if (field_of(o) != quasiwave::tau_field()) throw ConfigError("the Fibonacci chain lives in Q(tau)");
        std::tie(lo, hi) = parse_range(o.range);
        if (lo <= hi) seq = quasiwave::generate_fibonacci_chain(lo, hi + 1);
        theta = QuadRat::beta(field).pow(2);
    } else if (o.set == "beta") {
        field = field_of(o);
        if (o.letters < 0) throw ConfigError("--letters must be >= 0");
        lo = 0;
        hi = o.letters;
        seq = quasiwave::generate_beta_integers(field, o.letters + 1);
        theta = QuadRat::beta(field);
    } else {
        std::tie(lo, hi) = parse_range(o.range);
        if (lo <= hi) seq = quasiwave::generate_lattice(lo, hi + 1);
        theta = QuadRat(2);
    }
    json nodes = json::array();
    const std::string sym = field_symbol(field);
    for (int k = lo; seq && k <= hi; ++k) {
        const QuadRat& x = seq->node(k);
        const bool in = seq->in_scaled(x, theta);
        const std::string letter(1, seq->letter(k));
        r.table.rows.push_back({std::to_string(k), x.p().get_str(), x.q().get_str(), decimal(x), letter, yes_no(in)});
        nodes.push_back({{"index", k},
                         {"value", io::canonical(x)},
                         {"exact", io::to_json(x)},
                         {"approx", x.to_double()},
                         {"letter", letter},
                         {"in_theta_lambda", in}});
    }
    r.result = {{"field", io::to_json(field)}, {"theta", io::canonical(theta)}, {"nodes", nodes}};
    if (seq) r.notes.push_back("letters: " + seq->word(lo, hi - lo + 1));
    r.notes.push_back("value = p + q*" + sym + ", theta = " + theta.pretty(sym));
    return r;
}

// ---- wavelets ------------------------------------------------------------

struct SystemSetup {
    FieldSpec field;
    QuadRat theta;
    NodeSequence seq;
    quasiwave::WaveletSystem sys;
};

SystemSetup build_setup(const Options& o) {
    if (o.s < 2 || o.s > 6) throw ConfigError("--s must be in 2..6");
    const int reach = 30 + 15 * o.s;
    if (o.set == "fibonacci") {
        const FieldSpec f = quasiwave::tau_field();
        const QuadRat theta = QuadRat::beta(f).pow(2);
        auto seq = quasiwave::generate_fibonacci_chain(-reach, reach);
        auto sys = quasiwave::build_wavelet_system(seq, theta, o.s);
        return {f, theta, std::move(seq), std::move(sys)};
    }
    if (o.set != "beta") throw ConfigError("wavelets need --set fibonacci or beta");
    const FieldSpec f = field_of(o);
    const QuadRat theta = QuadRat::beta(f);
    auto seq = quasiwave::generate_beta_integers(f, reach, true);
    auto sys = quasiwave::build_wavelet_system(seq, theta, o.s);
    return {f, theta, std::move(seq), std::move(sys)};
}

Report cmd_wavelets(const Options& o) {
    Report r;
    const SystemSetup st = build_setup(o);
    const auto& sys = st.sys;
    const std::string sym = field_symbol(st.field);
    r.result["field"] = io::to_json(st.field);
    r.result["theta"] = io::canonical(st.theta);
    r.result["s"] = o.s;
    json E = json::array();
    for (int k : sys.E)
        if (std::abs(k) <= 20) E.push_back(k);
    r.result["E_near_origin"] = E;

    if (o.emit == "summary") {
        r.table.columns = {"word", "n", "support_nodes", "u", "zeta_norm_sq", "zeta_norm", "norm_sq", "norm"};
        json ms = json::array();
        for (const auto& m : sys.mothers) {
            r.table.rows.push_back({m.word, std::to_string(m.n), std::to_string(m.plan.N), m.u.pretty(sym),
                                    m.zeta_norm_sq.pretty(sym), io::format_double(std::sqrt(m.zeta_norm_sq.to_double())),
                                    m.norm_sq.pretty(sym), io::format_double(std::sqrt(m.norm_sq.to_double()))});
            ms.push_back({{"word", m.word},
                          {"n", m.n},
                          {"support_nodes", m.plan.N},
                          {"u", io::canonical(m.u)},
                          {"zeta_norm_sq", io::canonical(m.zeta_norm_sq)},
                          {"norm_sq", io::canonical(m.norm_sq)},
                          {"zeta", io::to_json(m.zeta, st.field)},
                          {"Psi", io::to_json(m.Psi, st.field)}});
        }
        r.result["mothers"] = ms;
        r.notes.push_back(std::to_string(sys.mothers.size()) + " mother wavelets, s = " + std::to_string(o.s));
    } else if (o.emit == "tables") {
        r.table.columns = {"word", "piece", "from", "to"};
        for (int j = 0; j < o.s; ++j) r.table.columns.push_back("c" + std::to_string(j));
        if (o.s == 2) r.table.columns = {"word", "piece", "from", "to", "q", "k"};
        json ms = json::array();
        for (const auto& m : sys.mothers) {
            json pieces = json::array();
            const auto& z = m.zeta;
            for (std::size_t i = 0; i < z.num_pieces(); ++i) {
                const int from = m.n + static_cast<int>(i);
                Row row = {m.word, std::to_string(i), std::to_string(from), std::to_string(from + 1)};
                json cs = json::array();
                for (int j = 0; j < o.s; ++j) {
                    const QuadRat c = j < static_cast<int>(z.pieces()[i].size()) ? z.pieces()[i][j] : QuadRat();
                    row.push_back(c.pretty(sym));
                    cs.push_back(io::canonical(c));
                }
                r.table.rows.push_back(std::move(row));
                pieces.push_back({{"from", from}, {"coefficients", cs}});
            }
            ms.push_back({{"word", m.word},
                          {"n", m.n},
                          {"pieces", pieces},
                          {"zeta_norm_sq", io::canonical(m.zeta_norm_sq)},
                          {"zeta_norm", std::sqrt(m.zeta_norm_sq.to_double())}});
            r.notes.push_back("||zeta_" + m.word + "||^2 = " + m.zeta_norm_sq.pretty(sym) + " ~ " +
                              io::format_double(m.zeta_norm_sq.to_double()));
        }
        r.notes.push_back("piece i of zeta on [lambda_(n+i), lambda_(n+i+1)] is sum_j c_j (x - lambda_(n+i))^j");
        r.result["mothers"] = ms;
    } else if (o.emit == "refinement") {
        r.table.columns = {"word", "n", "basis", "node", "g", "g_value"};
        json eqs = json::array();
        for (const auto& e : quasiwave::wavelet_scaling_equations(sys, st.seq)) {
            for (const auto& t : e.table.terms)
                r.table.rows.push_back({e.word, std::to_string(e.n), t.basis, std::to_string(t.node),
                                        t.coeff.factor.pretty(sym), io::format_double(t.coeff.to_double())});
            eqs.push_back({{"word", e.word},
                           {"n", e.n},
                           {"norm_sq", io::canonical(e.norm_sq)},
                           {"table", io::to_json(e.table, st.field)}});
            r.notes.push_back("||zeta_" + e.word + "(theta x)||^2 = " + e.norm_sq.pretty(sym) + " ~ " +
                              io::format_double(e.norm_sq.to_double()));
        }
        r.notes.push_back("zeta_w(theta x - lambda_n) = sum g phi_basis(theta x - lambda_node)");
        r.result["equations"] = eqs;
    } else if (o.emit == "scaling") {
        r.table.columns = {"word", "representative", "basis", "node", "translate", "g", "g_value"};
        json eqs = json::array();
        for (const auto& t : quasiwave::scaling_equations(st.seq, sys.scaling, st.theta)) {
            int rep = 0;
            for (const auto& c : sys.scaling)
                if (c.word == t.target) rep = c.representative;
            for (const auto& term : t.terms)
                r.table.rows.push_back({t.target, std::to_string(rep), term.basis, std::to_string(term.node),
                                        term.translate.pretty(sym), term.coeff.factor.pretty(sym),
                                        io::format_double(term.coeff.to_double())});
            eqs.push_back({{"representative", rep}, {"table", io::to_json(t, st.field)}});
        }
        r.notes.push_back("phi_w(x - lambda_rep) = sum g phi_basis(theta x - translate)");
        r.result["equations"] = eqs;
    } else {
        throw ConfigError("unknown --emit " + o.emit);
    }
    return r;
}

// ---- verify --------------------------------------------------------------

Report cmd_verify(const Options& o) {
    Report r;
    const Golden g = o.golden.empty() ? load_golden(embedded_golden_text(), "<embedded>") : load_golden_file(o.golden);
    VerifyOptions vo;
    vo.strict = o.strict;
    const VerifyReport rep = verify(g, vo);
    r.table.columns = {"status", "group", "check", "expected", "actual", "note"};
    json checks = json::array();
    for (const auto& c : rep.checks) {
        r.table.rows.push_back({status_name(c.status), c.group, c.id, c.expected, c.actual, c.note});
        checks.push_back({{"status", status_name(c.status)},
                          {"group", c.group},
                          {"check", c.id},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"note", c.note}});
    }
    const auto np = rep.count(Status::Pass), nw = rep.count(Status::Warn), nf = rep.count(Status::Fail);
    r.result = {{"golden", g.origin},
                {"checks", checks},
                {"summary", {{"pass", np}, {"warn", nw}, {"fail", nf}, {"ok", rep.ok()}}}};
    r.notes.push_back(std::to_string(rep.checks.size()) + " checks: " + std::to_string(np) + " pass, " +
                      std::to_string(nw) + " warn, " + std::to_string(nf) + " fail" + (o.strict ? " (strict)" : ""));
    r.exit_code = rep.ok() ? kOk : kChecksFailed;
    return r;
}

// ---- sample --------------------------------------------------------------

struct Sampled {
    std::string name;
    double lo = 0, hi = 0;
    std::function<double(double)> f;
};

Report cmd_sample(const Options& o) {
    if (o.density < 1) throw ConfigError("--density must be >= 1");
    const SystemSetup st = build_setup(o);
    const auto& sys = st.sys;
    std::vector<std::string> selectors = o.functions;
    if (selectors.empty())
        for (const auto& m : sys.mothers) selectors.push_back("psi:" + m.word);

    std::vector<Sampled> fs;
    for (const auto& sel : selectors) {
        const auto colon = sel.find(':');
        if (colon == std::string::npos) throw ConfigError("function selector must be kind:WORD, got '" + sel + "'");
        const std::string kind = sel.substr(0, colon), word = sel.substr(colon + 1);
        auto add = [&](const quasiwave::PiecewisePoly& p) {
            fs.push_back({sel, p.lo().to_double(), p.hi().to_double(), [p](double x) { return p.eval_double(x); }});
        };
        if (kind == "phi") {
            const quasiwave::ScalingClass* c = nullptr;
            for (const auto& x : sys.scaling)
                if (x.word == word) c = &x;
            if (!c) throw ConfigError("no scaling class " + word);
            add(c->shape.translated(st.seq.node(c->representative)));
            continue;
        }
        const quasiwave::MotherWavelet* m = nullptr;
        for (const auto& x : sys.mothers)
            if (x.word == word) m = &x;
        if (!m) throw ConfigError("no mother wavelet " + word);
        if (kind == "zeta") {
            add(m->zeta);
        } else if (kind == "Psi") {
            add(m->Psi);
        } else if (kind == "psi") {
            const auto psi = m->psi;
            fs.push_back({sel, psi.lo().to_double(), psi.hi().to_double(),
                          [psi](double x) { return psi.eval_double(x); }});
        } else {
            throw ConfigError("function kind must be phi, zeta, Psi or psi, got '" + kind + "'");
        }
    }

    Report r;
    r.table.columns = {"function", "x", "y"};
    json out = json::array();
    for (const auto& s : fs) {
        json xs = json::array(), ys = json::array();
        const long n = static_cast<long>(std::floor((s.hi - s.lo) * o.density + 1e-9));
        for (long i = 0; i <= n + 1; ++i) {
            double x = s.lo + static_cast<double>(i) / o.density;
            if (i == n + 1) {
                if (s.lo + static_cast<double>(n) / o.density >= s.hi - 1e-12) break;
                x = s.hi;
            }
            const double y = s.f(x);
            r.table.rows.push_back({s.name, io::format_double(x), io::format_double(y)});
            xs.push_back(x);
            ys.push_back(y);
        }
        out.push_back({{"function", s.name}, {"lo", s.lo}, {"hi", s.hi}, {"x", xs}, {"y", ys}});
    }
    r.result = {{"density", o.density}, {"s", o.s}, {"functions", out}};
    return r;
}

// ---- haar ----------------------------------------------------------------

json terms_json(const quasiwave::RefinementTable& t) {
    json a = json::array();
    for (const auto& term : t.terms)
        a.push_back({{"basis", term.basis},
                     {"translate", io::canonical(term.translate)},
                     {"factor", io::canonical(term.coeff.factor)},
                     {"radicand", io::canonical(term.coeff.radicand)},
                     {"value", term.coeff.to_double()}});
    return a;
}

Report cmd_haar(const Options& o) {
    const FieldSpec f = field_of(o);
    const quasiwave::HaarSystem h(f);
    const std::string sym = field_symbol(f);
    Report r;
    r.table.columns = {"kind", "name", "basis", "translate", "coeff", "value"};
    json eqs = json::array();
    bool all_zero = true;
    for (const auto& e : h.refinement_equations()) {
        const bool zero = h.residual(e).is_zero();
        all_zero = all_zero && zero;
        for (const auto& t : e.rhs.terms)
            r.table.rows.push_back({"equation", e.label, t.basis, t.translate.pretty(sym), t.coeff.pretty(sym),
                                    io::format_double(t.coeff.to_double())});
        eqs.push_back({{"label", e.label}, {"residual_zero", zero}, {"terms", terms_json(e.rhs)}});
        r.notes.push_back(e.label + ": residual " + (zero ? "identically zero" : "NONZERO"));
    }
    std::vector<quasiwave::HaarWavelet> ws;
    if (o.variant == "orthonormal") {
        ws = h.orthonormal_wavelets();
    } else if (o.variant == "riesz") {
        ws = h.riesz_wavelets();
        for (auto& w : h.riesz_wavelets_negative()) ws.push_back(std::move(w));
    } else {
        throw ConfigError("--variant must be orthonormal or riesz");
    }
    json wj = json::array();
    for (const auto& w : ws) {
        for (const auto& t : w.terms.terms)
            r.table.rows.push_back({"wavelet", w.name, t.basis, t.translate.pretty(sym), t.coeff.pretty(sym),
                                    io::format_double(t.coeff.to_double())});
        wj.push_back({{"name", w.name},
                      {"tile", std::string(1, w.tile)},
                      {"offset", io::canonical(w.offset)},
                      {"terms", terms_json(w.terms)}});
    }
    r.result = {{"field", io::to_json(f)},
                {"beta", io::canonical(h.beta())},
                {"variant", o.variant},
                {"fine_letters", {{"L", h.fine_letters('L')}, {"S", h.fine_letters('S')}}},
                {"equations", eqs},
                {"residuals_zero", all_zero},
                {"wavelets", wj}};
    if (o.variant == "riesz") {
        const QuadRat printed = h.riesz_LS_normalizer_printed(), exact = h.riesz_LS_normalizer_recomputed();
        r.result["psi_LS_normalizer"] = {{"printed", io::canonical(printed)}, {"recomputed", io::canonical(exact)}};
        r.notes.push_back("psi_LS normaliser^2: printed " + printed.pretty(sym) + ", by integration " +
                          exact.pretty(sym));
    }
    if (o.gram_tiles > 0) {
        const auto basis = quasiwave::haar_basis_window(
            h, o.variant == "riesz" ? quasiwave::HaarVariant::Riesz : quasiwave::HaarVariant::Orthonormal,
            o.gram_tiles);
        bool identity = true;
        for (std::size_t i = 0; i < basis.size() && identity; ++i)
            for (std::size_t k = i; k < basis.size(); ++k) {
                if (!(basis[i].lo() < basis[k].hi() && basis[k].lo() < basis[i].hi())) continue;
                const auto v = quasiwave::inner_product(basis[i], basis[k]).as_quad();
                if (!v || *v != QuadRat(i == k ? 1 : 0)) {
                    identity = false;
                    break;
                }
            }
        r.result["gram"] = {{"tiles", o.gram_tiles}, {"functions", basis.size()}, {"identity", identity}};
        r.notes.push_back("Gram over " + std::to_string(o.gram_tiles) + " tiles (" + std::to_string(basis.size()) +
                          " functions): " + (identity ? "exactly the identity" : "not the identity"));
    }
    return r;
}

// ---- analyze -------------------------------------------------------------

Report cmd_analyze(const Options& o) {
    if (o.set != "fibonacci") throw ConfigError("analyze supports --set fibonacci only");
    if (o.s < 2 || o.s > 4) throw ConfigError("--s must be in 2..4");
    int widest = o.window;
    for (int w : o.windows) {
        if (w < 4) throw ConfigError("frame windows need at least 4 nodes");
        widest = std::max(widest, w);
    }
    const FieldSpec f = quasiwave::tau_field();
    const QuadRat theta = QuadRat::beta(f).pow(2);
    const auto seq = quasiwave::generate_fibonacci_chain(-widest / 2 - 20, widest + 40);
    const auto sys = quasiwave::build_wavelet_system(seq, theta, o.s);

    Report r;
    r.table.columns = {"window_nodes", "functions", "A", "B"};
    json fb = json::array();
    for (const auto& b : quasiwave::wavelet_frame_bounds(sys, seq, o.windows)) {
        r.table.rows.push_back({std::to_string(b.window_nodes), std::to_string(b.functions), io::format_double(b.A),
                                io::format_double(b.B)});
        fb.push_back({{"window_nodes", b.window_nodes}, {"functions", b.functions}, {"A", b.A}, {"B", b.B}});
    }
    r.result = {{"s", o.s}, {"frame_bounds", fb}};
    r.notes.push_back("A, B: extreme eigenvalues of the Gram matrix of normalised zeta_k inside each window");

    if (o.roundtrip > 0) {
        if (o.numeric != "exact" && o.numeric != "float") throw ConfigError("--numeric must be exact or float");
        const quasiwave::Multiresolution m(seq, theta, o.s, 0, o.window);
        std::mt19937 rng(o.seed);
        std::uniform_int_distribution<int> digit(-9, 9);
        std::uniform_real_distribution<double> real(-1.0, 1.0);
        double worst = 0.0;
        bool exact_ok = true;
        for (int t = 0; t < o.roundtrip; ++t) {
            if (o.numeric == "exact") {
                std::vector<QuadRat> x(m.dim());
                for (auto& v : x) v = QuadRat(f, mpq_class(digit(rng), 1 + std::abs(digit(rng))), mpq_class(digit(rng)));
                exact_ok = exact_ok && m.reconstruct(m.decompose(x)) == x;
            } else {
                std::vector<double> x(m.dim());
                for (auto& v : x) v = real(rng);
                const auto y = m.reconstruct(m.decompose(x));
                double num = 0, den = 0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    num += (x[i] - y[i]) * (x[i] - y[i]);
                    den += x[i] * x[i];
                }
                worst = std::max(worst, std::sqrt(num / den));
            }
        }
        json rt = {{"trials", o.roundtrip},
                   {"seed", o.seed},
                   {"numeric", o.numeric},
                   {"dim", m.dim()},
                   {"coarse", m.coarse().size()},
                   {"detail", m.detail().size()},
                   {"boundary", m.boundary().size()}};
        if (o.numeric == "exact") {
            rt["exact_equal"] = exact_ok;
            r.notes.push_back("round trip (exact, " + std::to_string(o.roundtrip) + " trials): " +
                              (exact_ok ? "equal" : "MISMATCH"));
            if (!exact_ok) r.exit_code = kComputationError;
        } else {
            rt["max_relative_error"] = worst;
            r.notes.push_back("round trip (float, " + std::to_string(o.roundtrip) +
                              " trials): max relative L2 error " + io::format_double(worst));
        }
        r.result["roundtrip"] = rt;
    }
    return r;
}

// ---- output --------------------------------------------------------------

void write_text(std::ostream& out, const std::string& command, const Report& r, bool stamp) {
    if (stamp) out << "# qwave " << command << "  " << timestamp() << "\n";
    std::vector<std::size_t> width(r.table.columns.size(), 0);
    auto measure = [](const std::string& s) {
        std::size_t n = 0;
        for (unsigned char c : s) n += (c & 0xC0) != 0x80;
        return n;
    };
    for (std::size_t j = 0; j < width.size(); ++j) width[j] = measure(r.table.columns[j]);
    for (const auto& row : r.table.rows)
        for (std::size_t j = 0; j < row.size() && j < width.size(); ++j) width[j] = std::max(width[j], measure(row[j]));
    auto line = [&](const Row& row) {
        std::string s;
        for (std::size_t j = 0; j < row.size(); ++j) {
            s += row[j];
            if (j + 1 < row.size()) s += std::string(width[j] - measure(row[j]) + 2, ' ');
        }
        out << s << "\n";
    };
    if (!r.table.columns.empty()) line(r.table.columns);
    for (const auto& row : r.table.rows) line(row);
    for (const auto& n : r.notes) out << "# " << n << "\n";
}

void write_report(std::ostream& out, const std::string& command, const json& config, const Report& r,
                  const Options& o) {
    if (o.format == "json") {
        json doc = {{"qwave", {{"command", command}, {"config", config}}}, {"result", r.result}};
        if (!o.no_timestamp) doc["qwave"]["timestamp"] = timestamp();
        out << doc.dump(2) << "\n";
    } else if (o.format == "csv") {
        io::CsvWriter w(out);
        w.row(r.table.columns);
        for (const auto& row : r.table.rows) w.row(row);
    } else {
        write_text(out, command, r, !o.no_timestamp);
    }
}

std::filesystem::path output_path(const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative())
        if (const char* dir = std::getenv("QWAVE_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
    return path;
}

}  // namespace

int run_qwave(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact spline wavelets on aperiodic point sets", "qwave"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output,-o", o.output, "Write to this file (relative paths go under $QWAVE_OUTPUT_DIR)");
    app.add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp for byte-identical output");

    auto field_opts = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "Field family")->check(CLI::IsMember({"minus", "plus"}));
        sub->add_option("--a", o.a, "Field parameter a")->check(CLI::Range(1, 1000));
    };

    auto* gen = app.add_subcommand("generate", "Export a slice of a point set");
    gen->add_option("--set", o.set, "Point set")->check(CLI::IsMember({"fibonacci", "beta", "lattice"}));
    field_opts(gen);
    gen->add_option("--range", o.range, "Index range lo..hi (fibonacci, lattice)");
    gen->add_option("--letters", o.letters, "Number of tiles (beta)");

    auto* wav = app.add_subcommand("wavelets", "Build the spline wavelet system");
    wav->add_option("--set", o.set, "Point set")->check(CLI::IsMember({"fibonacci", "beta"}));
    field_opts(wav);
    wav->add_option("--s", o.s, "Spline order");
    wav->add_option("--emit", o.emit, "What to print")
        ->check(CLI::IsMember({"summary", "tables", "refinement", "scaling"}));

    auto* ver = app.add_subcommand("verify", "Check recomputed values against the reference tables");
    ver->add_option("--golden", o.golden, "Reference file (default: the embedded tables)");
    ver->add_flag("--strict", o.strict, "Treat known anomalies as failures");

    auto* smp = app.add_subcommand("sample", "Dense samples of scaling functions and wavelets");
    smp->add_option("--set", o.set, "Point set")->check(CLI::IsMember({"fibonacci", "beta"}));
    field_opts(smp);
    smp->add_option("--s", o.s, "Spline order");
    smp->add_option("--function,-f", o.functions, "phi:WORD, zeta:WORD, Psi:WORD or psi:WORD (repeatable)");
    smp->add_option("--density", o.density, "Samples per unit length");

    auto* haar = app.add_subcommand("haar", "Haar systems on beta-integers");
    field_opts(haar);
    haar->add_option("--variant", o.variant, "Wavelet variant")->check(CLI::IsMember({"orthonormal", "riesz"}));
    haar->add_option("--gram-tiles", o.gram_tiles, "Check the exact Gram matrix over this many tiles");

    auto* ana = app.add_subcommand("analyze", "Frame bounds and transform round trips");
    ana->add_option("--s", o.s, "Spline order");
    ana->add_option("--windows", o.windows, "Window sizes in nodes")->delimiter(',');
    ana->add_option("--roundtrip", o.roundtrip, "Random round-trip trials on the transform window");
    ana->add_option("--seed", o.seed, "Random seed");
    ana->add_option("--numeric", o.numeric, "Arithmetic for round trips")->check(CLI::IsMember({"exact", "float"}));
    ana->add_option("--window", o.window, "Transform window in nodes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        Report r;
        if (sub == gen) r = cmd_generate(o, *gen);
        else if (sub == wav) r = cmd_wavelets(o);
        else if (sub == ver) r = cmd_verify(o);
        else if (sub == smp) r = cmd_sample(o);
        else if (sub == haar) r = cmd_haar(o);
        else r = cmd_analyze(o);

        const json config = config_json(command, o, *sub);
        if (o.output.empty()) {
            write_report(out, command, config, r, o);
        } else {
            const auto path = output_path(o.output);
            std::ofstream file(path, std::ios::binary);
            if (!file) throw ConfigError("cannot write " + path.string());
            write_report(file, command, config, r, o);
        }
        return r.exit_code;
    } catch (const ConfigError& e) {
        err << "qwave: " << e.what() << "\n";
        return kConfigError;
    } catch (const quasiwave::ParameterOutOfRange& e) {
        err << "qwave: " << e.what() << "\n";
        return kConfigError;
    } catch (const GoldenError& e) {
        err << "qwave: " << e.what() << "\n";
        return kComputationError;
    } catch (const std::exception& e) {
        err << "qwave: " << e.what() << "\n";
        return kComputationError;
    }
}

}  // namespace qwave

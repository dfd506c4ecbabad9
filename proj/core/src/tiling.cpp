#include "quasiwave/tiling.hpp"

#include <algorithm>
#include <map>

namespace quasiwave {

namespace {

QuadRat tau() { return QuadRat::beta(tau_field()); }

std::string repeat(const std::string& s, int times) {
    std::string r;
    for (int i = 0; i < times; ++i) r += s;
    return r;
}

bool in_window(const QuadRat& c, const QuadRat& lo, const QuadRat& hi) { return !(c < lo) && c < hi; }

}  // namespace

// ---------------------------------------------------------- SubstitutionRule

SubstitutionRule SubstitutionRule::beta_integers(const FieldSpec& f) {
    const QuadRat b = QuadRat::beta(f);
    const int a = f.a();
    SubstitutionRule r;
    r.len_L = QuadRat(1).bound_to(f);
    r.scale = b;
    if (f.family() == Family::Minus) {
        r.image_L = std::string(a, 'L') + "S";
        r.image_S = "L";
        r.len_S = b.inverse();
    } else {
        r.image_L = std::string(a - 1, 'L') + "S";
        r.image_S = std::string(a - 2, 'L') + "S";
        r.len_S = QuadRat(1) - b.inverse();
    }
    return r;
}

SubstitutionRule SubstitutionRule::fibonacci_chain() {
    const QuadRat t = tau();
    return {"LLS", "LS", QuadRat(1).bound_to(tau_field()), t.inverse(), t * t};
}

SubstitutionRule SubstitutionRule::model_set(const FieldSpec& f) {
    if (f.family() != Family::Minus)
        throw ParameterOutOfRange("the model-set substitution is defined for the Minus family");
    const int a = f.a();
    const QuadRat b = QuadRat::beta(f);
    const std::string block = std::string(a - 1, 'S') + "L";
    SubstitutionRule r;
    r.image_L = "L" + repeat(block, a) + std::string(a, 'S');
    r.image_S = "L" + repeat(block, a - 1) + std::string(a, 'S');
    r.len_L = b + QuadRat(1);
    r.len_S = b;
    r.scale = b * b;
    return r;
}

std::string SubstitutionRule::apply(const std::string& word) const {
    std::string out;
    for (char c : word) {
        if (c == 'L') out += image_L;
        else if (c == 'S') out += image_S;
        else throw ParameterOutOfRange(std::string("bad letter '") + c + "'");
    }
    return out;
}

std::string SubstitutionRule::iterate(const std::string& seed, std::size_t min_length) const {
    std::string w = seed;
    while (w.size() < min_length) {
        std::string next = apply(w);
        if (next.size() <= w.size()) throw ConsistencyError("substitution does not grow");
        w = std::move(next);
    }
    return w;
}

QuadRat SubstitutionRule::length_of(const std::string& word) const {
    long nl = std::count(word.begin(), word.end(), 'L');
    long ns = static_cast<long>(word.size()) - nl;
    return len_L * QuadRat(nl) + len_S * QuadRat(ns);
}

bool SubstitutionRule::inflation_consistent() const {
    return length_of(image_L) == scale * len_L && length_of(image_S) == scale * len_S;
}

bool SubstitutionRule::perron_consistent() const {
    const long lL = std::count(image_L.begin(), image_L.end(), 'L');
    const long sL = static_cast<long>(image_L.size()) - lL;
    const long lS = std::count(image_S.begin(), image_S.end(), 'L');
    const long sS = static_cast<long>(image_S.size()) - lS;
    const QuadRat tr(lL + sS), det(lL * sS - lS * sL);
    if (!(scale * scale - tr * scale + det).is_zero()) return false;
    QuadRat other = tr - scale;
    if (other.sign() < 0) other = -other;
    return other < scale;
}

std::string set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::BetaIntegers: return "beta-integers";
        case SetKind::FibonacciChain: return "fibonacci";
        case SetKind::ModelSet: return "model-set";
        case SetKind::Lattice: return "lattice";
        case SetKind::Rescaled: return "rescaled";
    }
    return "?";
}

// --------------------------------------------------------------- Membership

QuadRat Membership::internal(const QuadRat& x) const { return (x / scale).conjugate(); }

bool Membership::contains(const QuadRat& x) const {
    const QuadRat y = x / scale;
    switch (kind) {
        case Kind::Lattice: return y.is_rational() && y.is_integral();
        case Kind::BetaIntegers: return is_beta_integer(y, *field);
        case Kind::ModelSet: {
            if (!y.is_integral()) return false;
            QuadRat c = y.is_rational() ? y : reembed(y, *field).conjugate();
            return in_window(c, window_lo, window_hi);
        }
    }
    return false;
}

ModelSetSpec ModelSetSpec::fibonacci() {
    const QuadRat t = tau();
    return {QuadRat(0).bound_to(tau_field()), t * t};
}

bool ModelSetSpec::is_fibonacci() const {
    ModelSetSpec d = fibonacci();
    return window_lo == d.window_lo && window_hi == d.window_hi;
}

// ------------------------------------------------------------- NodeSequence

NodeSequence::NodeSequence(int first_index, std::vector<QuadRat> nodes, SetKind source, Membership membership,
                           QuadRat len_L, QuadRat len_S)
    : first_(first_index),
      nodes_(std::move(nodes)),
      source_(source),
      membership_(std::move(membership)),
      len_L_(std::move(len_L)),
      len_S_(std::move(len_S)) {
    letters_.reserve(nodes_.empty() ? 0 : nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        const QuadRat g = nodes_[i + 1] - nodes_[i];
        if (g.sign() <= 0) throw SupportError("nodes must be strictly increasing");
        if (g == len_L_) letters_.push_back('L');
        else if (g == len_S_) letters_.push_back('S');
        else throw ConsistencyError("gap " + g.str() + " matches neither tile length");
    }
}

const QuadRat& NodeSequence::node(int k) const {
    if (!has_index(k))
        throw RangeError("node index " + std::to_string(k) + " outside [" + std::to_string(first_) + ", " +
                         std::to_string(last_index()) + "]");
    return nodes_[static_cast<std::size_t>(k - first_)];
}

char NodeSequence::letter(int k) const {
    if (k < first_ || k >= last_index()) throw RangeError("no gap starting at index " + std::to_string(k));
    return letters_[static_cast<std::size_t>(k - first_)];
}

std::string NodeSequence::word(int k, int n) const {
    if (n < 0 || k < first_ || k + n > last_index())
        throw RangeError("word of length " + std::to_string(n) + " at " + std::to_string(k) + " leaves the sequence");
    return letters_.substr(static_cast<std::size_t>(k - first_), static_cast<std::size_t>(n));
}

std::optional<int> NodeSequence::index_of(const QuadRat& x) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
    if (it == nodes_.end() || !(*it == x)) return std::nullopt;
    return first_ + static_cast<int>(it - nodes_.begin());
}

bool NodeSequence::in_scaled(const QuadRat& x, const QuadRat& theta) const {
    if (theta.sign() <= 0) throw ParameterOutOfRange("scale factor must be positive");
    return contains_point(x / theta);
}

NodeSequence NodeSequence::rescaled(const QuadRat& factor) const {
    if (factor.sign() <= 0) throw ParameterOutOfRange("rescale factor must be positive");
    std::vector<QuadRat> nn;
    nn.reserve(nodes_.size());
    for (const auto& x : nodes_) nn.push_back(x * factor);
    Membership m = membership_;
    m.scale = m.scale * factor;
    return NodeSequence(first_, std::move(nn), SetKind::Rescaled, std::move(m), len_L_ * factor, len_S_ * factor);
}

NodeSequence NodeSequence::slice(int lo, int hi) const {
    if (lo > hi || !has_index(lo) || !has_index(hi)) throw RangeError("slice outside the sequence");
    std::vector<QuadRat> nn(nodes_.begin() + (lo - first_), nodes_.begin() + (hi - first_) + 1);
    return NodeSequence(lo, std::move(nn), source_, membership_, len_L_, len_S_);
}

// ------------------------------------------------------------ beta-integers

NodeSequence generate_beta_integers(const FieldSpec& f, int word_length, bool symmetric) {
    if (word_length < 1) throw ParameterOutOfRange("word_length must be >= 1");
    const SubstitutionRule rule = SubstitutionRule::beta_integers(f);
    const std::string w = rule.iterate("L", static_cast<std::size_t>(word_length)).substr(0, word_length);
    std::vector<QuadRat> pos{QuadRat(0).bound_to(f)};
    for (char c : w) pos.push_back(pos.back() + (c == 'L' ? rule.len_L : rule.len_S));
    Membership m;
    m.kind = Membership::Kind::BetaIntegers;
    m.field = f;
    if (!symmetric) return NodeSequence(0, std::move(pos), SetKind::BetaIntegers, m, rule.len_L, rule.len_S);
    std::vector<QuadRat> all;
    all.reserve(2 * pos.size() - 1);
    for (std::size_t i = pos.size(); i-- > 1;) all.push_back(-pos[i]);
    all.insert(all.end(), pos.begin(), pos.end());
    return NodeSequence(-word_length, std::move(all), SetKind::BetaIntegers, m, rule.len_L, rule.len_S);
}

NodeSequence generate_lattice(int lo, int hi) {
    if (lo > hi) throw ParameterOutOfRange("empty lattice range");
    std::vector<QuadRat> nodes;
    for (int k = lo; k <= hi; ++k) nodes.emplace_back(k);
    Membership m;
    m.kind = Membership::Kind::Lattice;
    return NodeSequence(lo, std::move(nodes), SetKind::Lattice, m, QuadRat(1), QuadRat(1));
}

namespace {

// Greedy expansion of x >= 0; returns false when a fractional part remains.
bool greedy(const QuadRat& x, const FieldSpec& f, std::vector<int>& digits) {
    digits.clear();
    if (x.sign() < 0) return false;
    if (x.is_zero()) {
        digits.push_back(0);
        return true;
    }
    const QuadRat b = QuadRat::beta(f);
    if (x < QuadRat(1)) return false;
    QuadRat pw = QuadRat(1).bound_to(f);
    while (!(x < pw * b)) pw *= b;
    QuadRat r = x;
    const QuadRat one(1);
    for (;;) {
        mpz_class d = (r / pw).floor();
        digits.push_back(static_cast<int>(d.get_si()));
        r -= pw * QuadRat(mpq_class(d));
        if (pw == one) break;
        pw /= b;
    }
    return r.is_zero();
}

}  // namespace

std::vector<int> greedy_beta_digits(const QuadRat& x, const FieldSpec& f) {
    std::vector<int> d;
    if (x.sign() < 0) throw NotABetaInteger(x.str() + " is negative");
    if (!greedy(x.bound_to(f), f, d)) throw NotABetaInteger(x.str() + " has a fractional beta-expansion");
    return d;
}

std::string digits_to_string(const std::vector<int>& digits) {
    bool wide = std::any_of(digits.begin(), digits.end(), [](int d) { return d > 9; });
    std::string s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (wide && i) s += ',';
        s += std::to_string(digits[i]);
    }
    return s;
}

bool is_beta_integer(const QuadRat& x, const FieldSpec& f) {
    std::vector<int> d;
    QuadRat y = x.sign() < 0 ? -x : x;
    return greedy(y.bound_to(f), f, d);
}

// ---------------------------------------------------------------- model sets

NodeSequence generate_fibonacci_chain(int lo, int hi, const ModelSetSpec& window) {
    if (lo > hi) throw ParameterOutOfRange("empty index range");
    if (!window.is_fibonacci()) {
        NodeSequence s = generate_model_set(tau_field(), window, lo, hi);
        return s;
    }
    const QuadRat t = tau();
    const QuadRat inv_t = t.inverse();
    const QuadRat inv_t2 = inv_t * inv_t;
    std::vector<QuadRat> nodes;
    nodes.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        const QuadRat kk(k);
        QuadRat x = (QuadRat(mpq_class((kk * inv_t).ceil())) + kk * t) * inv_t2;
        if (!in_window(x.conjugate(), window.window_lo, window.window_hi))
            throw ConsistencyError("closed form left the window at k = " + std::to_string(k));
        nodes.push_back(std::move(x));
    }
    Membership m;
    m.kind = Membership::Kind::ModelSet;
    m.field = tau_field();
    m.window_lo = window.window_lo;
    m.window_hi = window.window_hi;
    return NodeSequence(lo, std::move(nodes), SetKind::FibonacciChain, m, QuadRat(1).bound_to(tau_field()), inv_t);
}

std::vector<QuadRat> model_set_points(const FieldSpec& f, const ModelSetSpec& window, const QuadRat& x_lo,
                                      const QuadRat& x_hi) {
    if (!(window.window_lo < window.window_hi)) throw ParameterOutOfRange("window has empty interior");
    const QuadRat b = QuadRat::beta(f);
    const QuadRat gap = b - b.conjugate();  // sqrt(D) > 0
    // x - x' = q sqrt(D)
    const mpz_class q_lo = ((x_lo - window.window_hi) / gap).floor() - 1;
    const mpz_class q_hi = ((x_hi - window.window_lo) / gap).ceil() + 1;
    std::vector<QuadRat> out;
    for (mpz_class q = q_lo; q <= q_hi; ++q) {
        const QuadRat qb(f, 0, mpq_class(q));
        const QuadRat qc = qb.conjugate();
        mpz_class p_lo = std::max<mpz_class>((window.window_lo - qc).ceil(), (x_lo - qb).ceil());
        mpz_class p_hi = std::min<mpz_class>((window.window_hi - qc).ceil() - 1, (x_hi - qb).floor());
        for (mpz_class p = p_lo; p <= p_hi; ++p) out.emplace_back(f, mpq_class(p), mpq_class(q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodeSequence generate_model_set(const FieldSpec& f, const ModelSetSpec& window, int lo, int hi) {
    if (lo > hi) throw ParameterOutOfRange("empty index range");
    long reach = std::max(std::abs(lo), std::abs(hi)) + 4;
    for (int attempt = 0; attempt < 40; ++attempt, reach *= 2) {
        const QuadRat X(reach);
        std::vector<QuadRat> pts = model_set_points(f, window, -X, X);
        auto zero = std::lower_bound(pts.begin(), pts.end(), QuadRat(0));
        const long anchor = zero - pts.begin();
        if (anchor + lo < 0 || anchor + hi >= static_cast<long>(pts.size())) continue;
        std::vector<QuadRat> nodes(pts.begin() + (anchor + lo), pts.begin() + (anchor + hi) + 1);
        std::vector<QuadRat> gaps;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            QuadRat g = nodes[i + 1] - nodes[i];
            if (std::find(gaps.begin(), gaps.end(), g) == gaps.end()) gaps.push_back(g);
        }
        if (gaps.size() > 2) throw ConsistencyError("window produces more than two gap lengths");
        std::sort(gaps.begin(), gaps.end());
        QuadRat len_S = gaps.empty() ? QuadRat(1) : gaps.front();
        QuadRat len_L = gaps.empty() ? QuadRat(1) : gaps.back();
        Membership m;
        m.kind = Membership::Kind::ModelSet;
        m.field = f;
        m.window_lo = window.window_lo;
        m.window_hi = window.window_hi;
        return NodeSequence(lo, std::move(nodes), SetKind::ModelSet, m, len_L, len_S);
    }
    throw SequenceTooShort("model set too sparse for the requested range");
}

std::vector<QuadRat> sieve_beta_integers(const FieldSpec& f, int word_length) {
    if (f.family() != Family::Minus) throw ParameterOutOfRange("sieving is defined for the Minus family");
    NodeSequence z = generate_beta_integers(f, word_length, true);
    const QuadRat zero = QuadRat(0).bound_to(f), one = QuadRat(1).bound_to(f);
    std::vector<QuadRat> out;
    for (const auto& x : z.nodes())
        if (in_window(x.conjugate(), zero, one)) out.push_back(x);
    return out;
}

NodeSequence model_set_by_substitution(const FieldSpec& f, int iterations) {
    const SubstitutionRule rule = SubstitutionRule::model_set(f);
    std::string left = "S", right = "L";
    for (int i = 0; i < iterations; ++i) {
        left = rule.apply(left);
        right = rule.apply(right);
    }
    std::vector<QuadRat> nodes;
    QuadRat x = -rule.length_of(left);
    nodes.push_back(x);
    for (char c : left + right) {
        x += c == 'L' ? rule.len_L : rule.len_S;
        nodes.push_back(x);
    }
    Membership m;
    m.kind = Membership::Kind::ModelSet;
    m.field = f;
    m.window_lo = QuadRat(0).bound_to(f);
    m.window_hi = QuadRat(1).bound_to(f);
    return NodeSequence(-static_cast<int>(left.size()), std::move(nodes), SetKind::ModelSet, m, rule.len_L,
                        rule.len_S);
}

std::vector<QuadRat> fibonacci_from_tau2_integers(int word_length) {
    const FieldSpec f3 = FieldSpec::make(Family::Plus, 3);
    const NodeSequence z = generate_beta_integers(f3, word_length);
    const QuadRat inv_b = reembed(QuadRat::beta(f3).inverse(), tau_field());
    std::vector<QuadRat> out;
    for (const auto& x : z.nodes()) {
        QuadRat y = reembed(x, tau_field());
        if (!y.is_zero()) out.push_back(-y + inv_b);
        out.push_back(std::move(y));
    }
    std::sort(out.begin(), out.end());
    return out;
}

QuadRat neighbor_map(const QuadRat& x_conj, Direction dir) {
    const QuadRat t = tau();
    const QuadRat y = x_conj.bound_to(tau_field());
    if (y.sign() < 0 || !(y < t * t)) throw OutOfWindow(x_conj.str() + " is outside [0, tau^2)");
    if (dir == Direction::Right) return y < t ? y + QuadRat(1) : y - t;
    return y < QuadRat(1) ? y + t : y - QuadRat(1);
}

// ------------------------------------------------------------------ words

bool word_before(const std::string& a, const std::string& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] == 'L';
    return a.size() > b.size();
}

std::vector<WordClass> classify_words(const NodeSequence& seq, int n) {
    if (n < 1) throw ParameterOutOfRange("word length must be >= 1");
    std::map<std::string, WordClass> by_word;
    for (int k = seq.first_index(); k + n <= seq.last_index(); ++k) {
        WordClass& c = by_word[seq.word(k, n)];
        c.members.push_back(k);
    }
    const bool sturmian = seq.membership().kind != Membership::Kind::Lattice;
    if (sturmian && by_word.size() != static_cast<std::size_t>(n) + 1)
        throw SequenceTooShort("found " + std::to_string(by_word.size()) + " classes of " + std::to_string(n) +
                               "-letter words, expected " + std::to_string(n + 1));
    std::vector<WordClass> out;
    for (auto& [w, c] : by_word) {
        c.word = w;
        c.representative = c.members.front();
        for (int k : c.members)
            if (k <= 0) c.representative = k;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const WordClass& a, const WordClass& b) { return word_before(a.word, b.word); });

    // Internal-space windows from the left ends lambda_{-n} .. lambda_0.
    const Membership& m = seq.membership();
    if (m.kind != Membership::Kind::ModelSet || !seq.has_index(-n) || !seq.has_index(n)) return out;
    std::vector<std::pair<QuadRat, std::size_t>> ends;
    for (int k = -n; k <= 0; ++k) {
        const std::string w = seq.word(k, n);
        auto it = std::find_if(out.begin(), out.end(), [&](const WordClass& c) { return c.word == w; });
        ends.emplace_back(m.internal(seq.node(k)), static_cast<std::size_t>(it - out.begin()));
    }
    std::sort(ends.begin(), ends.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!(ends.front().first == m.window_lo)) return out;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        const QuadRat hi = i + 1 < ends.size() ? ends[i + 1].first : m.window_hi;
        out[ends[i].second].window = std::make_pair(ends[i].first, hi);
    }
    for (const auto& c : out) {
        if (!c.window) throw ConsistencyError("word " + c.word + " has no left end among lambda_{-n..0}");
        for (int k : c.members)
            if (!in_window(m.internal(seq.node(k)), c.window->first, c.window->second))
                throw ConsistencyError("node " + std::to_string(k) + " of class " + c.word + " is outside its window");
    }
    return out;
}

std::vector<int> left_ends_of_all_words(const NodeSequence& seq, int n) {
    if (n < 1) throw ParameterOutOfRange("word length must be >= 1");
    if (!seq.has_index(-n) || !seq.has_index(n)) throw SequenceTooShort("need indices -n .. n");
    std::vector<int> ends;
    std::vector<std::string> seen;
    for (int k = -n; k <= 0; ++k) {
        std::string w = seq.word(k, n);
        if (std::find(seen.begin(), seen.end(), w) != seen.end())
            throw ConsistencyError("word " + w + " occurs twice among the left ends");
        seen.push_back(std::move(w));
        ends.push_back(k);
    }
    return ends;
}

LetterCounts word_letter_counts(const NodeSequence& seq, int start, int n) {
    const std::string w = seq.word(start, n);
    LetterCounts direct;
    direct.count_L = std::count(w.begin(), w.end(), 'L');
    direct.count_S = n - direct.count_L;
    if (seq.len_L() == seq.len_S()) return direct;
    const QuadRat len = seq.node(start + n) - seq.node(start);
    const QuadRat cl = (len - QuadRat(n) * seq.len_S()) / (seq.len_L() - seq.len_S());
    if (!cl.is_rational() || !cl.is_integral() || cl.p() != direct.count_L)
        throw ConsistencyError("position formula gives " + cl.str() + " L's, direct count " +
                               std::to_string(direct.count_L));
    if (seq.source() == SetKind::FibonacciChain) {
        auto [a, b] = fibonacci_count_pairs(n);
        if (!(direct == a) && !(direct == b)) throw ConsistencyError("word " + w + " violates the balance property");
    }
    return direct;
}

std::pair<LetterCounts, LetterCounts> fibonacci_count_pairs(int n) {
    const QuadRat inv_t = tau().inverse();
    const QuadRat x = QuadRat(n) * inv_t, y = x * inv_t;
    auto get = [](const mpz_class& z) { return z.get_si(); };
    return {{get(x.ceil()), get(y.floor())}, {get(x.floor()), get(y.ceil())}};
}

CountSweepReport sweep_letter_counts(const NodeSequence& seq, int n_max) {
    const QuadRat t = tau();
    if (seq.len_L() != QuadRat(1) || seq.len_S() != t.inverse())
        throw ParameterOutOfRange("count sweep needs the Fibonacci tile lengths 1 and 1/tau");
    const std::size_t m = seq.size();
    std::vector<QuadInt> T(m);
    std::vector<long> prefix(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        T[i] = QuadInt::from(seq.nodes()[i] * t * t);
        if (i) prefix[i] = prefix[i - 1] + (seq.letters()[i - 1] == 'L');
    }
    CountSweepReport rep;
    for (int n = 1; n <= n_max && static_cast<std::size_t>(n) < m; ++n) {
        auto [a, b] = fibonacci_count_pairs(n);
        const QuadInt nt{0, n};
        for (std::size_t k = 0; k + n < m; ++k) {
            const long direct = prefix[k + n] - prefix[k];
            const QuadInt d = T[k + n] - T[k] - nt;
            ++rep.words_checked;
            if (d.q != 0 || d.p != direct) ++rep.formula_mismatches;
            const LetterCounts c{direct, n - direct};
            if (!(c == a) && !(c == b)) ++rep.balance_violations;
        }
    }
    return rep;
}

}  // namespace quasiwave

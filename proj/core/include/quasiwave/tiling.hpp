#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasiwave/quadfield.hpp"

namespace quasiwave {

/// Two-letter substitution with tile lengths and inflation factor.
struct SubstitutionRule {
    std::string image_L;
    std::string image_S;
    QuadRat len_L;
    QuadRat len_S;
    QuadRat scale;

    /// Beta-integer rule: Minus L -> L^a S, S -> L (|S| = 1/beta);
    /// Plus L -> L^(a-1) S, S -> L^(a-2) S (|S| = 1 - 1/beta).  Factor beta.
    static SubstitutionRule beta_integers(const FieldSpec& f);
    /// L -> LLS, S -> LS with lengths 1, 1/tau and factor tau^2.
    static SubstitutionRule fibonacci_chain();
    /// Minus family only: L -> L (S^(a-1) L)^a S^a, S -> L (S^(a-1) L)^(a-1) S^a
    /// with lengths beta + 1, beta and factor beta^2.
    static SubstitutionRule model_set(const FieldSpec& f);

    std::string apply(const std::string& word) const;
    /// Iterates from `seed` until the word has at least `min_length` letters.
    std::string iterate(const std::string& seed, std::size_t min_length) const;
    QuadRat length_of(const std::string& word) const;
    /// Inflated tiles repack exactly: |sigma(X)| = scale * |X|.
    bool inflation_consistent() const;
    /// `scale` is the Perron root of the substitution matrix.
    bool perron_consistent() const;
};

enum class SetKind { BetaIntegers, FibonacciChain, ModelSet, Lattice, Rescaled };
std::string set_kind_name(SetKind k);

/// Exact membership predicate for the infinite set a sequence was cut from.
/// The set is `scale * base` where base is
///   ModelSet:     { x in Z[beta] : conj(x) in [window_lo, window_hi) }
///   BetaIntegers: Z_beta (both signs)
///   Lattice:      Z
struct Membership {
    enum class Kind { ModelSet, BetaIntegers, Lattice };
    Kind kind = Kind::Lattice;
    std::optional<FieldSpec> field;
    QuadRat scale = QuadRat(1);
    QuadRat window_lo;
    QuadRat window_hi;

    bool contains(const QuadRat& x) const;
    /// conj(x / scale), the internal-space coordinate of a model-set point.
    QuadRat internal(const QuadRat& x) const;
};

struct ModelSetSpec {
    QuadRat window_lo;
    QuadRat window_hi;

    /// [0, tau^2), the window of the rescaled Fibonacci chain.
    static ModelSetSpec fibonacci();
    bool is_fibonacci() const;
};

/// Finite slice lambda_first .. lambda_last of a Delaunay set, with the
/// letter of each gap.  Index 0 is the anchor lambda_0 = 0 when the slice
/// contains it.
class NodeSequence {
public:
    NodeSequence(int first_index, std::vector<QuadRat> nodes, SetKind source, Membership membership,
                 QuadRat len_L, QuadRat len_S);

    int first_index() const { return first_; }
    int last_index() const { return first_ + static_cast<int>(nodes_.size()) - 1; }
    std::size_t size() const { return nodes_.size(); }
    bool has_index(int k) const { return k >= first_ && k <= last_index(); }

    const QuadRat& node(int k) const;
    const std::vector<QuadRat>& nodes() const { return nodes_; }
    /// Letter of the gap [lambda_k, lambda_{k+1}].
    char letter(int k) const;
    const std::string& letters() const { return letters_; }
    /// The n letters starting at lambda_k.
    std::string word(int k, int n) const;
    std::optional<int> index_of(const QuadRat& x) const;

    SetKind source() const { return source_; }
    const Membership& membership() const { return membership_; }
    std::optional<FieldSpec> field() const { return membership_.field; }
    const QuadRat& len_L() const { return len_L_; }
    const QuadRat& len_S() const { return len_S_; }

    /// x in Lambda (the infinite set).
    bool contains_point(const QuadRat& x) const { return membership_.contains(x); }
    /// x in theta * Lambda.
    bool in_scaled(const QuadRat& x, const QuadRat& theta) const;

    NodeSequence rescaled(const QuadRat& factor) const;
    NodeSequence slice(int lo, int hi) const;

private:
    int first_;
    std::vector<QuadRat> nodes_;
    std::string letters_;
    SetKind source_;
    Membership membership_;
    QuadRat len_L_;
    QuadRat len_S_;
};

/// Nodes of Z_beta^+ from the substitution fixed point (and the mirror image
/// -Z_beta^+ with `symmetric`).
NodeSequence generate_beta_integers(const FieldSpec& f, int word_length, bool symmetric = false);

/// Integer lattice Z on [lo, hi] (single letter L); the classical sanity case.
NodeSequence generate_lattice(int lo, int hi);

/// Greedy beta-expansion digits, most significant first.
std::vector<int> greedy_beta_digits(const QuadRat& x, const FieldSpec& f);
std::string digits_to_string(const std::vector<int>& digits);
bool is_beta_integer(const QuadRat& x, const FieldSpec& f);

/// lambda_k = (ceil(k/tau) + k tau) / tau^2 for k in [lo, hi].  Any other
/// window goes through generate_model_set.
NodeSequence generate_fibonacci_chain(int lo, int hi, const ModelSetSpec& window = ModelSetSpec::fibonacci());

/// All x in Z[beta] with conj(x) in [window) and x_lo <= x <= x_hi, sorted.
std::vector<QuadRat> model_set_points(const FieldSpec& f, const ModelSetSpec& window, const QuadRat& x_lo,
                                      const QuadRat& x_hi);
/// Index range [lo, hi] of the model set, anchored at its smallest point >= 0.
NodeSequence generate_model_set(const FieldSpec& f, const ModelSetSpec& window, int lo, int hi);
/// Points of Z_beta (word_length letters per side) with conj in [0, 1).
std::vector<QuadRat> sieve_beta_integers(const FieldSpec& f, int word_length);
/// Tiling by the model-set substitution after `iterations` steps from S.L.
NodeSequence model_set_by_substitution(const FieldSpec& f, int iterations);
/// Z_b^+ u (-Z_b^+ \ {0} + 1/b) with b = tau^2, re-embedded in Q(tau).
std::vector<QuadRat> fibonacci_from_tau2_integers(int word_length);

enum class Direction { Right, Left };

/// Conjugate of the right/left neighbour of a Fibonacci node with
/// conjugate x_conj in [0, tau^2).
QuadRat neighbor_map(const QuadRat& x_conj, Direction dir);

struct WordClass {
    std::string word;
    std::vector<int> members;
    int representative = 0;
    /// Internal-space interval [lo, hi) (model sets only).
    std::optional<std::pair<QuadRat, QuadRat>> window;
};

/// Lexicographic order with L > S; true when a comes before b (larger first).
bool word_before(const std::string& a, const std::string& b);

std::vector<WordClass> classify_words(const NodeSequence& seq, int n);
std::vector<int> left_ends_of_all_words(const NodeSequence& seq, int n);

struct LetterCounts {
    long count_L = 0;
    long count_S = 0;
    friend bool operator==(const LetterCounts&, const LetterCounts&) = default;
};

/// Counts letters directly and from the node positions; throws
/// ConsistencyError when the two disagree.
LetterCounts word_letter_counts(const NodeSequence& seq, int start, int n);
/// {(ceil(n/tau), floor(n/tau^2)), (floor(n/tau), ceil(n/tau^2))}
std::pair<LetterCounts, LetterCounts> fibonacci_count_pairs(int n);

struct CountSweepReport {
    long long words_checked = 0;
    long long formula_mismatches = 0;
    long long balance_violations = 0;
};

/// Every word of length 1..n_max inside the sequence: direct count vs the
/// position formula (in Z[beta] integer arithmetic) and vs the two allowed
/// pairs.  Fibonacci chains only.
CountSweepReport sweep_letter_counts(const NodeSequence& seq, int n_max);

}  // namespace quasiwave

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasiwave/quadfield.hpp"

namespace quasiwave {

/// Polynomial sum_j c[j] t^j in a local coordinate t = x - (left break).
using LocalPoly = std::vector<QuadRat>;

namespace poly {
QuadRat eval(const LocalPoly& c, const QuadRat& t);
LocalPoly derivative(const LocalPoly& c);
/// Coefficients of t -> c(t + delta).
LocalPoly shift(const LocalPoly& c, const QuadRat& delta);
LocalPoly multiply(const LocalPoly& a, const LocalPoly& b);
LocalPoly add(const LocalPoly& a, const LocalPoly& b);
LocalPoly scale(const LocalPoly& a, const QuadRat& s);
/// \int_0^h c(t) dt
QuadRat integral(const LocalPoly& c, const QuadRat& h);
bool is_zero(const LocalPoly& c);
void trim(LocalPoly& c);
}  // namespace poly

enum class Side { Left, Right };

/// Compactly supported piecewise polynomial.  Piece i lives on
/// [breaks[i], breaks[i+1]) and is stored in the local coordinate
/// x - breaks[i].  The function is zero outside [breaks.front(), breaks.back()].
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<QuadRat> breaks, std::vector<LocalPoly> pieces, int first_index = 0);

    /// The constant c on [lo, hi).
    static PiecewisePoly constant(const QuadRat& lo, const QuadRat& hi, const QuadRat& c);

    bool empty() const { return pieces_.empty(); }
    const std::vector<QuadRat>& breaks() const { return breaks_; }
    const std::vector<LocalPoly>& pieces() const { return pieces_; }
    std::size_t num_pieces() const { return pieces_.size(); }
    /// Node index of breaks()[0] in the sequence the function was built on.
    int first_index() const { return first_index_; }
    void set_first_index(int k) { first_index_ = k; }
    const QuadRat& lo() const;
    const QuadRat& hi() const;
    /// Largest polynomial degree over all pieces (-1 for the zero function).
    int degree() const;

    /// One-sided value at x; at a break, Side::Right takes the piece that
    /// starts there and Side::Left the piece that ends there.
    QuadRat eval(const QuadRat& x, Side side = Side::Right) const;
    double eval_double(double x) const;

    PiecewisePoly derivative(int k = 1) const;
    /// Antiderivative vanishing at the left support end.  With
    /// `require_compact` the value at the right end must be zero.
    PiecewisePoly antiderivative(bool require_compact = false) const;
    QuadRat integral() const;
    /// \int x^k f(x) dx
    QuadRat moment(int k) const;

    /// f(x - shift)
    PiecewisePoly translated(const QuadRat& shift) const;
    /// f(theta * x - shift)
    PiecewisePoly dilated(const QuadRat& theta, const QuadRat& shift = QuadRat()) const;
    PiecewisePoly scaled(const QuadRat& s) const;
    /// f(-x)
    PiecewisePoly mirrored() const;
    /// Same function on a finer set of breaks (must contain the current ones
    /// inside the support; extra breaks outside add zero pieces).
    PiecewisePoly refined(const std::vector<QuadRat>& breaks) const;
    /// Drops zero pieces at both ends.
    PiecewisePoly trimmed() const;

    /// Largest r such that derivatives of order 0..r are continuous on all
    /// of R (including the support ends); -1 if f itself jumps.
    int continuity_order() const;

    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);

    bool is_zero() const;
    /// Functional equality (breaks may differ).
    bool equals(const PiecewisePoly& o) const;

private:
    std::vector<QuadRat> breaks_;
    std::vector<LocalPoly> pieces_;
    int first_index_ = 0;
};

/// Sorted union of two break lists.
std::vector<QuadRat> merge_breaks(const std::vector<QuadRat>& a, const std::vector<QuadRat>& b);

QuadRat inner_product(const PiecewisePoly& a, const PiecewisePoly& b);

/// factor * sqrt(radicand), radicand > 0.
struct RootCoeff {
    QuadRat factor;
    QuadRat radicand = QuadRat(1);

    static RootCoeff rational(const QuadRat& v) { return {v, QuadRat(1)}; }
    /// sqrt(r)
    static RootCoeff root(const QuadRat& r) { return {QuadRat(1), r}; }

    RootCoeff operator*(const RootCoeff& o) const { return {factor * o.factor, radicand * o.radicand}; }
    RootCoeff inverse() const;
    /// Exact equality of the real values.
    bool equals(const RootCoeff& o) const;
    double to_double() const;
    std::string str() const;
    /// Like QuadRat::pretty, with the square root written out.
    std::string pretty(std::string_view sym = "b") const;
};

/// If r1 / r2 is a square in Q(beta), returns sqrt(r1 / r2).
std::optional<QuadRat> radical_ratio(const QuadRat& r1, const QuadRat& r2);

/// Finite sum of RootCoeffs, grouped so that radicands in different groups
/// have non-square ratios.  Such square roots are linearly independent over
/// Q(beta), so the sum is zero exactly when every group factor is zero.
class RootSum {
public:
    RootSum() = default;
    RootSum(const RootCoeff& c) { add(c); }

    void add(const RootCoeff& c);
    const std::vector<RootCoeff>& terms() const { return terms_; }
    bool is_zero() const;
    /// The value when it is an element of Q(beta).
    std::optional<QuadRat> as_quad() const;
    double to_double() const;
    std::string str() const;

private:
    std::vector<RootCoeff> terms_;
};

/// f = sum_i sqrt(radicand_i) * shape_i with shapes over Q(beta).  Used for
/// functions whose normalisation involves square roots (Haar heights,
/// L2-normalised wavelets).
class RadicalFunction {
public:
    struct Part {
        QuadRat radicand;
        PiecewisePoly shape;
    };

    RadicalFunction() = default;
    RadicalFunction(const PiecewisePoly& shape) { add(RootCoeff::rational(1), shape); }
    /// shape / sqrt(norm_sq): the L2-normalised form when norm_sq = ||shape||^2.
    static RadicalFunction normalized(const PiecewisePoly& shape, const QuadRat& norm_sq);

    void add(const RootCoeff& c, const PiecewisePoly& shape);
    void add(const RootCoeff& c, const RadicalFunction& f);
    const std::vector<Part>& parts() const { return parts_; }

    RadicalFunction translated(const QuadRat& shift) const;
    RadicalFunction dilated(const QuadRat& theta, const QuadRat& shift = QuadRat()) const;
    /// f(-x)
    RadicalFunction mirrored() const;
    QuadRat lo() const;
    QuadRat hi() const;

    bool is_zero() const;
    bool equals(const RadicalFunction& o) const;
    RootSum value(const QuadRat& x, Side side = Side::Right) const;
    double eval_double(double x) const;
    /// The shape when the function has a single part, plus its radicand.
    const Part& single() const;

private:
    std::vector<Part> parts_;
};

RootSum inner_product(const RadicalFunction& a, const RadicalFunction& b);
RadicalFunction operator-(const RadicalFunction& a, const RadicalFunction& b);

}  // namespace quasiwave

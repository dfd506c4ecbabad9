#pragma once

#include <string>
#include <vector>

#include "quasiwave/piecewise.hpp"
#include "quasiwave/tiling.hpp"

namespace quasiwave {

/// B-spline of order s on lambda_n .. lambda_{n+s} by the two-term
/// recurrence.  Normalised so that the integral is (lambda_{n+s} - lambda_n)/s.
PiecewisePoly bspline(const NodeSequence& seq, int n, int s);

/// Same recurrence on an explicit strictly increasing knot list (s+1 knots).
PiecewisePoly bspline_on_knots(const std::vector<QuadRat>& knots);

/// Closed-form Dirac weights a_0 .. a_s for knots x_0 < ... < x_s.
std::vector<QuadRat> vandermonde_weights(const std::vector<QuadRat>& knots);
/// sum_l a_l x_l^j for j = 0 .. s.
std::vector<QuadRat> dirac_moments(const std::vector<QuadRat>& weights, const std::vector<QuadRat>& knots);

struct VandermondeSpline {
    std::vector<QuadRat> weights;
    /// s-fold antiderivative of sum_l a_l delta_{lambda_{n+l}}.
    PiecewisePoly spline;
    /// spline = proportionality * bspline(seq, n, s)
    QuadRat proportionality;
};

/// Builds the spline from the Dirac weights, checks the moment system, and
/// reports the scalar relating it to the recurrence result.
VandermondeSpline bspline_vandermonde(const NodeSequence& seq, int n, int s);

/// Scales B so that its integral is (hi - lo) / s.
PiecewisePoly normalize_bspline(const PiecewisePoly& b, int s);

/// Bernstein coefficients of one piece on [0, h].
std::vector<QuadRat> bernstein_coefficients(const LocalPoly& c, const QuadRat& h);
/// Every piece has nonnegative, not all zero Bernstein coefficients, so the
/// function is strictly positive inside each piece.
bool positive_on_support(const PiecewisePoly& f);

struct ScalingClass {
    std::string word;
    int representative = 0;
    std::vector<int> members;
    /// B-spline of the representative translated so that its left end is 0.
    PiecewisePoly shape;
};

/// One class per s-letter word; shapes taken at the largest member <= 0.
std::vector<ScalingClass> scaling_classes(const NodeSequence& seq, int s);

/// Index of the class whose word starts at node k.
const ScalingClass& class_at(const std::vector<ScalingClass>& classes, const NodeSequence& seq, int k);

}  // namespace quasiwave

#pragma once

#include <string>
#include <vector>

#include "quasiwave/piecewise.hpp"
#include "quasiwave/spline.hpp"
#include "quasiwave/tiling.hpp"
#include "quasiwave/wavelet.hpp"

namespace quasiwave {

/// coeff * basis(dilation * x - translate)
struct RefinementTerm {
    std::string basis;
    /// Fine node index of `translate` (spline tables); unused for Haar.
    int node = 0;
    QuadRat translate;
    RootCoeff coeff;
};

struct RefinementTable {
    std::string target;
    QuadRat dilation = QuadRat(1);
    std::vector<RefinementTerm> terms;

    const RefinementTerm* find(const std::string& basis, const QuadRat& translate) const;
};

/// Piecewise-linear target in the hat basis of `fine_seq` by the forward
/// recursion g_j = value at lambda_{j+1}.  Throws NotInSpan when the target
/// does not close to zero or has breaks off the nodes.
RefinementTable refine_linear(const PiecewisePoly& target, const NodeSequence& fine_seq,
                              const std::vector<ScalingClass>& fine_basis);

/// Any target in the span of the order-s B-splines of `fine_seq` (s taken
/// from the class words) by an exact solve on the piece coefficients.
RefinementTable refine_general(const PiecewisePoly& target, const NodeSequence& fine_seq,
                               const std::vector<ScalingClass>& fine_basis);

/// sum_j g_j B_j with rational-in-Q(beta) coefficients (spline tables only).
PiecewisePoly expand(const RefinementTable& table, const std::vector<ScalingClass>& fine_basis);

/// phi_word(x - lambda_rep) = sum g phi(theta x - lambda_j) for each class.
std::vector<RefinementTable> scaling_equations(const NodeSequence& seq, const std::vector<ScalingClass>& classes,
                                               const QuadRat& theta);

struct WaveletEquation {
    std::string word;
    int n = 0;
    /// zeta(theta x) = sum g phi(theta x - lambda_j); divide by sqrt(norm_sq).
    RefinementTable table;
    QuadRat norm_sq;
};

std::vector<WaveletEquation> wavelet_scaling_equations(const WaveletSystem& sys, const NodeSequence& seq);

}  // namespace quasiwave

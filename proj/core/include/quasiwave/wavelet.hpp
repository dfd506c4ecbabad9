#pragma once

#include <string>
#include <vector>

#include "quasiwave/linsolve.hpp"
#include "quasiwave/piecewise.hpp"
#include "quasiwave/spline.hpp"
#include "quasiwave/tiling.hpp"

namespace quasiwave {

/// E = { n : lambda_{n+1} not in theta * Lambda } over the gaps of `seq`.
std::vector<int> compute_E(const NodeSequence& seq, const QuadRat& theta);

struct WaveletSupportPlan {
    int n = 0;
    int N = 0;
    std::string word;
    std::vector<int> theta_points_inside;
};

/// Smallest N with N = s2 + #((lambda_n, lambda_{n+N}) & theta Lambda).
WaveletSupportPlan support_plan(const NodeSequence& seq, const QuadRat& theta, int n, int s2);

/// The square system for Psi on [lambda_n, lambda_{n+N}] with unknowns the
/// local monomial coefficients of each piece.  Rows, in order: interior
/// smoothness (orders 0 .. s2-2), vanishing to order s2-2 at both ends,
/// zeros at theta Lambda points inside, Psi(lambda_{n+1}) = u.
struct PsiSystem {
    QMatrix matrix;
    std::vector<QuadRat> rhs;
    std::vector<std::string> row_labels;
};
PsiSystem psi_system(const NodeSequence& seq, const QuadRat& theta, int n, int N, int s2, const QuadRat& u);

/// Solves the system; throws SingularSystem naming the offending rows when it
/// is not uniquely solvable.
PiecewisePoly build_Psi(const NodeSequence& seq, const QuadRat& theta, const WaveletSupportPlan& plan, int s2,
                        const QuadRat& u);

/// s-fold derivative of Psi.
PiecewisePoly build_zeta(const PiecewisePoly& psi, int s);

struct MotherWavelet {
    std::string word;
    int n = 0;
    WaveletSupportPlan plan;
    /// Psi(lambda_{n+1}) under the scale convention below.
    QuadRat u;
    PiecewisePoly Psi;
    /// First piece equal to ((2s-1)!/(s-1)!) (x - lambda_n)^(s-1).
    PiecewisePoly zeta;
    /// ||zeta||^2
    QuadRat zeta_norm_sq;
    /// ||zeta(theta x)||^2 = ||zeta||^2 / theta
    QuadRat norm_sq;
    /// zeta(theta x) / ||zeta(theta x)||
    RadicalFunction psi;
};

/// Builds the mother wavelet starting at n with the fixed scale convention.
MotherWavelet build_mother(const NodeSequence& seq, const QuadRat& theta, int n, int s);

/// L2-normalised ζ(θx) for an arbitrary zeta.
RadicalFunction build_psi(const PiecewisePoly& zeta, const QuadRat& theta);

/// Distinct support words over n in E whose plan fits inside the sequence,
/// each with the largest start index <= 0 (or the smallest one).
struct MotherWord {
    std::string word;
    int representative = 0;
    std::vector<int> members;
};
std::vector<MotherWord> enumerate_mother_words(const NodeSequence& seq, const QuadRat& theta, int s);

/// ceil((2s-2) tau) + 1, the shorter Fibonacci support length.
int fibonacci_support_length(int s);

struct WaveletSystem {
    int s = 0;
    QuadRat theta;
    std::vector<int> E;
    std::vector<ScalingClass> scaling;
    std::vector<MotherWavelet> mothers;

    const MotherWavelet& mother(const std::string& word) const;
    /// zeta_k for k in E, translated from its class representative.
    PiecewisePoly zeta_at(const NodeSequence& seq, int k) const;
    PiecewisePoly Psi_at(const NodeSequence& seq, int k) const;
};

WaveletSystem build_wavelet_system(const NodeSequence& seq, const QuadRat& theta, int s);

}  // namespace quasiwave

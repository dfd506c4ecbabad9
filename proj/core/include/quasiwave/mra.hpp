#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quasiwave/linsolve.hpp"
#include "quasiwave/piecewise.hpp"
#include "quasiwave/tiling.hpp"
#include "quasiwave/wavelet.hpp"

namespace quasiwave {

enum class NumericMode { Exact, Float };

struct BasisFunction {
    enum class Kind { Fine, Coarse, Detail, Boundary };
    Kind kind = Kind::Fine;
    std::string word;
    /// Node index (in the scale-0 sequence) of the left support end.
    int node = 0;
    PiecewisePoly f;
};

std::string basis_kind_name(BasisFunction::Kind k);

/// Coefficients of one split V_j = V_{j-1} + W_{j-1} (+ boundary terms).
template <class T>
struct Split {
    std::vector<T> coarse;
    std::vector<T> detail;
    /// Fine functions kept at the window edges where coarse and detail
    /// functions stick out.  Zero for inputs that vanish near the edges.
    std::vector<T> boundary;
    /// Reciprocal condition estimate of the synthesis matrix (float mode).
    double rcond = 1.0;
};

/// Finite-window two-scale split on the window [lambda_lo, lambda_hi] of
/// theta^(-j) Lambda.  Fine basis: order-s B-splines inside the window;
/// coarse basis: B-splines on theta * (fine nodes); detail basis: zeta_n(theta^j x),
/// n in E.  Every function lies fully inside the window (zero extension).
class Multiresolution {
public:
    /// `seq` is the scale-0 sequence; it must cover the window plus the
    /// support of every wavelet class representative.
    Multiresolution(const NodeSequence& seq, const QuadRat& theta, int s, int lo, int hi, int scale = 0);

    int s() const { return s_; }
    int scale() const { return scale_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const QuadRat& theta() const { return theta_; }
    /// theta^(-j) Lambda
    const NodeSequence& nodes() const { return nodes_; }
    const WaveletSystem& wavelets() const { return system_; }

    const std::vector<BasisFunction>& fine() const { return fine_; }
    const std::vector<BasisFunction>& coarse() const { return coarse_; }
    const std::vector<BasisFunction>& detail() const { return detail_; }
    const std::vector<BasisFunction>& boundary() const { return boundary_; }
    std::size_t dim() const { return fine_.size(); }
    /// Columns: coarse, detail, boundary functions in fine coordinates.
    const QMatrix& synthesis() const { return synthesis_; }

    Split<QuadRat> decompose(const std::vector<QuadRat>& fine_coeffs) const;
    Split<double> decompose(const std::vector<double>& fine_coeffs) const;
    std::vector<QuadRat> reconstruct(const Split<QuadRat>& c) const;
    std::vector<double> reconstruct(const Split<double>& c) const;

    /// sum c_k B_k over the fine basis.
    PiecewisePoly synthesize(const std::vector<QuadRat>& fine_coeffs) const;
    /// Exact L2 projection onto the fine span (Gram solve).
    std::vector<QuadRat> project(const PiecewisePoly& f) const;

    struct SampledProjection {
        std::vector<double> coeffs;
        double rcond = 1.0;
        double residual_rms = 0.0;
    };
    /// Least-squares fit of sampled data by the fine basis.
    SampledProjection project_samples(const std::vector<double>& xs, const std::vector<double>& ys) const;

    /// Fine-basis Gram matrix (exact and rounded).
    const QMatrix& gram() const;
    std::vector<double> gram_double() const;

private:
    void build_synthesis();

    int s_;
    int scale_;
    int lo_;
    int hi_;
    QuadRat theta_;
    NodeSequence nodes_;
    WaveletSystem system_;
    std::vector<BasisFunction> fine_;
    std::vector<BasisFunction> coarse_;
    std::vector<BasisFunction> detail_;
    std::vector<BasisFunction> boundary_;
    QMatrix synthesis_;
    std::optional<ExactLU> lu_;
    mutable QMatrix gram_;
};

struct FrameBounds {
    int window_nodes = 0;
    std::size_t functions = 0;
    double A = 0.0;
    double B = 0.0;
};

/// Extreme eigenvalues of the Gram matrix of the given functions.
FrameBounds gram_extremes(const std::vector<RadicalFunction>& fs);
FrameBounds gram_extremes_normalized(const std::vector<PiecewisePoly>& fs);

/// L2-normalised zeta_k, k in E, with supports inside the node window
/// [-n/2, n - n/2] of `seq`, for each n in `window_nodes`.
std::vector<FrameBounds> wavelet_frame_bounds(const WaveletSystem& sys, const NodeSequence& seq,
                                              const std::vector<int>& window_nodes);

}  // namespace quasiwave

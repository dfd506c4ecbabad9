#pragma once

#include <string>
#include <vector>

#include "quasiwave/piecewise.hpp"
#include "quasiwave/quadfield.hpp"
#include "quasiwave/refine.hpp"
#include "quasiwave/tiling.hpp"

namespace quasiwave {

enum class HaarVariant { Orthonormal, Riesz };

struct HaarEquation {
    std::string label;
    RadicalFunction lhs;
    /// Terms coeff * phi_{L|S}(beta x - translate).
    RefinementTable rhs;
};

struct HaarWavelet {
    std::string name;
    /// Coarse tile the wavelet lives in ('L' or 'S'); placed with its left end at 0.
    char tile = 'L';
    /// Offset of the wavelet inside the tile.
    QuadRat offset;
    RefinementTable terms;
    RadicalFunction function;
};

/// Haar multiresolution on Z_beta: phi_L = 1_[0,1), phi_S = |S|^(-1/2) 1_[0,|S|).
class HaarSystem {
public:
    explicit HaarSystem(const FieldSpec& f);

    const FieldSpec& field() const { return field_; }
    const QuadRat& beta() const { return beta_; }
    const QuadRat& len_L() const { return len_L_; }
    const QuadRat& len_S() const { return len_S_; }
    const QuadRat& len(char tile) const { return tile == 'L' ? len_L_ : len_S_; }

    const RadicalFunction& phi_L() const { return phi_L_; }
    const RadicalFunction& phi_S() const { return phi_S_; }
    const RadicalFunction& phi(char tile) const { return tile == 'L' ? phi_L_ : phi_S_; }
    /// phi_tile(beta x - shift)
    RadicalFunction fine(char tile, const QuadRat& shift) const;
    RadicalFunction evaluate(const RefinementTable& t) const;

    /// The refinement equations of both tiles as printed for the family.
    std::vector<HaarEquation> refinement_equations() const;
    RadicalFunction residual(const HaarEquation& e) const;

    /// Gram-Schmidt in the listed order: Minus {phi_L, phi_L(bx - l), l < a};
    /// Plus {phi_L, phi_L(bx - l), l <= a-2} and {phi_S, phi_L(bx - l), l <= a-3}.
    std::vector<HaarWavelet> orthonormal_wavelets() const;
    /// psi_LL = (b/2)^(1/2) (phi_L(bx) - phi_L(bx - 1)) and psi_LS at each
    /// fine LL / LS pair that lies inside one coarse tile.
    std::vector<HaarWavelet> riesz_wavelets() const;
    /// Mirror images for the negative half-line (psi_SL in place of psi_LS).
    std::vector<HaarWavelet> riesz_wavelets_negative() const;

    /// Squared normaliser of psi_LS as printed, and as recomputed by integration.
    QuadRat riesz_LS_normalizer_printed() const;
    QuadRat riesz_LS_normalizer_recomputed() const;

    /// Fine-tile layout of a coarse tile: letters and left ends (scaled by 1/beta).
    std::string fine_letters(char tile) const;

private:
    FieldSpec field_;
    QuadRat beta_;
    QuadRat len_L_;
    QuadRat len_S_;
    RadicalFunction phi_L_;
    RadicalFunction phi_S_;
};

/// Scale-0 basis of V_1 on the first `tiles` tiles of Z_beta^+: scaling
/// translates on every tile plus the wavelets of each tile.
std::vector<RadicalFunction> haar_basis_window(const HaarSystem& h, HaarVariant variant, int tiles);

/// Left ends of the L tiles and S tiles among the first `tiles` tiles.
std::pair<std::vector<QuadRat>, std::vector<QuadRat>> haar_translation_sets(const FieldSpec& f, int tiles);

}  // namespace quasiwave

#pragma once

// Knot Floer example library: hat-flavored complexes of small knots with their
// involutive conjugation ι_K and strong-inversion action τ_K, whose composite
// ι_K∘τ_K is the involution fed to the spectral sequence. Sectors are decimal
// Alexander gradings.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tate/complex.hpp"

namespace tate::hfk {

struct KnotComplex {
    EquivariantComplex complex;
    std::string knot_name;
    std::string inversion_name;
    /// Half-axis and orientation choice. Metadata only: the supplied maps are
    /// assumed to be adjusted for it already.
    std::string direction_note;

    friend bool operator==(const KnotComplex&, const KnotComplex&) = default;
};

/// Throws ContractError unless the complex validates and every generator has
/// an Alexander grading (so sectors are Alexander gradings).
void require_knot_shape(const KnotComplex& k);

enum class Inversion { Tau, Sigma };

/// Figure-eight knot: generators b, a, x, e, c in Alexander gradings
/// 1, 0, 0, 0, -1 with trivial differential. The two strong inversions give
/// the factor maps τ_K and σ_K.
[[nodiscard]] KnotComplex figure_eight(Inversion inversion);

/// Torus parameters (p, q) or a symmetric Alexander polynomial listed from the
/// top degree down, e.g. {1, -1, 0, 1, 0, -1, 1} for T(3,4).
struct StaircaseSpec {
    int p = 0;
    int q = 0;
    std::vector<int> coefficients;

    static StaircaseSpec torus(int p, int q) { return {p, q, {}}; }
    static StaircaseSpec polynomial(std::vector<int> coefficients) { return {0, 0, std::move(coefficients)}; }
};

/// Symmetrized Alexander polynomial of T(p, q), top degree first.
[[nodiscard]] std::vector<int> torus_alexander_polynomial(int p, int q);

/// Hat complex of an L-space knot: one generator per nonzero coefficient,
/// trivial differential, Maslov gradings from the staircase recursion (top
/// generator in grading 0), and ι_K = τ_K the Alexander-reversing map fixing
/// the middle generator. Generators at Alexander ±j are named xj1 and xj2; the
/// middle one is x0. Throws InputError if the polynomial is not of L-space shape.
[[nodiscard]] KnotComplex staircase(const StaircaseSpec& spec);

/// Thin knot data: HFK-hat in Alexander grading a has dimension |c_a| and
/// sits in Maslov grading a + signature/2. Generators are named x<a>_<k>,
/// k = 1..|c_a| (for example x0_2, x-1_1). ι and τ are supplied by the caller
/// in those names.
struct ThinKnotSpec {
    /// Symmetrized Alexander polynomial, top degree first.
    std::vector<int> coefficients;
    int signature = 0;
    LinearMap iota;
    LinearMap tau;
    std::string knot_name = "thin knot";
    std::string inversion_name = "strong inversion";
};

/// InputError if the polynomial is not symmetric of odd length, the signature
/// is odd, or a coefficient sign disagrees with (-1)^Maslov. ContractError if
/// the supplied maps do not give a valid involution.
[[nodiscard]] KnotComplex thin_knot(const ThinKnotSpec& spec);

/// Equivariant connected sum via the Künneth formula: τ = τ₁⊗τ₂ and
/// ι = ι₁⊗ι₂ + correction, involution ι∘τ. A factor without factor maps is
/// treated as τ = S, ι = 1. The correction must live in one sector and square
/// to zero. ContractError with a witness if the assembled involution fails.
[[nodiscard]] KnotComplex equivariant_sum(const KnotComplex& k1, const KnotComplex& k2,
                                          const std::optional<LinearMap>& iota_correction = std::nullopt);

[[nodiscard]] KnotComplex equivariant_self_sum(const KnotComplex& k,
                                               const std::optional<LinearMap>& iota_correction = std::nullopt);

/// Correction term of ι for T(3,4)#T(3,4): x22*x21 ↦ x31*x32 on top of ι₁⊗ι₂.
[[nodiscard]] LinearMap t34_sum_correction();

/// Registry names, sorted.
[[nodiscard]] std::vector<std::string> builtin_names();

/// "fig8-tau", "fig8-sigma", "t34" or "t34-sum-t34". InputError listing the
/// registry for an unknown name.
[[nodiscard]] KnotComplex builtin(std::string_view name);

}  // namespace tate::hfk

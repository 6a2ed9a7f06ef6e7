#pragma once

// The localization spectral sequence of (C ⊗ F[θ, θ⁻¹], d + (1+S)θ).
//
// Grading convention: θ is tracked as an exponent. The page differential d_r
// has bidegree (Maslov +(r-1), θ +r), so the total degree Maslov - θ drops by
// one. E_1 = H(C, d) and d_1 = (1+S)_*. Because every θ-column is a copy of C,
// each page is described on a single column.
//
// The engine computes the spectral sequence of the supplied chain involution.
// Whether that agrees with a Floer-theoretic localization sequence depends on
// the involution being the right chain-level model, which this code cannot check.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tate/complex.hpp"
#include "tate/gf2.hpp"

namespace tate {

struct PageGroup {
    std::string sector;
    int maslov = 0;
    /// Coset representatives of E_r = Z_r / B_r, as chains of the whole complex.
    std::vector<gf2::Vector> representatives;

    [[nodiscard]] std::size_t dim() const { return representatives.size(); }
    friend bool operator==(const PageGroup&, const PageGroup&) = default;
};

/// d_r from the group at `source_maslov` to the group at `target_maslov`,
/// in the bases of their representatives. Only nonzero maps are recorded.
struct PageDifferential {
    std::string sector;
    int source_maslov = 0;
    int target_maslov = 0;
    int theta_shift = 0;
    gf2::Matrix matrix;

    friend bool operator==(const PageDifferential&, const PageDifferential&) = default;
};

struct Page {
    int r = 1;
    std::vector<PageGroup> groups;
    std::vector<PageDifferential> differentials;

    [[nodiscard]] std::size_t dim(std::string_view sector, int maslov) const;
    [[nodiscard]] std::size_t total(std::string_view sector) const;
    [[nodiscard]] bool differential_is_zero(std::string_view sector) const;
    [[nodiscard]] std::size_t differential_rank(std::string_view sector) const;
    friend bool operator==(const Page&, const Page&) = default;
};

struct DimensionEntry {
    std::string sector;
    int maslov = 0;
    std::size_t dim = 0;

    friend bool operator==(const DimensionEntry&, const DimensionEntry&) = default;
};

struct SectorDimension {
    std::string sector;
    std::size_t dim = 0;

    friend bool operator==(const SectorDimension&, const SectorDimension&) = default;
};

/// Dimensions of H(C_s, d + 1 + S), one entry per sector.
struct OracleReport {
    std::vector<SectorDimension> sectors;

    [[nodiscard]] std::size_t dim(std::string_view sector) const;
    friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

struct SmithEntry {
    std::string sector;
    std::size_t homology_dim = 0;
    std::size_t e_infinity_dim = 0;

    [[nodiscard]] bool holds() const { return homology_dim >= e_infinity_dim; }
    [[nodiscard]] long long margin() const
    {
        return static_cast<long long>(homology_dim) - static_cast<long long>(e_infinity_dim);
    }
    friend bool operator==(const SmithEntry&, const SmithEntry&) = default;
};

struct SmithVerdict {
    std::vector<SmithEntry> sectors;

    [[nodiscard]] bool holds() const;
    [[nodiscard]] const SmithEntry* find(std::string_view sector) const;
    friend bool operator==(const SmithVerdict&, const SmithVerdict&) = default;
};

struct SectorCollapse {
    std::string sector;
    int collapse_page = 1;
    int maslov_span = 0;

    friend bool operator==(const SectorCollapse&, const SectorCollapse&) = default;
};

struct SSReport {
    /// E_1 through the last computed page.
    std::vector<Page> pages;
    /// Least r₀ with d_r = 0 for every r ≥ r₀, over all sectors.
    int collapse_page = 1;
    std::vector<SectorCollapse> sector_collapse;
    /// False when a page limit stopped the computation before E_∞ was reached.
    bool converged = true;
    std::vector<DimensionEntry> e_infinity;
    SmithVerdict smith;
    OracleReport oracle;

    [[nodiscard]] std::size_t e_infinity_dim(std::string_view sector, int maslov) const;
    [[nodiscard]] std::size_t e_infinity_total(std::string_view sector) const;
    [[nodiscard]] int sector_collapse_page(std::string_view sector) const;
    friend bool operator==(const SSReport&, const SSReport&) = default;
};

struct SSOptions {
    /// Stop after this page. Default: Maslov span + 2 in each sector, after
    /// which no differential can be nonzero.
    std::optional<int> max_page;
    /// Compute sectors on separate threads. Results are identical either way.
    bool parallel = false;
};

/// All pages of the spectral sequence. Throws ContractError if `c` does not
/// validate and InternalError if a zig-zag lift fails (impossible for valid input).
[[nodiscard]] SSReport compute_pages(const EquivariantComplex& c, const SSOptions& options = {});

/// dim ker(d+1+S) - dim im(d+1+S) per sector, by direct rank computation.
[[nodiscard]] OracleReport tate_oracle(const EquivariantComplex& c);

/// dim H(C_s, d) ≥ dim E_∞(s) for every sector s.
[[nodiscard]] SmithVerdict smith_check(const EquivariantComplex& c);

struct CollapseVerdict {
    bool holds = false;
    int collapse_page = 1;
    /// Page whose dimensions must equal E_∞ (1 for L-space shape, 2 for thin).
    int expected_page = 1;
    std::vector<SectorDimension> expected_dims;
    std::vector<SectorDimension> e_infinity_dims;
};

/// For complexes whose homology has dimension ≤ 1 in every sector: confirms
/// that every d_r vanishes and E_∞ = E_1 sector-wise. InputError if the shape
/// precondition fails.
[[nodiscard]] CollapseVerdict lspace_collapse_check(const EquivariantComplex& c);

/// For complexes whose homology sits in one Maslov grading per sector:
/// confirms d_r = 0 for r ≥ 2 and E_∞ = E_2. InputError if the precondition fails.
[[nodiscard]] CollapseVerdict thin_collapse_check(const EquivariantComplex& c);

}  // namespace tate

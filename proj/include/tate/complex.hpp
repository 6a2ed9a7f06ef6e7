#pragma once

// Finitely generated graded chain complexes over the two-element field that
// carry a chain involution S.
//
// Generators are graded by a Maslov (homological) degree and partitioned into
// sectors: spin^c labels for 3-manifold inputs, decimal Alexander gradings for
// knot inputs. The engine treats sector labels as opaque strings.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tate/gf2.hpp"

namespace tate {

struct Generator {
    std::string name;
    int maslov = 0;
    std::optional<int> alexander;
    std::string sector;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Name-keyed sparse linear map. Each column lists the target generators of
/// one source generator; repeated targets cancel. Missing columns are zero.
struct LinearMap {
    std::map<std::string, std::vector<std::string>> columns;

    friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

/// Factor maps whose composition iota ∘ tau is the involution.
struct Provenance {
    gf2::Matrix iota;
    gf2::Matrix tau;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Sector ordering: integer labels first, in decreasing numeric order, then
/// everything else lexicographically.
bool sector_less(std::string_view a, std::string_view b);

/// Label used when a generator has neither a sector nor an Alexander grading.
inline constexpr std::string_view default_sector = "default";

class EquivariantComplex {
public:
    EquivariantComplex() = default;

    /// Builds a complex from name-keyed maps. Generators are reordered
    /// canonically by (sector, maslov descending, name). Throws InputError for
    /// empty or duplicate names and for maps naming unknown generators.
    static EquivariantComplex from_maps(std::vector<Generator> generators, const LinearMap& differential,
                                        const LinearMap& involution);

    /// As `from_maps`, with the involution given as the composite iota ∘ tau.
    static EquivariantComplex from_factor_maps(std::vector<Generator> generators,
                                               const LinearMap& differential, const LinearMap& iota,
                                               const LinearMap& tau);

    /// Matrices are indexed by the order of `generators` (column j is the
    /// image of generator j); the result is canonically reordered.
    static EquivariantComplex from_matrices(std::vector<Generator> generators, gf2::Matrix differential,
                                            gf2::Matrix involution,
                                            std::optional<Provenance> provenance = std::nullopt);

    [[nodiscard]] std::size_t size() const { return generators_.size(); }
    [[nodiscard]] bool empty() const { return generators_.empty(); }
    [[nodiscard]] const std::vector<Generator>& generators() const { return generators_; }
    [[nodiscard]] const Generator& generator(std::size_t i) const { return generators_[i]; }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

    [[nodiscard]] const gf2::Matrix& differential() const { return d_; }
    [[nodiscard]] const gf2::Matrix& involution() const { return s_; }
    [[nodiscard]] const std::optional<Provenance>& provenance() const { return provenance_; }

    /// Distinct sector labels in `sector_less` order.
    [[nodiscard]] std::vector<std::string> sectors() const;
    [[nodiscard]] std::vector<std::size_t> sector_indices(std::string_view sector) const;
    /// Distinct Maslov gradings present in a sector, decreasing.
    [[nodiscard]] std::vector<int> maslov_gradings(std::string_view sector) const;
    /// max - min Maslov grading over the sector's generators (0 for an empty sector).
    [[nodiscard]] int maslov_span(std::string_view sector) const;

    /// Restriction to the generators of one sector; provenance is dropped since
    /// the factor maps need not preserve sectors.
    [[nodiscard]] EquivariantComplex restrict_to_sector(std::string_view sector) const;

    [[nodiscard]] LinearMap to_linear_map(const gf2::Matrix& m) const;
    [[nodiscard]] gf2::Matrix to_matrix(const LinearMap& map, std::string_view what) const;

    /// "a+x" rendering of a chain; "0" for zero.
    [[nodiscard]] std::string describe(const gf2::Vector& v) const;
    [[nodiscard]] gf2::Vector parse_chain(const std::vector<std::string>& names, std::string_view what) const;

    friend bool operator==(const EquivariantComplex&, const EquivariantComplex&) = default;

private:
    std::vector<Generator> generators_;
    std::map<std::string, std::size_t, std::less<>> index_;
    gf2::Matrix d_;
    gf2::Matrix s_;
    std::optional<Provenance> provenance_;
};

struct ValidationCheck {
    std::string id;
    std::string description;
    bool passed = true;
    /// Generators at which the check fails.
    std::vector<std::string> witnesses;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool ok() const;
    [[nodiscard]] const ValidationCheck* find(std::string_view id) const;
    [[nodiscard]] std::string summary() const;
};

/// Checks every structural invariant: unique names, Alexander/sector
/// consistency, d² = 0, S² = 1, Sd = dS, d of degree -1 and S of degree 0,
/// sector (and Alexander) preservation by d and S, (1+S)² = 0, and S = ι∘τ
/// when factor maps are present.
[[nodiscard]] ValidationReport validate(const EquivariantComplex& c);

/// Throws ContractError carrying the report summary unless `c` validates.
void require_valid(const EquivariantComplex& c, std::string_view operation);

[[nodiscard]] std::vector<EquivariantComplex> split_by_sector(const EquivariantComplex& c);

struct HomologyGroup {
    std::string sector;
    int maslov = 0;
    /// Representatives as chains of the whole complex.
    std::vector<gf2::Vector> representatives;
    /// Matrix of S_* on this group in the basis of `representatives`.
    gf2::Matrix induced_involution;

    [[nodiscard]] std::size_t dim() const { return representatives.size(); }
};

struct Homology {
    /// One entry per (sector, maslov) carrying generators, in canonical order.
    std::vector<HomologyGroup> groups;

    [[nodiscard]] std::size_t dim(std::string_view sector, int maslov) const;
    [[nodiscard]] std::size_t total(std::string_view sector) const;
    [[nodiscard]] std::size_t total() const;
};

/// Homology of (C, d) per bigrading, with the induced involution.
[[nodiscard]] Homology homology(const EquivariantComplex& c);

/// Involution g⊗h ↦ S₂(h)⊗S₁(g); both factors must have the same generators.
/// Sectors without an Alexander grading are labelled by the unordered pair.
struct SwapForm {};
/// Involution S₁⊗S₂; factor maps, when both factors carry them, tensor likewise.
struct ProductForm {};
using TensorRule = std::variant<SwapForm, ProductForm, LinearMap>;

inline constexpr std::string_view default_tensor_separator = "*";

/// Generators of c1 ⊗ c2 in row-major pair order (index i * c2.size() + j),
/// matching `gf2::kronecker`.
[[nodiscard]] std::vector<Generator> tensor_generators(const EquivariantComplex& c1, const EquivariantComplex& c2,
                                                       std::string_view separator = default_tensor_separator);

/// Tensor product with d = d⊗1 + 1⊗d, Maslov and Alexander gradings added.
/// Generator g⊗h is named g + separator + h. The result is validated and a
/// ContractError is thrown on failure.
[[nodiscard]] EquivariantComplex tensor(const EquivariantComplex& c1, const EquivariantComplex& c2,
                                        const TensorRule& rule,
                                        std::string_view separator = default_tensor_separator);

}  // namespace tate

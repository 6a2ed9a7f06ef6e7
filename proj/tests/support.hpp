#pragma once

// Shared test helpers: naive dense linear algebra on byte matrices (kept apart
// from the bit-packed library code so it can serve as an oracle), random
// equivariant complex generators, and a filtered-complex page oracle.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tate/complex.hpp"
#include "tate/gf2.hpp"

namespace tate::testing {

// ---------------------------------------------------------------------------
// Naive linear algebra

using Dense = std::vector<std::vector<std::uint8_t>>;  // row-major

inline Dense to_dense(const gf2::Matrix& m)
{
    Dense out(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m.get(i, j) ? 1 : 0;
    return out;
}

inline Dense dense_zero(std::size_t rows, std::size_t cols)
{
    return Dense(rows, std::vector<std::uint8_t>(cols, 0));
}

inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t inner, std::size_t cols)
{
    Dense out = dense_zero(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < cols; ++j)
                    out[i][j] ^= b[k][j];
    return out;
}

/// Rank of a list of row vectors by textbook elimination.
inline std::size_t naive_rank(Dense rows)
{
    if (rows.empty())
        return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p][c])
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i][c])
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] ^= rows[rank][j];
        ++rank;
    }
    return rank;
}

/// Kernel of the map whose columns are given (each column of length `rows`),
/// as vectors over the column index set.
inline Dense naive_kernel(const Dense& columns, std::size_t rows)
{
    const std::size_t n = columns.size();
    // Augmented rows [column | unit] reduced on the first part.
    Dense aug(n, std::vector<std::uint8_t>(rows + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < rows; ++i)
            aug[j][i] = columns[j][i];
        aug[j][rows + j] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < rows && rank < n; ++c) {
        std::size_t p = rank;
        while (p < n && !aug[p][c])
            ++p;
        if (p == n)
            continue;
        std::swap(aug[p], aug[rank]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != rank && aug[i][c])
                for (std::size_t j = 0; j < rows + n; ++j)
                    aug[i][j] ^= aug[rank][j];
        ++rank;
    }
    Dense kernel;
    for (std::size_t i = rank; i < n; ++i)
        kernel.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(rows), aug[i].end());
    return kernel;
}

/// Exhaustive rank: log2 of the size of the row span (rows ≤ 16).
inline std::size_t brute_force_rank(const Dense& rows)
{
    if (rows.empty())
        return 0;
    const std::size_t n = rows.size();
    std::vector<std::vector<std::uint8_t>> seen;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::uint8_t> v(rows.front().size(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] ^= rows[i][j];
        seen.push_back(std::move(v));
    }
    std::sort(seen.begin(), seen.end());
    const auto distinct = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    std::size_t r = 0;
    while ((std::size_t{1} << r) < distinct)
        ++r;
    return r;
}

inline gf2::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5)
{
    std::bernoulli_distribution bit(density);
    gf2::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (bit(rng))
                m.set(i, j);
    return m;
}

inline gf2::Vector random_vector(std::mt19937_64& rng, std::size_t n)
{
    std::bernoulli_distribution bit(0.5);
    gf2::Vector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (bit(rng))
            v.set(i);
    return v;
}

// ---------------------------------------------------------------------------
// Random equivariant complexes
//
// A complex is assembled from small blocks with known behaviour, then
// conjugated by a random automorphism preserving sector and Maslov grading.

enum class Block {
    Trivial,       // one generator, S = 1
    FreeOrbit,     // x <-> y, d = 0
    AcyclicPair,   // d x = y, S = 1
    FreeZigzag,    // two acyclic pairs exchanged by S
    OrbitCone,     // x <-> y in grade m+1, d x = d y = z in grade m
    LongZigzag,    // produces a nonzero d_2
    DeepZigzag,    // produces a nonzero d_3
};

struct Builder {
    std::vector<Generator> gens;
    std::vector<std::pair<std::size_t, std::size_t>> d_entries;  // (target, source)
    std::vector<std::pair<std::size_t, std::size_t>> s_entries;
    std::vector<std::size_t> s_fixed;

    std::size_t add(const std::string& sector, int maslov)
    {
        gens.push_back({"g" + std::to_string(gens.size()), maslov, std::nullopt, sector});
        return gens.size() - 1;
    }

    void block(Block kind, const std::string& sector, int m)
    {
        switch (kind) {
        case Block::Trivial:
            s_fixed.push_back(add(sector, m));
            break;
        case Block::FreeOrbit: {
            auto x = add(sector, m);
            auto y = add(sector, m);
            s_entries.push_back({y, x});
            s_entries.push_back({x, y});
            break;
        }
        case Block::AcyclicPair: {
            auto x = add(sector, m + 1);
            auto y = add(sector, m);
            d_entries.push_back({y, x});
            s_fixed.push_back(x);
            s_fixed.push_back(y);
            break;
        }
        case Block::FreeZigzag: {
            auto x1 = add(sector, m + 1);
            auto y1 = add(sector, m);
            auto x2 = add(sector, m + 1);
            auto y2 = add(sector, m);
            d_entries.push_back({y1, x1});
            d_entries.push_back({y2, x2});
            s_entries.push_back({x2, x1});
            s_entries.push_back({x1, x2});
            s_entries.push_back({y2, y1});
            s_entries.push_back({y1, y2});
            break;
        }
        case Block::OrbitCone: {
            auto x = add(sector, m + 1);
            auto y = add(sector, m + 1);
            auto z = add(sector, m);
            d_entries.push_back({z, x});
            d_entries.push_back({z, y});
            s_entries.push_back({y, x});
            s_entries.push_back({x, y});
            s_fixed.push_back(z);
            break;
        }
        case Block::LongZigzag:
            zigzag(sector, m, 2);
            break;
        case Block::DeepZigzag:
            zigzag(sector, m, 3);
            break;
        }
    }

    /// x <-> x' in grade m and a chain y_1, ..., y_{k-1} with d y_1 = x + x',
    /// S y_i = y_i + u_i, u_i = d y_{i+1}, and a final cycle u_{k-1}.
    /// The class of x survives to E_k and d_k hits the final cycle.
    void zigzag(const std::string& sector, int m, int k)
    {
        auto x = add(sector, m);
        auto xp = add(sector, m);
        s_entries.push_back({xp, x});
        s_entries.push_back({x, xp});
        std::size_t below = x;  // d of the next y
        for (int i = 1; i < k; ++i) {
            auto y = add(sector, m + i);
            auto u = add(sector, m + i);
            d_entries.push_back({below, y});
            if (i == 1)
                d_entries.push_back({xp, y});
            s_fixed.push_back(y);
            s_entries.push_back({u, y});
            s_fixed.push_back(u);
            below = u;
        }
    }

    [[nodiscard]] std::pair<gf2::Matrix, gf2::Matrix> matrices() const
    {
        const std::size_t n = gens.size();
        gf2::Matrix d(n, n);
        gf2::Matrix s(n, n);
        for (auto [i, j] : d_entries)
            d.flip(i, j);
        for (auto [i, j] : s_entries)
            s.flip(i, j);
        for (auto i : s_fixed)
            s.flip(i, i);
        return {d, s};
    }
};

inline std::size_t block_size(Block b)
{
    switch (b) {
    case Block::Trivial:
        return 1;
    case Block::FreeOrbit:
    case Block::AcyclicPair:
        return 2;
    case Block::OrbitCone:
        return 3;
    case Block::FreeZigzag:
    case Block::LongZigzag:
        return 4;
    case Block::DeepZigzag:
        return 6;
    }
    return 1;
}

/// Random automorphism preserving sector and Maslov grading: a product of
/// random transvections inside each (sector, maslov) block.
inline gf2::Matrix random_graded_automorphism(std::mt19937_64& rng, const std::vector<Generator>& gens)
{
    const std::size_t n = gens.size();
    auto p = gf2::Matrix::identity(n);
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[{gens[i].sector, gens[i].maslov}].push_back(i);
    for (const auto& [key, idx] : groups) {
        if (idx.size() < 2)
            continue;
        std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
        for (std::size_t t = 0; t < 3 * idx.size(); ++t) {
            const std::size_t a = idx[pick(rng)];
            const std::size_t b = idx[pick(rng)];
            if (a == b)
                continue;
            // Row operation row_a += row_b keeps p invertible.
            for (std::size_t c = 0; c < n; ++c)
                if (p.get(b, c))
                    p.flip(a, c);
        }
    }
    return p;
}

struct RandomOptions {
    std::size_t max_generators = 40;
    std::vector<Block> blocks{Block::Trivial,    Block::FreeOrbit, Block::AcyclicPair,
                              Block::FreeZigzag, Block::OrbitCone, Block::LongZigzag,
                              Block::DeepZigzag};
    /// Put every block of a sector at the same base grading.
    bool single_base_grading = false;
    bool conjugate = true;
    int max_sectors = 4;
    int maslov_range = 4;
};

inline EquivariantComplex random_complex(std::mt19937_64& rng, const RandomOptions& opt = {})
{
    const std::vector<std::string> labels{"1", "0", "-1", "spin_a", "spin_b", "7"};
    std::uniform_int_distribution<int> sector_count(1, opt.max_sectors);
    std::uniform_int_distribution<std::size_t> target_size(0, opt.max_generators);
    std::uniform_int_distribution<std::size_t> block_pick(0, opt.blocks.size() - 1);
    std::uniform_int_distribution<int> grade(-opt.maslov_range, opt.maslov_range);

    const int ns = sector_count(rng);
    std::vector<int> bases;
    for (int i = 0; i < ns; ++i)
        bases.push_back(grade(rng));

    Builder b;
    const std::size_t target = target_size(rng);
    std::uniform_int_distribution<int> sector_pick(0, ns - 1);
    for (int attempt = 0; attempt < 200 && b.gens.size() < target; ++attempt) {
        const Block kind = opt.blocks[block_pick(rng)];
        if (b.gens.size() + block_size(kind) > opt.max_generators)
            continue;
        const int s = sector_pick(rng);
        const int m = opt.single_base_grading ? bases[static_cast<std::size_t>(s)] : grade(rng);
        b.block(kind, labels[static_cast<std::size_t>(s)], m);
    }
    auto [d, s] = b.matrices();
    if (opt.conjugate && !b.gens.empty()) {
        const auto p = random_graded_automorphism(rng, b.gens);
        const auto pinv = *gf2::inverse(p);
        d = p * d * pinv;
        s = p * s * pinv;
    }
    return EquivariantComplex::from_matrices(b.gens, d, s);
}

/// Fixed-point-free involution with d = 0: free orbits only.
inline EquivariantComplex random_free_orbit_complex(std::mt19937_64& rng, std::size_t max_generators = 40)
{
    RandomOptions opt;
    opt.max_generators = max_generators;
    opt.blocks = {Block::FreeOrbit};
    return random_complex(rng, opt);
}

// ---------------------------------------------------------------------------
// Page oracle from the filtered total complex
//
// T = C ⊗ F[θ, θ⁻¹] with D = d + (1+S)θ, filtered by θ-exponent. Then
//   E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_{r-1}^p),
//   Z_r^p = {x ∈ F^p : Dx ∈ F^{p+r}},  B_r^p = F^p ∩ D(F^{p-r}).
// Everything is computed modulo F^{p+r} on columns p-r+1 .. p+r-1 at p = 0,
// one total degree (maslov - θ) at a time.

struct PageOracle {
    const EquivariantComplex& c;
    std::vector<std::size_t> idx;  // generators of the sector
    Dense d;                       // restricted to the sector, row-major
    Dense h;

    PageOracle(const EquivariantComplex& complex, const std::string& sector)
        : c(complex), idx(complex.sector_indices(sector))
    {
        const auto full_d = to_dense(c.differential());
        const auto full_s = to_dense(c.involution());
        const std::size_t n = idx.size();
        d = dense_zero(n, n);
        h = dense_zero(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                d[i][j] = full_d[idx[i]][idx[j]];
                h[i][j] = static_cast<std::uint8_t>(full_s[idx[i]][idx[j]] ^ (i == j ? 1 : 0));
            }
    }

    /// dim E_r at column 0 and Maslov grading m.
    [[nodiscard]] std::size_t dim(int r, int m) const
    {
        const int lo = -r + 1;
        const int hi = r - 1;
        // Basis of the degree piece: (column k, generator i) with maslov(i) = m + k.
        std::vector<std::pair<int, std::size_t>> basis;
        std::map<std::pair<int, std::size_t>, std::size_t> pos;
        for (int k = lo; k <= hi; ++k)
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (c.generator(idx[i]).maslov == m + k) {
                    pos[{k, i}] = basis.size();
                    basis.push_back({k, i});
                }
        // Target basis: degree one lower, columns lo .. hi (higher columns are
        // in F^{r} and dropped).
        std::vector<std::pair<int, std::size_t>> tbasis;
        std::map<std::pair<int, std::size_t>, std::size_t> tpos;
        for (int k = lo; k <= hi; ++k)
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (c.generator(idx[i]).maslov == m - 1 + k) {
                    tpos[{k, i}] = tbasis.size();
                    tbasis.push_back({k, i});
                }
        // Columns of truncated D.
        auto image = [&](std::size_t b) {
            std::vector<std::uint8_t> out(tbasis.size(), 0);
            const auto [k, j] = basis[b];
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (d[i][j])
                    if (auto it = tpos.find({k, i}); it != tpos.end())
                        out[it->second] ^= 1;
                if (h[i][j])
                    if (auto it = tpos.find({k + 1, i}); it != tpos.end())
                        out[it->second] ^= 1;
            }
            return out;
        };

        auto subset = [&](int from) {
            std::vector<std::size_t> s;
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (basis[b].first >= from)
                    s.push_back(b);
            return s;
        };
        auto expand = [&](const std::vector<std::size_t>& dom, const std::vector<std::uint8_t>& coeffs) {
            std::vector<std::uint8_t> v(basis.size(), 0);
            for (std::size_t t = 0; t < dom.size(); ++t)
                v[dom[t]] = coeffs[t];
            return v;
        };

        // Z_r^0: x in columns ≥ 0 with truncated Dx = 0.
        const auto dom_z = subset(0);
        Dense cols_z;
        for (auto b : dom_z)
            cols_z.push_back(image(b));
        Dense z;
        for (const auto& k : naive_kernel(cols_z, tbasis.size()))
            z.push_back(expand(dom_z, k));

        // Z_{r-1}^1: x in columns ≥ 1 with truncated Dx = 0.
        const auto dom_z1 = subset(1);
        Dense cols_z1;
        for (auto b : dom_z1)
            cols_z1.push_back(image(b));
        Dense z1;
        for (const auto& k : naive_kernel(cols_z1, tbasis.size()))
            z1.push_back(expand(dom_z1, k));

        // B_{r-1}^0: D(y) with y in columns ≥ -r+1 and Dy in F^0. The y live
        // one degree higher.
        std::vector<std::pair<int, std::size_t>> ybasis;
        for (int k = lo; k <= hi; ++k)
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (c.generator(idx[i]).maslov == m + 1 + k)
                    ybasis.push_back({k, i});
        auto y_image = [&](std::size_t b) {
            std::vector<std::uint8_t> out(basis.size(), 0);
            const auto [k, j] = ybasis[b];
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (d[i][j])
                    if (auto it = pos.find({k, i}); it != pos.end())
                        out[it->second] ^= 1;
                if (h[i][j])
                    if (auto it = pos.find({k + 1, i}); it != pos.end())
                        out[it->second] ^= 1;
            }
            return out;
        };
        // Restrict to y whose image has no component in columns < 0.
        std::vector<std::size_t> negative_rows;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (basis[b].first < 0)
                negative_rows.push_back(b);
        Dense ycols_low;
        Dense ycols_full;
        for (std::size_t b = 0; b < ybasis.size(); ++b) {
            auto full = y_image(b);
            std::vector<std::uint8_t> low(negative_rows.size(), 0);
            for (std::size_t t = 0; t < negative_rows.size(); ++t)
                low[t] = full[negative_rows[t]];
            ycols_low.push_back(std::move(low));
            ycols_full.push_back(std::move(full));
        }
        Dense bvecs;
        for (const auto& k : naive_kernel(ycols_low, negative_rows.size())) {
            std::vector<std::uint8_t> v(basis.size(), 0);
            for (std::size_t t = 0; t < ybasis.size(); ++t)
                if (k[t])
                    for (std::size_t u = 0; u < basis.size(); ++u)
                        v[u] ^= ycols_full[t][u];
            bvecs.push_back(std::move(v));
        }

        Dense denominator = z1;
        denominator.insert(denominator.end(), bvecs.begin(), bvecs.end());
        const std::size_t dz = naive_rank(z);
        const std::size_t dd = naive_rank(denominator);
        return dz - dd;
    }
};

}  // namespace tate::testing

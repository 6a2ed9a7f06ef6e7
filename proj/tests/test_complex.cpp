#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "tate/complex.hpp"
#include "tate/errors.hpp"
#include "tate/hfk.hpp"

using namespace tate;
using tate::testing::Dense;
using tate::testing::dense_mul;
using tate::testing::random_complex;
using tate::testing::random_graded_automorphism;
using tate::testing::to_dense;

namespace {

// Entrywise reference checker, written against byte matrices.
bool naive_valid(const EquivariantComplex& c)
{
    const std::size_t n = c.size();
    const Dense d = to_dense(c.differential());
    const Dense s = to_dense(c.involution());
    const Dense dd = dense_mul(d, d, n, n);
    const Dense ss = dense_mul(s, s, n, n);
    const Dense sd = dense_mul(s, d, n, n);
    const Dense ds = dense_mul(d, s, n, n);
    const auto& g = c.generators();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (dd[i][j] || ss[i][j] != (i == j) || sd[i][j] != ds[i][j])
                return false;
            if (d[i][j] && (g[i].maslov != g[j].maslov - 1 || g[i].sector != g[j].sector))
                return false;
            if (s[i][j] && (g[i].maslov != g[j].maslov || g[i].sector != g[j].sector))
                return false;
        }
    return true;
}

EquivariantComplex two_sector_swap()
{
    std::vector<Generator> gens{{"x", 0, std::nullopt, "p"}, {"y", 0, std::nullopt, "q"}};
    return EquivariantComplex::from_maps(gens, {}, LinearMap{{{"x", {"y"}}, {"y", {"x"}}}});
}

}  // namespace

TEST_CASE("figure-eight validates")
{
    for (auto inv : {hfk::Inversion::Tau, hfk::Inversion::Sigma}) {
        const auto report = validate(hfk::figure_eight(inv).complex);
        CHECK(report.ok());
        CHECK(report.find("provenance") != nullptr);
    }
}

TEST_CASE("sector violation names the generator")
{
    const auto report = validate(two_sector_swap());
    CHECK_FALSE(report.ok());
    const auto* check = report.find("s_sector");
    REQUIRE(check != nullptr);
    CHECK_FALSE(check->passed);
    CHECK(std::find(check->witnesses.begin(), check->witnesses.end(), "x") != check->witnesses.end());
    CHECK(report.summary().find("FAIL  s_sector") != std::string::npos);
}

TEST_CASE("d squared violation")
{
    std::vector<Generator> gens{{"x", 2, std::nullopt, ""}, {"y", 1, std::nullopt, ""}, {"z", 0, std::nullopt, ""}};
    const auto c = EquivariantComplex::from_maps(gens, LinearMap{{{"x", {"y"}}, {"y", {"z"}}}},
                                                 LinearMap{{{"x", {"x"}}, {"y", {"y"}}, {"z", {"z"}}}});
    const auto report = validate(c);
    const auto* check = report.find("d_squared");
    REQUIRE(check != nullptr);
    CHECK_FALSE(check->passed);
    CHECK(check->witnesses == std::vector<std::string>{"x"});
    CHECK(c.generator(0).sector == "default");
}

TEST_CASE("construction errors")
{
    std::vector<Generator> dup{{"x", 0, std::nullopt, ""}, {"x", 0, std::nullopt, ""}};
    CHECK_THROWS_AS((void)EquivariantComplex::from_maps(dup, {}, {}), InputError);
    std::vector<Generator> empty_name{{"", 0, std::nullopt, ""}};
    CHECK_THROWS_AS((void)EquivariantComplex::from_maps(empty_name, {}, {}), InputError);
    std::vector<Generator> one{{"x", 0, std::nullopt, ""}};
    CHECK_THROWS_AS((void)EquivariantComplex::from_maps(one, {}, LinearMap{{{"x", {"nope"}}}}), InputError);
    CHECK_THROWS_AS(require_valid(two_sector_swap(), "test"), ContractError);
}

TEST_CASE("alexander grading fills the sector")
{
    std::vector<Generator> gens{{"x", 0, -2, ""}};
    const auto c = EquivariantComplex::from_maps(gens, {}, LinearMap{{{"x", {"x"}}}});
    CHECK(c.generator(0).sector == "-2");
    std::vector<Generator> wrong{{"x", 0, -2, "5"}};
    const auto bad = EquivariantComplex::from_maps(wrong, {}, LinearMap{{{"x", {"x"}}}});
    CHECK_FALSE(validate(bad).find("alexander_sector")->passed);
}

TEST_CASE("empty complex is valid")
{
    const auto c = EquivariantComplex::from_maps({}, {}, {});
    CHECK(validate(c).ok());
    CHECK(c.sectors().empty());
    CHECK(split_by_sector(c).empty());
    CHECK(homology(c).total() == 0);
}

TEST_CASE("canonical order")
{
    CHECK(sector_less("10", "9"));
    CHECK(sector_less("-1", "-2"));
    CHECK(sector_less("0", "alpha"));
    CHECK(sector_less("alpha", "beta"));
    CHECK_FALSE(sector_less("0", "0"));
    const auto c = hfk::figure_eight(hfk::Inversion::Tau).complex;
    std::vector<std::string> names;
    for (const auto& g : c.generators())
        names.push_back(g.name);
    CHECK(names == std::vector<std::string>{"b", "a", "e", "x", "c"});
}

TEST_CASE("validate agrees with the reference checker on random complexes and mutants")
{
    std::mt19937_64 rng(424242);
    int rejected = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = random_complex(rng, {.max_generators = 20});
        CAPTURE(trial);
        REQUIRE(validate(c).ok());
        REQUIRE(naive_valid(c));
        if (c.size() == 0)
            continue;
        // Single-entry mutant of d or S.
        std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
        auto d = c.differential();
        auto s = c.involution();
        (trial % 2 ? d : s).flip(pick(rng), pick(rng));
        const auto mutant = EquivariantComplex::from_matrices(c.generators(), d, s);
        const bool ok = validate(mutant).ok();
        CHECK(ok == naive_valid(mutant));
        rejected += ok ? 0 : 1;
    }
    CHECK(rejected > 200);
}

TEST_CASE("split by sector and reassembly")
{
    const auto fig8 = hfk::figure_eight(hfk::Inversion::Tau).complex;
    const auto parts = split_by_sector(fig8);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].sectors() == std::vector<std::string>{"1"});
    CHECK(parts[1].sectors() == std::vector<std::string>{"0"});
    CHECK(parts[2].sectors() == std::vector<std::string>{"-1"});
    CHECK(parts[0].size() == 1);
    CHECK(parts[1].size() == 3);
    CHECK(parts[2].size() == 1);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_complex(rng);
        const auto pieces = split_by_sector(c);
        if (pieces.size() == 1) {
            CHECK(pieces[0].generators() == c.generators());
            CHECK(pieces[0].differential() == c.differential());
        }
        // Block-diagonal reassembly in reverse order, then canonical reorder.
        std::vector<Generator> gens;
        std::vector<std::pair<std::size_t, const EquivariantComplex*>> offsets;
        for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
            offsets.push_back({gens.size(), &*it});
            gens.insert(gens.end(), it->generators().begin(), it->generators().end());
        }
        gf2::Matrix d(gens.size(), gens.size());
        gf2::Matrix s(gens.size(), gens.size());
        for (auto [off, p] : offsets)
            for (std::size_t i = 0; i < p->size(); ++i)
                for (std::size_t j = 0; j < p->size(); ++j) {
                    d.set(off + i, off + j, p->differential().get(i, j));
                    s.set(off + i, off + j, p->involution().get(i, j));
                }
        const auto back = EquivariantComplex::from_matrices(gens, d, s);
        CHECK(back == c);
    }
}

TEST_CASE("homology examples")
{
    std::vector<Generator> gens{{"x", 1, std::nullopt, ""}, {"y", 0, std::nullopt, ""}};
    const LinearMap id{{{"x", {"x"}}, {"y", {"y"}}}};
    const auto acyclic = EquivariantComplex::from_maps(gens, LinearMap{{{"x", {"y"}}}}, id);
    CHECK(homology(acyclic).total() == 0);

    const auto fig8 = hfk::figure_eight(hfk::Inversion::Tau).complex;
    const auto h = homology(fig8);
    CHECK(h.total("1") == 1);
    CHECK(h.total("0") == 3);
    CHECK(h.total("-1") == 1);
    // d = 0: S_* is S itself on the sector.
    for (const auto& g : h.groups) {
        const auto idx = fig8.sector_indices(g.sector);
        CHECK(g.induced_involution == fig8.involution().restrict(idx, idx));
    }
}

TEST_CASE("homology is invariant under change of basis")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_complex(rng, {.conjugate = false});
        const auto p = random_graded_automorphism(rng, c.generators());
        const auto pinv = *gf2::inverse(p);
        // Also rename generators so the canonical order is permuted.
        auto gens = c.generators();
        for (auto& g : gens)
            g.name = "h" + std::to_string((std::hash<std::string>{}(g.name) + static_cast<std::size_t>(trial)) % 100003) + g.name;
        const auto moved = EquivariantComplex::from_matrices(gens, p * c.differential() * pinv,
                                                             p * c.involution() * pinv);
        REQUIRE(validate(moved).ok());
        const auto h1 = homology(c);
        const auto h2 = homology(moved);
        for (const auto& s : c.sectors())
            for (int m : c.maslov_gradings(s))
                CHECK(h1.dim(s, m) == h2.dim(s, m));
    }
}

TEST_CASE("homology representatives are cycles and independent")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_complex(rng);
        std::size_t total = 0;
        for (const auto& g : homology(c).groups) {
            for (const auto& v : g.representatives)
                CHECK((c.differential() * v).is_zero());
            CHECK(g.induced_involution.rows() == g.dim());
            total += g.dim();
        }
        // Euler characteristic check against the chain level.
        long long chi_chain = 0;
        long long chi_h = 0;
        for (const auto& gen : c.generators())
            chi_chain += gen.maslov % 2 == 0 ? 1 : -1;
        for (const auto& g : homology(c).groups)
            chi_h += (g.maslov % 2 == 0 ? 1 : -1) * static_cast<long long>(g.dim());
        CHECK(chi_chain == chi_h);
        CHECK(total == homology(c).total());
    }
}

TEST_CASE("tensor products")
{
    std::vector<Generator> one{{"u", 0, 0, ""}};
    const auto unit = EquivariantComplex::from_maps(one, {}, LinearMap{{{"u", {"u"}}}});
    const auto swapped = tensor(unit, unit, SwapForm{});
    CHECK(swapped.size() == 1);
    CHECK(swapped.generator(0).name == "u*u");
    CHECK(validate(swapped).ok());

    const auto fig8 = hfk::figure_eight(hfk::Inversion::Tau).complex;
    const auto prod = tensor(fig8, unit, ProductForm{});
    CHECK(prod.size() == fig8.size());
    CHECK(prod.differential() == fig8.differential());
    CHECK(prod.involution() == fig8.involution());

    const auto t34 = hfk::staircase(hfk::StaircaseSpec::torus(3, 4)).complex;
    const auto sq = tensor(t34, t34, SwapForm{});
    std::vector<std::string> expected;
    for (int a = 6; a >= -6; --a)
        if (!sq.sector_indices(std::to_string(a)).empty())
            expected.push_back(std::to_string(a));
    CHECK(sq.sectors() == expected);
    CHECK(sq.sectors().front() == "6");
    CHECK(sq.sectors().back() == "-6");
    CHECK(sq.sector_indices("0").size() == 5);
    CHECK(sq.size() == 25);
    // The swap form squares to the identity.
    CHECK(sq.involution() * sq.involution() == gf2::Matrix::identity(25));

    // An explicit involution that breaks sectors is rejected.
    std::vector<Generator> two{{"p", 0, std::nullopt, "p"}, {"q", 0, std::nullopt, "q"}};
    const auto pq = EquivariantComplex::from_maps(two, {}, LinearMap{{{"p", {"p"}}, {"q", {"q"}}}});
    LinearMap cross{{{"p*p", {"q*q"}}, {"q*q", {"p*p"}}, {"p*q", {"p*q"}}, {"q*p", {"q*p"}}}};
    CHECK_THROWS_AS((void)tensor(pq, pq, cross), ContractError);
    CHECK_THROWS_AS((void)tensor(fig8, unit, SwapForm{}), ContractError);
}

TEST_CASE("tensor of random validated complexes validates")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_complex(rng, {.max_generators = 6});
        const auto b = random_complex(rng, {.max_generators = 6});
        const auto t = tensor(a, b, ProductForm{});
        CHECK(t.size() == a.size() * b.size());
        CHECK(validate(t).ok());
        const auto sw = tensor(a, a, SwapForm{});
        CHECK(validate(sw).ok());
    }
}

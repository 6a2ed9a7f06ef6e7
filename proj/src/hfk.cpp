#include "tate/hfk.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "tate/errors.hpp"

namespace tate::hfk {

namespace {

Generator knot_generator(std::string name, int maslov, int alexander)
{
    return {std::move(name), maslov, alexander, std::to_string(alexander)};
}

std::string staircase_name(int alexander)
{
    if (alexander == 0)
        return "x0";
    return "x" + std::to_string(std::abs(alexander)) + (alexander > 0 ? "1" : "2");
}

// Coefficients of a polynomial with the lowest degree first.
using Poly = std::vector<long long>;

Poly multiply(const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// Exact division by a monic polynomial; throws if the remainder is nonzero.
Poly divide_exact(Poly num, const Poly& den)
{
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size())
        throw InternalError("polynomial division: degree too small");
    Poly quot(num.size() - dn, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        const long long c = num[k + dn];
        quot[k] = c;
        for (std::size_t i = 0; i <= dn; ++i)
            num[k + i] -= c * den[i];
    }
    if (std::any_of(num.begin(), num.end(), [](long long c) { return c != 0; }))
        throw InternalError("polynomial division left a remainder");
    return quot;
}

Poly t_power_minus_one(int n)
{
    Poly p(static_cast<std::size_t>(n) + 1, 0);
    p.front() = -1;
    p.back() = 1;
    return p;
}

std::string describe_coefficients(const std::vector<int>& c)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i)
        os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
}

}  // namespace

void require_knot_shape(const KnotComplex& k)
{
    require_valid(k.complex, "knot complex");
    for (const auto& g : k.complex.generators())
        if (!g.alexander)
            throw ContractError("knot complex generator '" + g.name + "' has no Alexander grading");
}

// ---------------------------------------------------------------------------

KnotComplex figure_eight(Inversion inversion)
{
    // Thin with signature 0, so Maslov equals Alexander.
    std::vector<Generator> gens{
        knot_generator("b", 1, 1), knot_generator("a", 0, 0), knot_generator("x", 0, 0),
        knot_generator("e", 0, 0), knot_generator("c", -1, -1),
    };
    const LinearMap iota{{{"b", {"c"}}, {"c", {"b"}}, {"a", {"a", "x"}}, {"x", {"x", "e"}}, {"e", {"e"}}}};
    const LinearMap tau{{{"b", {"c"}}, {"c", {"b"}}, {"a", {"a", "x"}}, {"x", {"x"}}, {"e", {"e"}}}};
    const LinearMap sigma{{{"b", {"c"}}, {"c", {"b"}}, {"a", {"a"}}, {"x", {"x", "e"}}, {"e", {"e"}}}};

    KnotComplex k;
    k.complex = EquivariantComplex::from_factor_maps(std::move(gens), LinearMap{}, iota,
                                                     inversion == Inversion::Tau ? tau : sigma);
    k.knot_name = "4_1";
    k.inversion_name = inversion == Inversion::Tau ? "tau" : "sigma";
    k.direction_note = "either direction: twisting by the basepoint-moving involution does not change the chain homotopy class of the pair";
    require_knot_shape(k);
    return k;
}

std::vector<int> torus_alexander_polynomial(int p, int q)
{
    if (p <= 0 || q <= 0 || std::gcd(p, q) != 1)
        throw InputError("torus knot parameters must be coprime positive integers, got (" + std::to_string(p) +
                         ", " + std::to_string(q) + ")");
    // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), degree (p-1)(q-1).
    const Poly num = multiply(t_power_minus_one(p * q), t_power_minus_one(1));
    const Poly den = multiply(t_power_minus_one(p), t_power_minus_one(q));
    // Both leading coefficients are 1, so exact division by a monic polynomial works.
    const Poly quot = divide_exact(num, den);
    std::vector<int> out(quot.rbegin(), quot.rend());
    return out;
}

KnotComplex staircase(const StaircaseSpec& spec)
{
    const bool torus = spec.coefficients.empty();
    const std::vector<int> coeffs = torus ? torus_alexander_polynomial(spec.p, spec.q) : spec.coefficients;

    const auto reject = [&](const std::string& why) {
        return InputError("not an L-space knot polynomial " + describe_coefficients(coeffs) + ": " + why);
    };
    if (coeffs.size() % 2 == 0)
        throw reject("expected an odd number of coefficients (degrees g down to -g)");
    if (coeffs.front() != 1)
        throw reject("leading coefficient must be 1");
    if (!std::equal(coeffs.begin(), coeffs.end(), coeffs.rbegin()))
        throw reject("polynomial is not symmetric");

    const int genus = static_cast<int>(coeffs.size() / 2);
    std::vector<int> exponents;
    int expected_sign = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0)
            continue;
        if (coeffs[i] != expected_sign)
            throw reject("nonzero coefficients must be ±1 with alternating signs");
        exponents.push_back(genus - static_cast<int>(i));
        expected_sign = -expected_sign;
    }

    // Staircase recursion: horizontal and vertical steps alternate, so the
    // Maslov grading drops by 1 after an odd step and by 2·(step length) - 1
    // after an even one.
    std::vector<Generator> gens;
    LinearMap reversal;
    int maslov = 0;
    for (std::size_t k = 0; k < exponents.size(); ++k) {
        if (k > 0)
            maslov = k % 2 == 1 ? maslov - 1 : maslov - 2 * (exponents[k - 1] - exponents[k]) + 1;
        gens.push_back(knot_generator(staircase_name(exponents[k]), maslov, exponents[k]));
        reversal.columns[staircase_name(exponents[k])] = {staircase_name(-exponents[k])};
    }

    KnotComplex k;
    k.complex = EquivariantComplex::from_factor_maps(std::move(gens), LinearMap{}, reversal, reversal);
    if (torus) {
        k.knot_name = "T(" + std::to_string(spec.p) + "," + std::to_string(spec.q) + ")";
        k.inversion_name = "unique strong inversion";
    }
    else {
        k.knot_name = "L-space knot " + describe_coefficients(coeffs);
        k.inversion_name = "strong inversion";
    }
    k.direction_note = "iota_K = tau_K is the unique Alexander-reversing chain isomorphism; direction immaterial";
    require_knot_shape(k);
    return k;
}

KnotComplex thin_knot(const ThinKnotSpec& spec)
{
    const auto& c = spec.coefficients;
    if (c.size() % 2 == 0 || !std::equal(c.begin(), c.end(), c.rbegin()))
        throw InputError("thin knot polynomial " + describe_coefficients(c) +
                         " must be symmetric with an odd number of coefficients");
    if (spec.signature % 2 != 0)
        throw InputError("knot signature must be even, got " + std::to_string(spec.signature));
    const int genus = static_cast<int>(c.size() / 2);
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int a = genus - static_cast<int>(i);
        const int maslov = a + spec.signature / 2;
        if (c[i] != 0 && (c[i] > 0) != (maslov % 2 == 0))
            throw InputError("coefficient " + std::to_string(c[i]) + " at Alexander grading " + std::to_string(a) +
                             " has the wrong sign for a thin knot of signature " + std::to_string(spec.signature));
        for (int k = 1; k <= std::abs(c[i]); ++k)
            gens.push_back(knot_generator("x" + std::to_string(a) + "_" + std::to_string(k), maslov, a));
    }
    KnotComplex k;
    k.complex = EquivariantComplex::from_factor_maps(std::move(gens), LinearMap{}, spec.iota, spec.tau);
    k.knot_name = spec.knot_name;
    k.inversion_name = spec.inversion_name;
    k.direction_note = "maps supplied by the caller for the chosen direction";
    require_knot_shape(k);
    return k;
}

KnotComplex equivariant_sum(const KnotComplex& k1, const KnotComplex& k2, const std::optional<LinearMap>& iota_correction)
{
    require_knot_shape(k1);
    require_knot_shape(k2);
    const auto& c1 = k1.complex;
    const auto& c2 = k2.complex;

    auto factor_maps = [](const EquivariantComplex& c) {
        if (c.provenance())
            return *c.provenance();
        return Provenance{gf2::Matrix::identity(c.size()), c.involution()};
    };
    const auto f1 = factor_maps(c1);
    const auto f2 = factor_maps(c2);

    auto gens = tensor_generators(c1, c2);
    const std::size_t n = gens.size();
    std::map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        if (!index.emplace(gens[i].name, i).second)
            throw InputError("connected sum generator name collision at '" + gens[i].name + "'");

    gf2::Matrix correction(n, n);
    if (iota_correction) {
        std::set<std::string> sectors;
        for (const auto& [src, targets] : iota_correction->columns) {
            auto j = index.find(src);
            if (j == index.end())
                throw InputError("iota correction: unknown source generator '" + src + "'");
            sectors.insert(gens[j->second].sector);
            for (const auto& t : targets) {
                auto i = index.find(t);
                if (i == index.end())
                    throw InputError("iota correction: unknown generator '" + t + "'");
                sectors.insert(gens[i->second].sector);
                correction.flip(i->second, j->second);
            }
        }
        if (sectors.size() > 1)
            throw ContractError("iota correction must be supported in a single Alexander grading");
        if (!(correction * correction).is_zero())
            throw ContractError("iota correction must square to zero");
    }

    const auto id1 = gf2::Matrix::identity(c1.size());
    const auto id2 = gf2::Matrix::identity(c2.size());
    auto d = gf2::kronecker(c1.differential(), id2) + gf2::kronecker(id1, c2.differential());
    auto tau = gf2::kronecker(f1.tau, f2.tau);
    auto iota = gf2::kronecker(f1.iota, f2.iota) + correction;
    auto s = iota * tau;

    KnotComplex out;
    out.complex = EquivariantComplex::from_matrices(std::move(gens), std::move(d), std::move(s),
                                                    Provenance{std::move(iota), std::move(tau)});
    out.knot_name = k1.knot_name + "#" + k2.knot_name;
    out.inversion_name = k1.inversion_name + "#" + k2.inversion_name;
    out.direction_note = "equivariant connected sum of directed knots";
    const auto report = validate(out.complex);
    if (!report.ok())
        throw ContractError("assembled connected-sum involution is invalid:\n" + report.summary());
    return out;
}

KnotComplex equivariant_self_sum(const KnotComplex& k, const std::optional<LinearMap>& iota_correction)
{
    return equivariant_sum(k, k, iota_correction);
}

LinearMap t34_sum_correction()
{
    return LinearMap{{{"x22*x21", {"x31*x32"}}}};
}

std::vector<std::string> builtin_names()
{
    return {"fig8-sigma", "fig8-tau", "t34", "t34-sum-t34"};
}

KnotComplex builtin(std::string_view name)
{
    if (name == "fig8-tau")
        return figure_eight(Inversion::Tau);
    if (name == "fig8-sigma")
        return figure_eight(Inversion::Sigma);
    if (name == "t34")
        return staircase(StaircaseSpec::torus(3, 4));
    if (name == "t34-sum-t34")
        return equivariant_self_sum(staircase(StaircaseSpec::torus(3, 4)), t34_sum_correction());

    std::string msg = "unknown builtin '" + std::string(name) + "'; available:";
    for (const auto& n : builtin_names())
        msg += " " + n;
    throw InputError(msg);
}

}  // namespace tate::hfk

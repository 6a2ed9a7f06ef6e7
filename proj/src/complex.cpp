#include "tate/complex.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "tate/errors.hpp"

namespace tate {

namespace {

std::optional<long long> parse_integer(std::string_view s)
{
    long long value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+')
        return std::nullopt;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || s.empty())
        return std::nullopt;
    return value;
}

bool generator_less(const Generator& a, const Generator& b)
{
    if (a.sector != b.sector)
        return sector_less(a.sector, b.sector);
    if (a.maslov != b.maslov)
        return a.maslov > b.maslov;
    return a.name < b.name;
}

void fill_sector(Generator& g)
{
    if (!g.sector.empty())
        return;
    g.sector = g.alexander ? std::to_string(*g.alexander) : std::string(default_sector);
}

gf2::Matrix permute(const gf2::Matrix& m, const std::vector<std::size_t>& order)
{
    // order[new] = old
    return m.restrict(order, order);
}

std::vector<std::string> column_witnesses(const gf2::Matrix& m, const std::vector<Generator>& gens)
{
    std::vector<std::string> out;
    std::vector<bool> bad(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c : m.row(r).support())
            bad[c] = true;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (bad[c])
            out.push_back(gens[c].name);
    return out;
}

}  // namespace

bool sector_less(std::string_view a, std::string_view b)
{
    const auto ia = parse_integer(a);
    const auto ib = parse_integer(b);
    if (ia && ib)
        return *ia > *ib;
    if (ia.has_value() != ib.has_value())
        return ia.has_value();
    return a < b;
}

// ---------------------------------------------------------------------------
// EquivariantComplex

EquivariantComplex EquivariantComplex::from_matrices(std::vector<Generator> generators, gf2::Matrix differential,
                                                     gf2::Matrix involution, std::optional<Provenance> provenance)
{
    const std::size_t n = generators.size();
    auto check_shape = [n](const gf2::Matrix& m, const char* what) {
        if (m.rows() != n || m.cols() != n)
            throw InputError(std::string(what) + " matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" +
                             std::to_string(n));
    };
    if (n == 0) {
        differential = gf2::Matrix(0, 0);
        involution = gf2::Matrix(0, 0);
    }
    check_shape(differential, "differential");
    check_shape(involution, "involution");
    if (provenance) {
        if (n == 0)
            provenance = Provenance{gf2::Matrix(0, 0), gf2::Matrix(0, 0)};
        check_shape(provenance->iota, "iota");
        check_shape(provenance->tau, "tau");
    }

    for (auto& g : generators) {
        if (g.name.empty())
            throw InputError("generator with empty name");
        fill_sector(g);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return generator_less(generators[a], generators[b]); });

    EquivariantComplex c;
    c.generators_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.generators_.push_back(generators[order[i]]);
        if (!c.index_.emplace(c.generators_.back().name, i).second)
            throw InputError("duplicate generator name '" + c.generators_.back().name + "'");
    }
    c.d_ = permute(differential, order);
    c.s_ = permute(involution, order);
    if (provenance)
        c.provenance_ = Provenance{permute(provenance->iota, order), permute(provenance->tau, order)};
    return c;
}

namespace {

gf2::Matrix matrix_by_names(const std::vector<Generator>& gens, const LinearMap& map, std::string_view what)
{
    std::map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < gens.size(); ++i)
        index.emplace(gens[i].name, i);
    gf2::Matrix m(gens.size(), gens.size());
    for (const auto& [src, targets] : map.columns) {
        auto s = index.find(src);
        if (s == index.end())
            throw InputError(std::string(what) + ": unknown source generator '" + src + "'");
        for (const auto& tgt : targets) {
            auto t = index.find(tgt);
            if (t == index.end())
                throw InputError(std::string(what) + ": column '" + src + "' names unknown generator '" + tgt +
                                 "'");
            m.flip(t->second, s->second);
        }
    }
    return m;
}

}  // namespace

EquivariantComplex EquivariantComplex::from_maps(std::vector<Generator> generators, const LinearMap& differential,
                                                 const LinearMap& involution)
{
    auto d = matrix_by_names(generators, differential, "differential");
    auto s = matrix_by_names(generators, involution, "involution");
    return from_matrices(std::move(generators), std::move(d), std::move(s));
}

EquivariantComplex EquivariantComplex::from_factor_maps(std::vector<Generator> generators,
                                                        const LinearMap& differential, const LinearMap& iota,
                                                        const LinearMap& tau)
{
    auto d = matrix_by_names(generators, differential, "differential");
    auto i = matrix_by_names(generators, iota, "iota");
    auto t = matrix_by_names(generators, tau, "tau");
    auto s = i * t;
    return from_matrices(std::move(generators), std::move(d), std::move(s), Provenance{std::move(i), std::move(t)});
}

std::optional<std::size_t> EquivariantComplex::index_of(std::string_view name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> EquivariantComplex::sectors() const
{
    std::vector<std::string> out;
    for (const auto& g : generators_)
        if (out.empty() || out.back() != g.sector)
            out.push_back(g.sector);
    return out;
}

std::vector<std::size_t> EquivariantComplex::sector_indices(std::string_view sector) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].sector == sector)
            out.push_back(i);
    return out;
}

std::vector<int> EquivariantComplex::maslov_gradings(std::string_view sector) const
{
    std::vector<int> out;
    for (const auto& g : generators_)
        if (g.sector == sector && (out.empty() || out.back() != g.maslov))
            out.push_back(g.maslov);
    return out;
}

int EquivariantComplex::maslov_span(std::string_view sector) const
{
    const auto grades = maslov_gradings(sector);
    return grades.empty() ? 0 : grades.front() - grades.back();
}

EquivariantComplex EquivariantComplex::restrict_to_sector(std::string_view sector) const
{
    const auto idx = sector_indices(sector);
    std::vector<Generator> gens;
    gens.reserve(idx.size());
    for (std::size_t i : idx)
        gens.push_back(generators_[i]);
    return from_matrices(std::move(gens), d_.restrict(idx, idx), s_.restrict(idx, idx));
}

LinearMap EquivariantComplex::to_linear_map(const gf2::Matrix& m) const
{
    LinearMap out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto col = m.column(j);
        if (col.is_zero())
            continue;
        auto& targets = out.columns[generators_[j].name];
        for (std::size_t i : col.support())
            targets.push_back(generators_[i].name);
    }
    return out;
}

gf2::Matrix EquivariantComplex::to_matrix(const LinearMap& map, std::string_view what) const
{
    return matrix_by_names(generators_, map, what);
}

std::string EquivariantComplex::describe(const gf2::Vector& v) const
{
    std::string out;
    for (std::size_t i : v.support()) {
        if (!out.empty())
            out += '+';
        out += generators_[i].name;
    }
    return out.empty() ? "0" : out;
}

gf2::Vector EquivariantComplex::parse_chain(const std::vector<std::string>& names, std::string_view what) const
{
    gf2::Vector v(size());
    for (const auto& n : names) {
        auto i = index_of(n);
        if (!i)
            throw InputError(std::string(what) + ": unknown generator '" + n + "'");
        v.flip(*i);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view id) const
{
    for (const auto& c : checks)
        if (c.id == id)
            return &c;
    return nullptr;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "pass  " : "FAIL  ") << c.id << ": " << c.description;
        if (!c.passed) {
            os << " [at";
            for (const auto& w : c.witnesses)
                os << ' ' << w;
            os << ']';
        }
        os << '\n';
    }
    return os.str();
}

ValidationReport validate(const EquivariantComplex& c)
{
    const auto& gens = c.generators();
    const std::size_t n = c.size();
    const auto& d = c.differential();
    const auto& s = c.involution();
    const auto id = gf2::Matrix::identity(n);

    ValidationReport report;
    auto add = [&](std::string check_id, std::string description, std::vector<std::string> witnesses) {
        const bool passed = witnesses.empty();
        report.checks.push_back({std::move(check_id), std::move(description), passed, std::move(witnesses)});
    };

    {
        std::vector<std::string> bad;
        std::set<std::string_view> seen;
        for (const auto& g : gens)
            if (g.name.empty() || !seen.insert(g.name).second)
                bad.push_back(g.name);
        add("names", "generator names are nonempty and unique", std::move(bad));
    }
    {
        std::vector<std::string> bad;
        for (const auto& g : gens)
            if (g.alexander && g.sector != std::to_string(*g.alexander))
                bad.push_back(g.name);
        add("alexander_sector", "sector equals the decimal Alexander grading", std::move(bad));
    }

    add("d_squared", "d∘d = 0", column_witnesses(d * d, gens));
    add("s_involution", "S∘S = 1", column_witnesses(s * s + id, gens));
    add("s_commutes_d", "S∘d = d∘S", column_witnesses(s * d + d * s, gens));

    // Degree and sector conditions are checked entrywise on the matrices.
    auto entrywise = [&](const gf2::Matrix& m, auto&& ok) {
        std::vector<std::string> bad;
        for (std::size_t j = 0; j < n; ++j) {
            const auto col = m.column(j);
            for (std::size_t i : col.support())
                if (!ok(gens[i], gens[j])) {
                    bad.push_back(gens[j].name);
                    break;
                }
        }
        return bad;
    };
    add("d_degree", "d lowers the Maslov grading by exactly 1",
        entrywise(d, [](const Generator& tgt, const Generator& src) { return tgt.maslov == src.maslov - 1; }));
    add("s_degree", "S preserves the Maslov grading",
        entrywise(s, [](const Generator& tgt, const Generator& src) { return tgt.maslov == src.maslov; }));
    add("d_sector", "d preserves sectors",
        entrywise(d, [](const Generator& tgt, const Generator& src) { return tgt.sector == src.sector; }));
    add("s_sector", "S preserves sectors",
        entrywise(s, [](const Generator& tgt, const Generator& src) { return tgt.sector == src.sector; }));
    auto same_alexander = [](const Generator& tgt, const Generator& src) {
        return !tgt.alexander || !src.alexander || *tgt.alexander == *src.alexander;
    };
    add("d_alexander", "d preserves Alexander gradings", entrywise(d, same_alexander));
    add("s_alexander", "S preserves Alexander gradings", entrywise(s, same_alexander));

    const auto h = s + id;
    add("one_plus_s_squared", "(1+S)∘(1+S) = 0", column_witnesses(h * h, gens));

    if (c.provenance())
        add("provenance", "S = ι∘τ", column_witnesses(c.provenance()->iota * c.provenance()->tau + s, gens));

    return report;
}

void require_valid(const EquivariantComplex& c, std::string_view operation)
{
    const auto report = validate(c);
    if (!report.ok())
        throw ContractError(std::string(operation) + " requires a valid complex:\n" + report.summary());
}

std::vector<EquivariantComplex> split_by_sector(const EquivariantComplex& c)
{
    std::vector<EquivariantComplex> out;
    for (const auto& sector : c.sectors())
        out.push_back(c.restrict_to_sector(sector));
    return out;
}

// ---------------------------------------------------------------------------
// Homology

std::size_t Homology::dim(std::string_view sector, int maslov) const
{
    for (const auto& g : groups)
        if (g.sector == sector && g.maslov == maslov)
            return g.dim();
    return 0;
}

std::size_t Homology::total(std::string_view sector) const
{
    std::size_t n = 0;
    for (const auto& g : groups)
        if (g.sector == sector)
            n += g.dim();
    return n;
}

std::size_t Homology::total() const
{
    std::size_t n = 0;
    for (const auto& g : groups)
        n += g.dim();
    return n;
}

Homology homology(const EquivariantComplex& c)
{
    require_valid(c, "homology");
    const std::size_t n = c.size();
    const auto& d = c.differential();
    const auto d_cols = d.columns();

    Homology out;
    for (const auto& sector : c.sectors()) {
        const auto idx = c.sector_indices(sector);
        for (int m : c.maslov_gradings(sector)) {
            std::vector<std::size_t> here;
            std::vector<std::size_t> above;
            for (std::size_t i : idx) {
                if (c.generator(i).maslov == m)
                    here.push_back(i);
                else if (c.generator(i).maslov == m + 1)
                    above.push_back(i);
            }
            // Cycles: kernel of d on the span of `here`, embedded in C.
            const auto local_d = d.restrict(idx, here);
            std::vector<gf2::Vector> z;
            for (const auto& k : gf2::kernel_basis(local_d)) {
                gf2::Vector v(n);
                for (std::size_t j : k.support())
                    v.set(here[j]);
                z.push_back(std::move(v));
            }
            std::vector<gf2::Vector> b;
            for (std::size_t j : above)
                b.push_back(d_cols[j]);
            b = gf2::echelonize(b, n);

            HomologyGroup group;
            group.sector = sector;
            group.maslov = m;
            group.representatives = gf2::quotient_representatives(z, b, n);
            group.induced_involution = gf2::induced_subquotient_map(c.involution(), z, b, z, b);
            out.groups.push_back(std::move(group));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor products

std::vector<Generator> tensor_generators(const EquivariantComplex& c1, const EquivariantComplex& c2,
                                         std::string_view separator)
{
    std::vector<Generator> gens;
    gens.reserve(c1.size() * c2.size());
    for (const auto& g : c1.generators()) {
        for (const auto& h : c2.generators()) {
            Generator p;
            p.name = g.name + std::string(separator) + h.name;
            p.maslov = g.maslov + h.maslov;
            if (g.alexander && h.alexander) {
                p.alexander = *g.alexander + *h.alexander;
                p.sector = std::to_string(*p.alexander);
            }
            else {
                p.sector = g.sector + std::string(separator) + h.sector;
            }
            gens.push_back(std::move(p));
        }
    }
    return gens;
}

EquivariantComplex tensor(const EquivariantComplex& c1, const EquivariantComplex& c2, const TensorRule& rule,
                          std::string_view separator)
{
    require_valid(c1, "tensor (first factor)");
    require_valid(c2, "tensor (second factor)");
    const std::size_t n1 = c1.size();
    const std::size_t n2 = c2.size();
    const std::size_t n = n1 * n2;
    auto gens = tensor_generators(c1, c2, separator);

    const auto id1 = gf2::Matrix::identity(n1);
    const auto id2 = gf2::Matrix::identity(n2);
    auto d = gf2::kronecker(c1.differential(), id2) + gf2::kronecker(id1, c2.differential());

    gf2::Matrix s;
    std::optional<Provenance> provenance;
    if (std::holds_alternative<ProductForm>(rule)) {
        s = gf2::kronecker(c1.involution(), c2.involution());
        if (c1.provenance() && c2.provenance())
            provenance = Provenance{gf2::kronecker(c1.provenance()->iota, c2.provenance()->iota),
                                    gf2::kronecker(c1.provenance()->tau, c2.provenance()->tau)};
    }
    else if (std::holds_alternative<SwapForm>(rule)) {
        if (c1.generators() != c2.generators())
            throw ContractError("swap-form tensor requires both factors to have identical generators");
        // The swap exchanges sectors s1*s2 and s2*s1, so label the pair unordered.
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) {
                auto& g = gens[i * n2 + j];
                const auto& a = c1.generator(i).sector;
                const auto& b = c2.generator(j).sector;
                if (!g.alexander && sector_less(b, a))
                    g.sector = b + std::string(separator) + a;
            }
        // g_i ⊗ h_j ↦ S(h_j) ⊗ S(g_i), with both factors indexed alike.
        s = gf2::Matrix(n, n);
        const auto& s1 = c1.involution();
        const auto& s2 = c2.involution();
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                for (std::size_t a : s2.column(j).support())
                    for (std::size_t b : s1.column(i).support())
                        s.flip(a * n2 + b, i * n2 + j);
    }
    else {
        std::map<std::string_view, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i)
            index.emplace(gens[i].name, i);
        if (index.size() != n)
            throw InputError("tensor generator names collide; choose another separator");
        s = gf2::Matrix(n, n);
        for (const auto& [src, targets] : std::get<LinearMap>(rule).columns) {
            auto j = index.find(src);
            if (j == index.end())
                throw InputError("explicit involution: unknown source generator '" + src + "'");
            for (const auto& t : targets) {
                auto i = index.find(t);
                if (i == index.end())
                    throw InputError("explicit involution: unknown generator '" + t + "'");
                s.flip(i->second, j->second);
            }
        }
    }

    auto out = EquivariantComplex::from_matrices(std::move(gens), std::move(d), std::move(s), std::move(provenance));
    const auto report = validate(out);
    if (!report.ok())
        throw ContractError("tensor product failed validation:\n" + report.summary());
    return out;
}

}  // namespace tate

#include "tate/specseq.hpp"

#include <algorithm>
#include <future>
#include <map>

#include "tate/errors.hpp"

namespace tate {

namespace {

using gf2::Echelon;
using gf2::Matrix;
using gf2::Vector;

// A basis element of Z_r together with the last entry y_{r-1} of a zig-zag
//   d x = 0,  (1+S) x = d y_1,  (1+S) y_1 = d y_2,  ...
// so that d_r[x] = [(1+S) y_{r-1}]. For r = 1 the tail is x itself.
struct Cycle {
    Vector x;
    Vector tail;
};

struct SectorPage {
    std::vector<PageGroup> groups;
    std::vector<PageDifferential> differentials;
};

struct SectorRun {
    std::vector<SectorPage> pages;
    int collapse_page = 1;
    int maslov_span = 0;
    bool converged = true;
};

class SectorEngine {
public:
    SectorEngine(const EquivariantComplex& c, std::string sector, std::optional<int> max_page)
        : sector_(std::move(sector)), global_(c.sector_indices(sector_)), n_(global_.size()),
          full_size_(c.size()), max_page_(max_page)
    {
        d_ = c.differential().restrict(global_, global_);
        h_ = c.involution().restrict(global_, global_) + Matrix::identity(n_);
        grades_ = c.maslov_gradings(sector_);
        span_ = c.maslov_span(sector_);
        for (std::size_t i = 0; i < n_; ++i)
            members_[c.generator(global_[i]).maslov].push_back(i);
    }

    SectorRun run()
    {
        initialize();

        SectorRun result;
        result.maslov_span = span_;
        const int bound = span_ + 2;
        const int limit = max_page_ ? std::min(*max_page_, bound) : bound;
        int last_nonzero = 0;

        for (int r = 1;; ++r) {
            auto page = describe_page(r);
            if (!page.differentials.empty())
                last_nonzero = r;
            const bool empty = std::all_of(page.groups.begin(), page.groups.end(),
                                           [](const PageGroup& g) { return g.dim() == 0; });
            result.pages.push_back(std::move(page));
            if (empty)
                break;
            if (r >= limit) {
                result.converged = r >= bound;
                break;
            }
            advance(r);
        }

        result.collapse_page = last_nonzero + 1;
        if (result.converged && static_cast<int>(result.pages.size()) > result.collapse_page)
            result.pages.resize(static_cast<std::size_t>(result.collapse_page));
        return result;
    }

private:
    struct Quotient {
        std::vector<Cycle> reps;
        Echelon coords;
    };

    Vector embed(const Vector& local) const
    {
        Vector v(full_size_);
        for (std::size_t i : local.support())
            v.set(global_[i]);
        return v;
    }

    void initialize()
    {
        const auto d_cols = d_.columns();
        for (int m : grades_) {
            const auto& here = members_[m];
            std::vector<std::size_t> all(n_);
            for (std::size_t i = 0; i < n_; ++i)
                all[i] = i;
            auto& cycles = cycles_[m];
            for (const auto& k : gf2::kernel_basis(d_.restrict(all, here))) {
                Vector x(n_);
                for (std::size_t j : k.support())
                    x.set(here[j]);
                cycles.push_back({x, x});
            }
            // B_1 = im d. Every boundary b carries q with b = (1+S) p + d q for
            // some zig-zag ending in p; only q is needed to extend lifts.
            auto& bounds = bounds_.try_emplace(m, n_).first->second;
            if (auto above = members_.find(m + 1); above != members_.end())
                for (std::size_t j : above->second)
                    bounds.insert(d_cols[j], {Vector::unit(n_, j)});
        }
    }

    Echelon& bounds_at(int m) { return bounds_.try_emplace(m, n_).first->second; }

    // Canonical Z_r basis (reduced echelon, tails carried along).
    std::vector<Cycle> canonical_cycles(int m) const
    {
        Echelon z(n_);
        for (const auto& c : cycles_.at(m))
            if (!z.insert(c.x, {c.tail}))
                throw InternalError("dependent cycle basis in sector " + sector_);
        std::vector<Cycle> out;
        for (auto& row : z.rows())
            out.push_back({std::move(row.vec), std::move(row.payload[0])});
        return out;
    }

    Quotient quotient(int m)
    {
        const auto z = canonical_cycles(m);
        const auto& bounds = bounds_at(m);
        Echelon zspace(n_);
        for (const auto& c : z)
            zspace.insert(c.x);

        Echelon acc(n_);
        std::vector<Vector> bvecs;
        for (const auto& row : bounds.rows()) {
            if (!zspace.contains(row.vec))
                throw InternalError("boundary outside the cycle space in sector " + sector_ + ", Maslov " +
                                    std::to_string(m));
            acc.insert(row.vec);
            bvecs.push_back(row.vec);
        }
        Quotient q{{}, Echelon(n_)};
        for (const auto& c : z)
            if (acc.insert(c.x))
                q.reps.push_back(c);

        const std::size_t k = q.reps.size();
        for (const auto& b : bvecs)
            q.coords.insert(b, {Vector(k)});
        for (std::size_t i = 0; i < k; ++i)
            q.coords.insert(q.reps[i].x, {Vector::unit(k, i)});
        return q;
    }

    SectorPage describe_page(int r)
    {
        std::map<int, Quotient> quotients;
        for (int m : grades_)
            quotients.emplace(m, quotient(m));

        SectorPage page;
        for (int m : grades_) {
            PageGroup g;
            g.sector = sector_;
            g.maslov = m;
            for (const auto& rep : quotients.at(m).reps)
                g.representatives.push_back(embed(rep.x));
            page.groups.push_back(std::move(g));
        }

        std::map<int, Matrix> maps;
        for (int m : grades_) {
            const auto& src = quotients.at(m);
            const int target = m + r - 1;
            auto tq = quotients.find(target);
            const std::size_t rows = tq == quotients.end() ? 0 : tq->second.reps.size();
            Matrix dr(rows, src.reps.size());
            for (std::size_t j = 0; j < src.reps.size(); ++j) {
                const Vector t = h_ * src.reps[j].tail;
                if (t.is_zero())
                    continue;
                if (tq == quotients.end())
                    throw InternalError("zig-zag image lands in an empty grading in sector " + sector_);
                auto red = tq->second.coords.reduce(t, {Vector(rows)});
                if (!red.residual.is_zero())
                    throw InternalError("d_" + std::to_string(r) + " image of " + src.reps[j].x.to_string() +
                                        " is not a cycle of the page (sector " + sector_ + ")");
                for (std::size_t i : red.payload[0].support())
                    dr.set(i, j);
            }
            if (!dr.is_zero())
                maps.emplace(m, dr);
        }

        for (const auto& [m, dr] : maps) {
            auto next = maps.find(m + r - 1);
            if (next != maps.end() && !(next->second * dr).is_zero())
                throw InternalError("d_" + std::to_string(r) + " does not square to zero in sector " + sector_);
            page.differentials.push_back({sector_, m, m + r - 1, r, dr});
        }
        return page;
    }

    // Z_{r+1} = {x ∈ Z_r : d_r[x] = 0}; B_{r+1} = B_r + lifts of d_r.
    void advance(int r)
    {
        std::map<int, std::vector<Cycle>> next_cycles;
        std::vector<std::pair<int, Vector>> new_bounds;

        for (int m : grades_) {
            const int target = m + r - 1;
            Echelon rel(n_);
            if (auto b = bounds_.find(target); b != bounds_.end())
                for (const auto& row : b->second.rows())
                    rel.insert(row.vec, {Vector(n_), row.payload[0]});

            auto& out = next_cycles[m];
            for (const auto& c : canonical_cycles(m)) {
                Vector t = h_ * c.tail;
                auto red = rel.reduce(t, {c.x, Vector(n_)});
                if (red.residual.is_zero()) {
                    // Σ c_i t_i = Σ u_k b_k with b_k = (1+S) p_k + d q_k, so the
                    // adjusted zig-zag continues with y_r = Σ u_k q_k.
                    out.push_back({std::move(red.payload[0]), std::move(red.payload[1])});
                }
                else {
                    rel.insert(t, {c.x, Vector(n_)});
                }
                if (!t.is_zero())
                    new_bounds.emplace_back(target, std::move(t));
            }
        }

        // A lift (1+S) y_{r-1} is a boundary with q = 0.
        for (auto& [m, b] : new_bounds)
            bounds_at(m).insert(std::move(b), {Vector(n_)});
        cycles_ = std::move(next_cycles);
    }

    std::string sector_;
    std::vector<std::size_t> global_;
    std::size_t n_;
    std::size_t full_size_;
    std::optional<int> max_page_;
    Matrix d_;
    Matrix h_;
    std::vector<int> grades_;
    int span_ = 0;
    std::map<int, std::vector<std::size_t>> members_;
    std::map<int, std::vector<Cycle>> cycles_;
    std::map<int, Echelon> bounds_;
};

std::vector<SectorDimension> sector_totals(const std::vector<DimensionEntry>& entries)
{
    std::vector<SectorDimension> out;
    for (const auto& e : entries) {
        if (out.empty() || out.back().sector != e.sector)
            out.push_back({e.sector, 0});
        out.back().dim += e.dim;
    }
    return out;
}

std::vector<DimensionEntry> page_dims(const Page& p)
{
    std::vector<DimensionEntry> out;
    for (const auto& g : p.groups)
        out.push_back({g.sector, g.maslov, g.dim()});
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t Page::dim(std::string_view sector, int maslov) const
{
    for (const auto& g : groups)
        if (g.sector == sector && g.maslov == maslov)
            return g.dim();
    return 0;
}

std::size_t Page::total(std::string_view sector) const
{
    std::size_t n = 0;
    for (const auto& g : groups)
        if (g.sector == sector)
            n += g.dim();
    return n;
}

bool Page::differential_is_zero(std::string_view sector) const
{
    return std::none_of(differentials.begin(), differentials.end(),
                        [&](const PageDifferential& d) { return d.sector == sector; });
}

std::size_t Page::differential_rank(std::string_view sector) const
{
    std::size_t n = 0;
    for (const auto& d : differentials)
        if (d.sector == sector)
            n += gf2::rank(d.matrix);
    return n;
}

std::size_t OracleReport::dim(std::string_view sector) const
{
    for (const auto& s : sectors)
        if (s.sector == sector)
            return s.dim;
    return 0;
}

bool SmithVerdict::holds() const
{
    return std::all_of(sectors.begin(), sectors.end(), [](const SmithEntry& e) { return e.holds(); });
}

const SmithEntry* SmithVerdict::find(std::string_view sector) const
{
    for (const auto& e : sectors)
        if (e.sector == sector)
            return &e;
    return nullptr;
}

std::size_t SSReport::e_infinity_dim(std::string_view sector, int maslov) const
{
    for (const auto& e : e_infinity)
        if (e.sector == sector && e.maslov == maslov)
            return e.dim;
    return 0;
}

std::size_t SSReport::e_infinity_total(std::string_view sector) const
{
    std::size_t n = 0;
    for (const auto& e : e_infinity)
        if (e.sector == sector)
            n += e.dim;
    return n;
}

int SSReport::sector_collapse_page(std::string_view sector) const
{
    for (const auto& s : sector_collapse)
        if (s.sector == sector)
            return s.collapse_page;
    return 1;
}

OracleReport tate_oracle(const EquivariantComplex& c)
{
    require_valid(c, "tate_oracle");
    OracleReport out;
    for (const auto& sector : c.sectors()) {
        const auto idx = c.sector_indices(sector);
        const auto total = c.differential().restrict(idx, idx) + c.involution().restrict(idx, idx) +
                           Matrix::identity(idx.size());
        if (!(total * total).is_zero())
            throw InternalError("(d+1+S)² ≠ 0 in sector " + sector);
        out.sectors.push_back({sector, idx.size() - 2 * gf2::rank(total)});
    }
    return out;
}

SSReport compute_pages(const EquivariantComplex& c, const SSOptions& options)
{
    require_valid(c, "compute_pages");
    if (options.max_page && *options.max_page < 1)
        throw InputError("max_page must be at least 1");

    const auto sectors = c.sectors();
    std::vector<SectorRun> runs(sectors.size());
    if (options.parallel && sectors.size() > 1) {
        std::vector<std::future<SectorRun>> futures;
        for (const auto& s : sectors)
            futures.push_back(std::async(std::launch::async, [&c, s, &options] {
                return SectorEngine(c, s, options.max_page).run();
            }));
        for (std::size_t i = 0; i < futures.size(); ++i)
            runs[i] = futures[i].get();
    }
    else {
        for (std::size_t i = 0; i < sectors.size(); ++i)
            runs[i] = SectorEngine(c, sectors[i], options.max_page).run();
    }

    SSReport report;
    std::size_t page_count = 1;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        page_count = std::max(page_count, runs[i].pages.size());
        report.collapse_page = std::max(report.collapse_page, runs[i].collapse_page);
        report.converged = report.converged && runs[i].converged;
        report.sector_collapse.push_back({sectors[i], runs[i].collapse_page, runs[i].maslov_span});
    }

    // A sector whose pages stopped early is stable from its last page on.
    for (std::size_t r = 0; r < page_count; ++r) {
        Page page;
        page.r = static_cast<int>(r) + 1;
        for (const auto& run : runs) {
            const bool own = r < run.pages.size();
            const auto& src = own ? run.pages[r] : run.pages.back();
            page.groups.insert(page.groups.end(), src.groups.begin(), src.groups.end());
            if (own)
                page.differentials.insert(page.differentials.end(), src.differentials.begin(),
                                          src.differentials.end());
        }
        report.pages.push_back(std::move(page));
    }

    report.e_infinity = page_dims(report.pages.back());
    report.oracle = tate_oracle(c);
    const auto h = homology(c);
    for (const auto& s : sector_totals(report.e_infinity))
        report.smith.sectors.push_back({s.sector, h.total(s.sector), s.dim});
    return report;
}

SmithVerdict smith_check(const EquivariantComplex& c)
{
    return compute_pages(c).smith;
}

CollapseVerdict lspace_collapse_check(const EquivariantComplex& c)
{
    const auto h = homology(c);
    for (const auto& s : c.sectors())
        if (h.total(s) > 1)
            throw InputError("lspace_collapse_check: sector " + s + " has homology of dimension " +
                             std::to_string(h.total(s)) + " > 1");
    const auto report = compute_pages(c);
    CollapseVerdict v;
    v.collapse_page = report.collapse_page;
    v.expected_page = 1;
    v.expected_dims = sector_totals(page_dims(report.pages.front()));
    v.e_infinity_dims = sector_totals(report.e_infinity);
    v.holds = report.converged && report.collapse_page == 1 && v.expected_dims == v.e_infinity_dims;
    return v;
}

CollapseVerdict thin_collapse_check(const EquivariantComplex& c)
{
    const auto h = homology(c);
    for (const auto& s : c.sectors()) {
        std::optional<int> grading;
        for (const auto& g : h.groups) {
            if (g.sector != s || g.dim() == 0)
                continue;
            if (grading && *grading != g.maslov)
                throw InputError("thin_collapse_check: sector " + s + " has homology in Maslov gradings " +
                                 std::to_string(*grading) + " and " + std::to_string(g.maslov));
            grading = g.maslov;
        }
    }
    const auto report = compute_pages(c);
    CollapseVerdict v;
    v.collapse_page = report.collapse_page;
    v.expected_page = 2;
    const auto& e2 = report.pages.size() >= 2 ? report.pages[1] : report.pages.front();
    v.expected_dims = sector_totals(page_dims(e2));
    v.e_infinity_dims = sector_totals(report.e_infinity);
    bool higher_zero = true;
    for (std::size_t r = 1; r < report.pages.size(); ++r)
        higher_zero = higher_zero && report.pages[r].differentials.empty();
    v.holds = report.converged && higher_zero && report.collapse_page <= 2 && v.expected_dims == v.e_infinity_dims;
    return v;
}

}  // namespace tate

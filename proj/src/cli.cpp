#include "tate/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tate/errors.hpp"
#include "tate/hfk.hpp"
#include "tate/io.hpp"
#include "tate/specseq.hpp"

namespace tate::cli {

namespace {

constexpr std::size_t max_table_width = 99;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::vector<std::size_t> widths() const
    {
        std::vector<std::size_t> w(header.size());
        for (std::size_t j = 0; j < header.size(); ++j)
            w[j] = header[j].size();
        for (const auto& row : rows)
            for (std::size_t j = 0; j < row.size(); ++j)
                w[j] = std::max(w[j], row[j].size());
        return w;
    }

    [[nodiscard]] std::size_t width() const
    {
        const auto w = widths();
        std::size_t total = 0;
        for (auto x : w)
            total += x;
        return total + 2 * (w.size() - 1);
    }

    void print(std::ostream& out) const
    {
        if (width() <= max_table_width) {
            const auto w = widths();
            auto line = [&](const std::vector<std::string>& cells) {
                std::string s;
                for (std::size_t j = 0; j < cells.size(); ++j) {
                    if (j > 0)
                        s += "  ";
                    s += cells[j];
                    if (j + 1 < cells.size())
                        s += std::string(w[j] - cells[j].size(), ' ');
                }
                out << s << '\n';
            };
            line(header);
            for (const auto& row : rows)
                line(row);
            return;
        }
        // Too wide for one line per row: one stanza per row instead.
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0)
                out << '\n';
            for (std::size_t j = 0; j < header.size(); ++j)
                out << header[j] << ": " << rows[i][j] << '\n';
        }
    }
};

std::string signed_number(long long v)
{
    return (v >= 0 ? "+" : "") + std::to_string(v);
}

io::ComplexFile load(const std::string& path)
{
    return io::parse_complex(io::read_file(path));
}

int cmd_validate(const std::string& path, std::ostream& out)
{
    const auto file = load(path);
    const auto report = validate(file.complex);
    out << path << ": " << file.complex.size() << " generators, " << file.complex.sectors().size() << " sectors\n";
    out << report.summary();
    out << (report.ok() ? "valid\n" : "invalid\n");
    return report.ok() ? exit_ok : exit_domain;
}

// Restricts to one sector, or returns the complex unchanged.
EquivariantComplex select_sector(const EquivariantComplex& c, const std::optional<std::string>& sector)
{
    if (!sector)
        return c;
    const auto all = c.sectors();
    if (std::find(all.begin(), all.end(), *sector) == all.end()) {
        std::string msg = "no sector '" + *sector + "'; sectors:";
        for (const auto& s : all)
            msg += " " + s;
        throw InputError(msg);
    }
    return c.restrict_to_sector(*sector);
}

std::string maslov_breakdown(const std::vector<PageGroup>& groups, std::string_view sector)
{
    std::string out;
    for (const auto& g : groups) {
        if (g.sector != sector || g.dim() == 0)
            continue;
        out += (out.empty() ? "" : " ") + std::to_string(g.dim()) + "@" + std::to_string(g.maslov);
    }
    return out.empty() ? "-" : out;
}

void print_detail(const EquivariantComplex& c, const SSReport& report, std::ostream& out)
{
    for (const auto& page : report.pages) {
        out << "\nE" << page.r << ":\n";
        for (const auto& g : page.groups) {
            if (g.dim() == 0)
                continue;
            out << "  sector " << g.sector << ", maslov " << g.maslov << ": dim " << g.dim() << "  {";
            for (std::size_t i = 0; i < g.representatives.size(); ++i)
                out << (i ? ", " : "") << c.describe(g.representatives[i]);
            out << "}\n";
        }
        for (const auto& d : page.differentials) {
            out << "  d" << page.r << " sector " << d.sector << ": maslov " << d.source_maslov << " -> "
                << d.target_maslov << ", theta +" << d.theta_shift << ", rank " << gf2::rank(d.matrix) << '\n';
        }
    }
}

int cmd_ss(const std::string& path, std::optional<int> max_page, bool json, const std::optional<std::string>& sector,
           bool detail, std::ostream& out, std::ostream& err)
{
    const auto file = load(path);
    const auto report = validate(file.complex);
    if (!report.ok()) {
        err << path << ": invalid complex\n" << report.summary();
        return exit_domain;
    }
    if (max_page && *max_page < 1)
        throw InputError("--max-page must be at least 1");
    const auto c = select_sector(file.complex, sector);
    const auto ss = compute_pages(c, {max_page, false});

    if (json) {
        std::vector<std::string> names;
        for (const auto& g : c.generators())
            names.push_back(g.name);
        out << io::render_report({names, ss});
        return exit_ok;
    }

    const auto& e1 = ss.pages.empty() ? std::vector<PageGroup>{} : ss.pages.front().groups;
    const auto& einf = ss.pages.empty() ? std::vector<PageGroup>{} : ss.pages.back().groups;
    Table table{{"sector", "E1", "E1 by maslov", "collapse", "Einf", "Einf by maslov", "oracle", "smith"}, {}};
    for (const auto& s : c.sectors()) {
        const auto* smith = ss.smith.find(s);
        table.rows.push_back({s, std::to_string(ss.pages.empty() ? 0 : ss.pages.front().total(s)),
                              maslov_breakdown(e1, s), std::to_string(ss.sector_collapse_page(s)),
                              std::to_string(ss.e_infinity_total(s)), maslov_breakdown(einf, s),
                              std::to_string(ss.oracle.dim(s)), smith ? signed_number(smith->margin()) : "-"});
    }
    table.print(out);
    out << "collapse page " << ss.collapse_page << (ss.converged ? "" : " (page limit reached, not converged)")
        << "; smith inequality " << (ss.smith.holds() ? "holds" : "FAILS") << '\n';
    if (detail)
        print_detail(c, ss, out);
    return exit_ok;
}

int cmd_oracle(const std::string& path, std::ostream& out, std::ostream& err)
{
    const auto file = load(path);
    const auto report = validate(file.complex);
    if (!report.ok()) {
        err << path << ": invalid complex\n" << report.summary();
        return exit_domain;
    }
    const auto oracle = tate_oracle(file.complex);
    Table table{{"sector", "dim H(d+1+S)"}, {}};
    std::size_t total = 0;
    for (const auto& s : oracle.sectors) {
        table.rows.push_back({s.sector, std::to_string(s.dim)});
        total += s.dim;
    }
    table.print(out);
    out << "total " << total << '\n';
    return exit_ok;
}

int cmd_builtin(const std::optional<std::string>& name, const std::optional<std::string>& emit,
                const std::optional<std::string>& emit_correction, std::ostream& out, std::ostream& err)
{
    if (emit_correction)
        io::write_file(*emit_correction, io::render_correction(hfk::t34_sum_correction()));
    if (!name) {
        if (emit) {
            err << "--emit needs a builtin name\n";
            return exit_input;
        }
        for (const auto& n : hfk::builtin_names())
            out << n << '\n';
        return exit_ok;
    }
    hfk::KnotComplex k;
    try {
        k = hfk::builtin(*name);
    }
    catch (const InputError& e) {
        // An unknown builtin is a domain failure, not malformed input.
        err << "error: " << e.what() << '\n';
        return exit_domain;
    }
    const auto text = io::render_knot(k);
    if (emit)
        io::write_file(*emit, text);
    else
        out << text;
    return exit_ok;
}

int cmd_sum(const std::string& path1, const std::string& path2, const std::optional<std::string>& correction_path,
            const std::optional<std::string>& emit, std::ostream& out)
{
    const auto k1 = io::to_knot(load(path1));
    const auto k2 = io::to_knot(load(path2));
    std::optional<LinearMap> correction;
    if (correction_path)
        correction = io::parse_correction(io::read_file(*correction_path));
    const auto sum = hfk::equivariant_sum(k1, k2, correction);
    const auto text = io::render_knot(sum);
    if (emit)
        io::write_file(*emit, text);
    else
        out << text;
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Localization spectral sequence of a chain complex with an involution over F2", "tate-ss"};
    app.require_subcommand(1);

    std::string path;
    auto* validate_cmd = app.add_subcommand("validate", "check every structural invariant of a complex file");
    validate_cmd->add_option("file", path, "complex file")->required();

    std::optional<int> max_page;
    bool json = false;
    bool detail = false;
    std::optional<std::string> sector;
    auto* ss_cmd = app.add_subcommand("ss", "compute the spectral sequence pages");
    ss_cmd->add_option("file", path, "complex file")->required();
    ss_cmd->add_option("--max-page", max_page, "stop after this page");
    ss_cmd->add_flag("--json", json, "emit the machine-readable report");
    ss_cmd->add_option("--sector", sector, "restrict to one sector");
    ss_cmd->add_flag("--detail", detail, "list every page with representatives");

    auto* oracle_cmd = app.add_subcommand("oracle", "dimension of H(d+1+S) per sector");
    oracle_cmd->add_option("file", path, "complex file")->required();

    std::optional<std::string> name;
    std::optional<std::string> emit;
    std::optional<std::string> emit_correction;
    auto* builtin_cmd = app.add_subcommand("builtin", "list builtins, or print or write one");
    builtin_cmd->add_option("name", name, "builtin name");
    builtin_cmd->add_option("--emit", emit, "write the complex file here instead of printing it");
    builtin_cmd->add_option("--emit-correction", emit_correction,
                            "write the T(3,4)#T(3,4) iota correction fragment here");

    std::string path2;
    std::optional<std::string> correction;
    auto* sum_cmd = app.add_subcommand("sum", "equivariant connected sum of two knot files");
    sum_cmd->add_option("file1", path, "first knot file")->required();
    sum_cmd->add_option("file2", path2, "second knot file")->required();
    sum_cmd->add_option("--correction", correction, "iota correction fragment");
    sum_cmd->add_option("--emit", emit, "write the result here instead of printing it");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return exit_input;
    }

    try {
        if (*validate_cmd)
            return cmd_validate(path, out);
        if (*ss_cmd)
            return cmd_ss(path, max_page, json, sector, detail, out, err);
        if (*oracle_cmd)
            return cmd_oracle(path, out, err);
        if (*builtin_cmd)
            return cmd_builtin(name, emit, emit_correction, out, err);
        if (*sum_cmd)
            return cmd_sum(path, path2, correction, emit, out);
    }
    catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    catch (const ContractError& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_domain;
    }
    return exit_input;
}

}  // namespace tate::cli

#include "tate/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tate/errors.hpp"

namespace tate::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e) {
        // The message already carries the line and column.
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what)
{
    throw InputError("invalid file at " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(where, std::string("missing key '") + key + "'");
    return *it;
}

std::string as_string(const json& j, const std::string& where)
{
    if (!j.is_string())
        schema_error(where, "expected a string");
    return j.get<std::string>();
}

int as_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        schema_error(where, "expected an integer");
    return j.get<int>();
}

std::size_t as_size(const json& j, const std::string& where)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        schema_error(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

void check_version(const json& doc)
{
    if (!doc.is_object())
        schema_error("top level", "expected an object");
    const auto& v = require(doc, "format_version", "top level");
    if (!v.is_number_integer() || v.get<long long>() != format_version)
        throw InputError("unsupported format_version " + v.dump() + " (this build reads version " +
                         std::to_string(format_version) + ")");
}

LinearMap parse_map(const json& j, const std::string& where)
{
    if (!j.is_object())
        schema_error(where, "expected an object mapping generator names to arrays of names");
    LinearMap map;
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (!value.is_array())
            schema_error(at, "expected an array of generator names");
        auto& col = map.columns[key];
        for (const auto& t : value)
            col.push_back(as_string(t, at));
    }
    return map;
}

json render_map(const LinearMap& map)
{
    json out = json::object();
    for (const auto& [src, targets] : map.columns)
        out[src] = targets;
    return out;
}

json to_json(const EquivariantComplex& c, const Metadata& metadata)
{
    json doc = json::object();
    doc["format_version"] = format_version;
    json gens = json::array();
    for (const auto& g : c.generators()) {
        json o = {{"name", g.name}, {"maslov", g.maslov}, {"sector", g.sector}};
        if (g.alexander)
            o["alexander"] = *g.alexander;
        gens.push_back(std::move(o));
    }
    doc["generators"] = std::move(gens);
    doc["differential"] = render_map(c.to_linear_map(c.differential()));
    if (c.provenance()) {
        doc["iota"] = render_map(c.to_linear_map(c.provenance()->iota));
        doc["tau"] = render_map(c.to_linear_map(c.provenance()->tau));
    }
    else {
        doc["involution"] = render_map(c.to_linear_map(c.involution()));
    }
    json meta = json::object();
    for (const auto& [k, v] : metadata)
        meta[k] = v;
    doc["metadata"] = std::move(meta);
    return doc;
}

std::string dump(const json& doc)
{
    return doc.dump(2) + "\n";
}

const std::set<std::string> complex_keys{"format_version", "generators", "differential", "involution",
                                         "iota",           "tau",        "metadata"};

}  // namespace

ComplexFile parse_complex(std::string_view text)
{
    const json doc = parse_json(text);
    check_version(doc);
    for (const auto& [key, value] : doc.items())
        if (!complex_keys.contains(key))
            schema_error("top level", "unknown key '" + key + "'");

    const auto& gens_json = require(doc, "generators", "top level");
    if (!gens_json.is_array())
        schema_error("generators", "expected an array");
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < gens_json.size(); ++i) {
        const auto& g = gens_json[i];
        const std::string where = "generators[" + std::to_string(i) + "]";
        if (!g.is_object())
            schema_error(where, "expected an object");
        Generator gen;
        gen.name = as_string(require(g, "name", where), where + ".name");
        if (gen.name.empty())
            schema_error(where + ".name", "generator names must be nonempty");
        gen.maslov = as_int(require(g, "maslov", where), where + ".maslov");
        if (auto a = g.find("alexander"); a != g.end())
            gen.alexander = as_int(*a, where + ".alexander");
        if (auto s = g.find("sector"); s != g.end())
            gen.sector = as_string(*s, where + ".sector");
        for (const auto& [key, value] : g.items())
            if (key != "name" && key != "maslov" && key != "alexander" && key != "sector")
                schema_error(where, "unknown key '" + key + "'");
        gens.push_back(std::move(gen));
    }
    {
        std::set<std::string> seen;
        for (const auto& g : gens)
            if (!seen.insert(g.name).second)
                schema_error("generators", "duplicate generator name '" + g.name + "'");
    }

    const LinearMap d = doc.contains("differential") ? parse_map(doc["differential"], "differential") : LinearMap{};
    const bool has_s = doc.contains("involution");
    const bool has_iota = doc.contains("iota");
    const bool has_tau = doc.contains("tau");
    if (has_s == (has_iota || has_tau))
        schema_error("top level", "give exactly one of 'involution' or the pair 'iota' and 'tau'");
    if (has_iota != has_tau)
        schema_error("top level", "'iota' and 'tau' must be given together");

    ComplexFile file;
    if (has_s)
        file.complex = EquivariantComplex::from_maps(std::move(gens), d, parse_map(doc["involution"], "involution"));
    else
        file.complex = EquivariantComplex::from_factor_maps(std::move(gens), d, parse_map(doc["iota"], "iota"),
                                                            parse_map(doc["tau"], "tau"));
    if (auto m = doc.find("metadata"); m != doc.end()) {
        if (!m->is_object())
            schema_error("metadata", "expected an object of strings");
        for (const auto& [key, value] : m->items())
            file.metadata[key] = as_string(value, "metadata." + key);
    }
    return file;
}

std::string render_complex(const EquivariantComplex& c, const Metadata& metadata)
{
    return dump(to_json(c, metadata));
}

hfk::KnotComplex to_knot(const ComplexFile& file)
{
    auto get = [&](const char* key) {
        auto it = file.metadata.find(key);
        return it == file.metadata.end() ? std::string() : it->second;
    };
    hfk::KnotComplex k{file.complex, get("knot"), get("inversion"), get("direction")};
    hfk::require_knot_shape(k);
    return k;
}

std::string render_knot(const hfk::KnotComplex& k)
{
    return render_complex(k.complex,
                          {{"knot", k.knot_name}, {"inversion", k.inversion_name}, {"direction", k.direction_note}});
}

LinearMap parse_correction(std::string_view text)
{
    const json doc = parse_json(text);
    check_version(doc);
    for (const auto& [key, value] : doc.items())
        if (key != "format_version" && key != "correction")
            schema_error("top level", "unknown key '" + key + "'");
    return parse_map(require(doc, "correction", "top level"), "correction");
}

std::string render_correction(const LinearMap& map)
{
    json doc = json::object();
    doc["format_version"] = format_version;
    doc["correction"] = render_map(map);
    return dump(doc);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

json chain_json(const gf2::Vector& v, const std::vector<std::string>& names)
{
    json out = json::array();
    for (std::size_t i : v.support())
        out.push_back(names[i]);
    return out;
}

std::string chain_key(const gf2::Vector& v, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i : v.support())
        out += (out.empty() ? "" : "+") + names[i];
    return out.empty() ? "0" : out;
}

gf2::Vector chain_from_json(const json& j, const std::map<std::string, std::size_t>& index, const std::string& where)
{
    if (!j.is_array())
        schema_error(where, "expected an array of generator names");
    gf2::Vector v(index.size());
    for (const auto& n : j) {
        auto it = index.find(as_string(n, where));
        if (it == index.end())
            schema_error(where, "unknown generator '" + n.get<std::string>() + "'");
        v.flip(it->second);
    }
    return v;
}

}  // namespace

std::string render_report(const ReportFile& file)
{
    const auto& names = file.generators;
    const auto& rep = file.report;
    json doc = json::object();
    doc["format_version"] = format_version;
    doc["generators"] = names;
    doc["collapse_page"] = rep.collapse_page;
    doc["converged"] = rep.converged;

    json collapse = json::array();
    for (const auto& s : rep.sector_collapse)
        collapse.push_back({{"sector", s.sector}, {"collapse_page", s.collapse_page}, {"maslov_span", s.maslov_span}});
    doc["sector_collapse"] = std::move(collapse);

    json pages = json::array();
    for (const auto& page : rep.pages) {
        json groups = json::array();
        std::map<std::pair<std::string, int>, const PageGroup*> lookup;
        for (const auto& g : page.groups) {
            json reps = json::array();
            for (const auto& v : g.representatives)
                reps.push_back(chain_json(v, names));
            groups.push_back({{"sector", g.sector}, {"maslov", g.maslov}, {"dim", g.dim()}, {"representatives", reps}});
            lookup[{g.sector, g.maslov}] = &g;
        }
        json diffs = json::array();
        for (const auto& d : page.differentials) {
            const PageGroup* src = lookup.at({d.sector, d.source_maslov});
            const PageGroup* dst = lookup.at({d.sector, d.target_maslov});
            json cols = json::object();
            for (std::size_t j = 0; j < d.matrix.cols(); ++j) {
                const auto col = d.matrix.column(j);
                if (col.is_zero())
                    continue;
                json targets = json::array();
                for (std::size_t i : col.support())
                    targets.push_back(chain_key(dst->representatives[i], names));
                cols[chain_key(src->representatives[j], names)] = std::move(targets);
            }
            diffs.push_back({{"sector", d.sector},
                             {"source_maslov", d.source_maslov},
                             {"target_maslov", d.target_maslov},
                             {"theta_shift", d.theta_shift},
                             {"rank", gf2::rank(d.matrix)},
                             {"columns", std::move(cols)}});
        }
        pages.push_back({{"r", page.r}, {"groups", std::move(groups)}, {"differentials", std::move(diffs)}});
    }
    doc["pages"] = std::move(pages);

    json einf = json::array();
    for (const auto& e : rep.e_infinity)
        einf.push_back({{"sector", e.sector}, {"maslov", e.maslov}, {"dim", e.dim}});
    doc["e_infinity"] = std::move(einf);

    json oracle = json::array();
    for (const auto& s : rep.oracle.sectors)
        oracle.push_back({{"sector", s.sector}, {"dim", s.dim}});
    doc["oracle"] = std::move(oracle);

    json smith = json::array();
    for (const auto& s : rep.smith.sectors)
        smith.push_back({{"sector", s.sector},
                         {"homology_dim", s.homology_dim},
                         {"e_infinity_dim", s.e_infinity_dim},
                         {"margin", s.margin()},
                         {"holds", s.holds()}});
    doc["smith"] = std::move(smith);
    return dump(doc);
}

ReportFile parse_report(std::string_view text)
{
    const json doc = parse_json(text);
    check_version(doc);

    ReportFile file;
    const auto& gens = require(doc, "generators", "top level");
    if (!gens.is_array())
        schema_error("generators", "expected an array");
    std::map<std::string, std::size_t> index;
    for (const auto& g : gens) {
        file.generators.push_back(as_string(g, "generators"));
        index.emplace(file.generators.back(), file.generators.size() - 1);
    }
    auto& rep = file.report;
    rep.collapse_page = as_int(require(doc, "collapse_page", "top level"), "collapse_page");
    const auto& conv = require(doc, "converged", "top level");
    if (!conv.is_boolean())
        schema_error("converged", "expected a boolean");
    rep.converged = conv.get<bool>();

    for (const auto& s : require(doc, "sector_collapse", "top level"))
        rep.sector_collapse.push_back({as_string(require(s, "sector", "sector_collapse"), "sector_collapse.sector"),
                                       as_int(require(s, "collapse_page", "sector_collapse"), "collapse_page"),
                                       as_int(require(s, "maslov_span", "sector_collapse"), "maslov_span")});

    const auto& pages = require(doc, "pages", "top level");
    for (std::size_t p = 0; p < pages.size(); ++p) {
        const std::string where = "pages[" + std::to_string(p) + "]";
        const auto& pj = pages[p];
        Page page;
        page.r = as_int(require(pj, "r", where), where + ".r");
        for (const auto& gj : require(pj, "groups", where)) {
            PageGroup g;
            g.sector = as_string(require(gj, "sector", where), where + ".sector");
            g.maslov = as_int(require(gj, "maslov", where), where + ".maslov");
            for (const auto& v : require(gj, "representatives", where))
                g.representatives.push_back(chain_from_json(v, index, where + ".representatives"));
            if (as_size(require(gj, "dim", where), where + ".dim") != g.dim())
                schema_error(where, "dim does not match the number of representatives");
            page.groups.push_back(std::move(g));
        }
        for (const auto& dj : require(pj, "differentials", where)) {
            PageDifferential d;
            d.sector = as_string(require(dj, "sector", where), where + ".sector");
            d.source_maslov = as_int(require(dj, "source_maslov", where), where + ".source_maslov");
            d.target_maslov = as_int(require(dj, "target_maslov", where), where + ".target_maslov");
            d.theta_shift = as_int(require(dj, "theta_shift", where), where + ".theta_shift");
            auto find_group = [&](int maslov) -> const PageGroup& {
                for (const auto& g : page.groups)
                    if (g.sector == d.sector && g.maslov == maslov)
                        return g;
                schema_error(where, "differential refers to a missing group");
            };
            const auto& src = find_group(d.source_maslov);
            const auto& dst = find_group(d.target_maslov);
            auto position = [&](const PageGroup& g, const std::string& key) {
                for (std::size_t i = 0; i < g.representatives.size(); ++i)
                    if (chain_key(g.representatives[i], file.generators) == key)
                        return i;
                schema_error(where, "unknown representative '" + key + "'");
            };
            d.matrix = gf2::Matrix(dst.dim(), src.dim());
            for (const auto& [key, targets] : require(dj, "columns", where).items()) {
                const std::size_t j = position(src, key);
                for (const auto& t : targets)
                    d.matrix.flip(position(dst, as_string(t, where)), j);
            }
            page.differentials.push_back(std::move(d));
        }
        rep.pages.push_back(std::move(page));
    }

    for (const auto& e : require(doc, "e_infinity", "top level"))
        rep.e_infinity.push_back({as_string(require(e, "sector", "e_infinity"), "e_infinity.sector"),
                                  as_int(require(e, "maslov", "e_infinity"), "e_infinity.maslov"),
                                  as_size(require(e, "dim", "e_infinity"), "e_infinity.dim")});
    for (const auto& s : require(doc, "oracle", "top level"))
        rep.oracle.sectors.push_back({as_string(require(s, "sector", "oracle"), "oracle.sector"),
                                      as_size(require(s, "dim", "oracle"), "oracle.dim")});
    for (const auto& s : require(doc, "smith", "top level"))
        rep.smith.sectors.push_back({as_string(require(s, "sector", "smith"), "smith.sector"),
                                     as_size(require(s, "homology_dim", "smith"), "smith.homology_dim"),
                                     as_size(require(s, "e_infinity_dim", "smith"), "smith.e_infinity_dim")});
    return file;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << contents;
    if (!out)
        throw InputError("failed writing '" + path + "'");
}

}  // namespace tate::io

#pragma once

// Canonical JSON file formats.
//
// Complex file (format_version 1):
//   {
//     "format_version": 1,
//     "generators": [{"name": "a", "maslov": 0, "alexander": 0, "sector": "0"}, ...],
//     "differential": {"a": ["b", ...], ...},
//     "involution": {...}            // or both "iota" and "tau"; S = iota ∘ tau
//     "metadata": {"knot": "...", ...}
//   }
// Omitted map entries are zero columns. "sector" defaults to the decimal
// Alexander grading when one is given, otherwise to "default".
//
// Rendering is canonical: generators in complex order, object keys sorted,
// two-space indentation, trailing newline.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tate/complex.hpp"
#include "tate/hfk.hpp"
#include "tate/specseq.hpp"

namespace tate::io {

inline constexpr int format_version = 1;

using Metadata = std::map<std::string, std::string>;

struct ComplexFile {
    EquivariantComplex complex;
    Metadata metadata;
};

/// Throws InputError with line and column for malformed JSON, and for schema
/// or reference errors (unknown generator names, bad format_version).
[[nodiscard]] ComplexFile parse_complex(std::string_view text);
[[nodiscard]] std::string render_complex(const EquivariantComplex& c, const Metadata& metadata = {});

/// Knot metadata lives under "knot", "inversion" and "direction".
[[nodiscard]] hfk::KnotComplex to_knot(const ComplexFile& file);
[[nodiscard]] std::string render_knot(const hfk::KnotComplex& k);

/// Correction fragment: {"format_version": 1, "correction": {name: [names]}}.
[[nodiscard]] LinearMap parse_correction(std::string_view text);
[[nodiscard]] std::string render_correction(const LinearMap& map);

struct ReportFile {
    std::vector<std::string> generators;
    SSReport report;

    friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

[[nodiscard]] std::string render_report(const ReportFile& file);
[[nodiscard]] ReportFile parse_report(std::string_view text);

[[nodiscard]] std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace tate::io

#pragma once

#include <string>
#include <string_view>

#include "factin/graph.hpp"

namespace factin {

enum class BondMode {
    RecordsOnly,      // CONECT records only; error if the file has none
    Infer,            // distance-based inference only
    RecordsThenInfer, // union of both
};

BondMode parse_bond_mode(std::string_view s);
std::string to_string(BondMode m);

struct StructureOptions {
    BondMode bond_mode = BondMode::RecordsThenInfer;
    double tolerance = 0.45;       // Angstrom, added to the radius sum
    bool strip_hydrogens = false;  // drop H/D atoms before bonding
};

// Single-bond covalent radius in Angstrom; unknown elements fall back to a
// carbon-like 0.77.
double covalent_radius(std::string_view element);

// True if the symbol is in the radius table (case-insensitive).
bool known_element(std::string_view element);

// Fixed-column ATOM/HETATM reader with optional CONECT connectivity.
// Alternate locations keep the first occurrence; reading stops at ENDMDL.
// In infer modes a bond u-v is added iff
//   dist(u,v) <= r_cov(u) + r_cov(v) + tolerance.
MolecularGraph load_structure(const std::string& path, const StructureOptions& opts = {});
MolecularGraph parse_structure(const std::string& text, const StructureOptions& opts = {},
                               const std::string& origin = "<memory>");

} // namespace factin

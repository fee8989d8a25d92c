#include "factin/structure.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "factin/manifest.hpp" // read_file

namespace factin {

namespace {

// Single-bond covalent radii (Angstrom), the classic Pauling-style values
// commonly used for distance-based connectivity. "X" rides on carbon.
struct RadiusEntry {
    const char* symbol;
    double radius;
};
constexpr RadiusEntry kRadii[] = {
    {"H", 0.37},  {"D", 0.37},  {"B", 0.82},  {"C", 0.77},  {"N", 0.75},
    {"O", 0.73},  {"F", 0.71},  {"Na", 1.54}, {"Mg", 1.30}, {"Si", 1.11},
    {"P", 1.06},  {"S", 1.02},  {"Cl", 0.99}, {"K", 1.96},  {"Ca", 1.74},
    {"Mn", 1.39}, {"Fe", 1.25}, {"Co", 1.26}, {"Ni", 1.21}, {"Cu", 1.38},
    {"Zn", 1.31}, {"Se", 1.17}, {"Br", 1.14}, {"I", 1.33},
};

std::string normalize_element(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    if (out.empty()) return out;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    for (size_t i = 1; i < out.size(); ++i)
        out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
    return out;
}

const RadiusEntry* find_element(std::string_view element) {
    std::string norm = normalize_element(element);
    for (const auto& e : kRadii)
        if (norm == e.symbol) return &e;
    return nullptr;
}

// Fixed-column field access; short lines read as blanks. start is 1-based
// per the format description.
std::string field(const std::string& line, size_t start, size_t len) {
    if (line.size() < start) return {};
    std::string s = line.substr(start - 1, std::min(len, line.size() - (start - 1)));
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

char field_char(const std::string& line, size_t col) {
    return line.size() >= col ? line[col - 1] : ' ';
}

double parse_coord(const std::string& s, const std::string& origin, size_t lineno,
                   const char* what) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end == s.c_str() || *end != '\0')
        throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": bad " + what +
                                 " coordinate '" + s + "'");
    return v;
}

long parse_int_field(const std::string& s, long fallback) {
    if (s.empty()) return fallback;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    return (end == s.c_str() || *end != '\0') ? fallback : v;
}

// Element from the atom name columns (13-16) when columns 77-78 are blank.
// A name flush against column 13 may carry a two-letter element ("FE  ",
// "CA  " for calcium); names starting at column 14 are single-letter
// ("" CA "" is an alpha-carbon). Leading digits (hydrogens like "1HB2")
// are skipped.
std::string element_from_name(const std::string& name_raw, bool starts_at_13) {
    std::string letters;
    for (char c : name_raw) {
        if (std::isalpha(static_cast<unsigned char>(c))) letters.push_back(c);
        else if (!letters.empty()) break;
    }
    if (letters.empty()) return "X";
    if (starts_at_13 && letters.size() >= 2) {
        std::string two = normalize_element(letters.substr(0, 2));
        if (find_element(two)) return two;
    }
    return normalize_element(letters.substr(0, 1));
}

struct GridKey {
    int64_t x, y, z;
    bool operator==(const GridKey&) const = default;
};
struct GridKeyHash {
    size_t operator()(const GridKey& k) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (int64_t v : {k.x, k.y, k.z}) {
            h ^= static_cast<uint64_t>(v);
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace

BondMode parse_bond_mode(std::string_view s) {
    if (s == "records") return BondMode::RecordsOnly;
    if (s == "infer") return BondMode::Infer;
    if (s == "both") return BondMode::RecordsThenInfer;
    throw std::invalid_argument("unknown bond mode '" + std::string(s) +
                                "' (expected records|infer|both)");
}

std::string to_string(BondMode m) {
    switch (m) {
        case BondMode::RecordsOnly: return "records";
        case BondMode::Infer: return "infer";
        case BondMode::RecordsThenInfer: return "both";
    }
    return "?";
}

double covalent_radius(std::string_view element) {
    const RadiusEntry* e = find_element(element);
    return e ? e->radius : 0.77;
}

bool known_element(std::string_view element) {
    return find_element(element) != nullptr;
}

MolecularGraph parse_structure(const std::string& text, const StructureOptions& opts,
                               const std::string& origin) {
    std::vector<AtomRecord> atoms;
    std::unordered_map<long, uint32_t> by_serial; // kept atoms only, first wins
    bool saw_conect = false;
    std::vector<std::pair<long, long>> conect; // serial pairs

    // first-occurrence filter for alternate locations
    std::map<std::tuple<char, int, char, std::string>, char> first_altloc;

    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string record = field(line, 1, 6);
        if (record == "ENDMDL") break; // first model only
        if (record == "ATOM" || record == "HETATM") {
            if (line.size() < 54)
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": truncated atom record");
            std::string name = field(line, 13, 4);
            char altloc = field_char(line, 17);
            char chain = field_char(line, 22);
            char icode = field_char(line, 27);
            int resseq = static_cast<int>(parse_int_field(field(line, 23, 4), 0));

            auto key = std::make_tuple(chain, resseq, icode, name);
            auto [it, inserted] = first_altloc.try_emplace(key, altloc);
            if (!inserted && !(altloc == ' ' && it->second == ' ')) continue;

            std::string element = field(line, 77, 2);
            if (element.empty())
                element = element_from_name(name, field_char(line, 13) != ' ');
            else
                element = normalize_element(element);
            if (element.empty()) element = "X";

            // Stripped hydrogens never enter by_serial, so CONECT entries
            // touching them resolve to nothing and drop out.
            if (opts.strip_hydrogens && (element == "H" || element == "D")) continue;

            AtomRecord a;
            a.id = static_cast<uint32_t>(atoms.size());
            a.element = element;
            a.atom_name = name;
            a.residue_name = field(line, 18, 3);
            a.residue_seq = resseq;
            a.chain = chain;
            a.icode = icode;
            a.position[0] = parse_coord(field(line, 31, 8), origin, lineno, "x");
            a.position[1] = parse_coord(field(line, 39, 8), origin, lineno, "y");
            a.position[2] = parse_coord(field(line, 47, 8), origin, lineno, "z");
            long serial = parse_int_field(field(line, 7, 5), -1);
            if (serial >= 0) by_serial.emplace(serial, a.id);
            atoms.push_back(std::move(a));
        } else if (record == "CONECT") {
            saw_conect = true;
            long base = parse_int_field(field(line, 7, 5), -1);
            if (base < 0) continue;
            for (size_t start : {12u, 17u, 22u, 27u}) {
                long other = parse_int_field(field(line, start, 5), -1);
                if (other >= 0) conect.emplace_back(base, other);
            }
        }
    }
    if (atoms.empty())
        throw std::runtime_error(origin + ": no atoms found");

    std::vector<std::pair<uint32_t, uint32_t>> edges;

    if (opts.bond_mode == BondMode::RecordsOnly && !saw_conect)
        throw std::runtime_error(origin + ": bond mode 'records' but the file has no CONECT records");

    if (opts.bond_mode == BondMode::RecordsOnly || opts.bond_mode == BondMode::RecordsThenInfer) {
        for (const auto& [a, b] : conect) {
            auto ia = by_serial.find(a);
            auto ib = by_serial.find(b);
            if (ia == by_serial.end() || ib == by_serial.end()) continue; // stripped or unknown
            if (ia->second == ib->second) continue;
            edges.emplace_back(ia->second, ib->second);
        }
    }

    if (opts.bond_mode == BondMode::Infer || opts.bond_mode == BondMode::RecordsThenInfer) {
        double rmax = 0.0;
        for (const AtomRecord& a : atoms) rmax = std::max(rmax, covalent_radius(a.element));
        double cell = 2.0 * rmax + opts.tolerance;
        std::unordered_map<GridKey, std::vector<uint32_t>, GridKeyHash> grid;
        grid.reserve(atoms.size() * 2);
        auto key_of = [&](const AtomRecord& a) {
            return GridKey{static_cast<int64_t>(std::floor(a.position[0] / cell)),
                           static_cast<int64_t>(std::floor(a.position[1] / cell)),
                           static_cast<int64_t>(std::floor(a.position[2] / cell))};
        };
        for (const AtomRecord& a : atoms) grid[key_of(a)].push_back(a.id);

        for (const AtomRecord& a : atoms) {
            double ra = covalent_radius(a.element);
            GridKey k = key_of(a);
            for (int64_t dx = -1; dx <= 1; ++dx)
                for (int64_t dy = -1; dy <= 1; ++dy)
                    for (int64_t dz = -1; dz <= 1; ++dz) {
                        auto it = grid.find(GridKey{k.x + dx, k.y + dy, k.z + dz});
                        if (it == grid.end()) continue;
                        for (uint32_t j : it->second) {
                            if (j <= a.id) continue; // each pair once
                            const AtomRecord& b = atoms[j];
                            double cutoff = ra + covalent_radius(b.element) + opts.tolerance;
                            double ddx = a.position[0] - b.position[0];
                            double ddy = a.position[1] - b.position[1];
                            double ddz = a.position[2] - b.position[2];
                            double d2 = ddx * ddx + ddy * ddy + ddz * ddz;
                            // near-zero separations are clashing duplicates,
                            // not bonds
                            if (d2 < 0.4 * 0.4) continue;
                            if (d2 <= cutoff * cutoff) edges.emplace_back(a.id, j);
                        }
                    }
        }
    }

    // atoms.size() must be read before the move steals the vector
    uint32_t node_count = static_cast<uint32_t>(atoms.size());
    return MolecularGraph(node_count, std::move(edges), std::move(atoms));
}

MolecularGraph load_structure(const std::string& path, const StructureOptions& opts) {
    return parse_structure(read_file(path), opts, path);
}

} // namespace factin

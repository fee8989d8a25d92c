#include <doctest.h>

#include <stdexcept>
#include <string>

#include "factin/structure.hpp"
#include "support.hpp"

using namespace factin;
using support::pdb_atom;
using support::pdb_conect;

TEST_CASE("covalent radii table") {
    CHECK(covalent_radius("C") == doctest::Approx(0.77));
    CHECK(covalent_radius("H") == doctest::Approx(0.37));
    CHECK(covalent_radius("N") == doctest::Approx(0.75));
    CHECK(covalent_radius("S") == doctest::Approx(1.02));
    CHECK(covalent_radius("c") == doctest::Approx(0.77)); // case-insensitive
    CHECK(covalent_radius("Xx") == doctest::Approx(0.77)); // carbon-like fallback
    CHECK(known_element("Fe"));
    CHECK(!known_element("Qq"));
}

TEST_CASE("bond inference by distance") {
    // C-C cutoff is 0.77 + 0.77 + 0.45 = 1.99 A
    std::string close = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") +
                        pdb_atom(2, "C2", "LIG", 'A', 1, 1.5, 0, 0, "C");
    MolecularGraph g = parse_structure(close);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);

    std::string far = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") +
                      pdb_atom(2, "C2", "LIG", 'A', 1, 2.1, 0, 0, "C");
    CHECK(parse_structure(far).edge_count() == 0);

    // near-coincident atoms are treated as clashes, not bonds
    std::string clash = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") +
                        pdb_atom(2, "C2", "LIG", 'A', 1, 0.2, 0, 0, "C");
    CHECK(parse_structure(clash).edge_count() == 0);

    // tolerance widens the cutoff
    StructureOptions wide;
    wide.tolerance = 0.7;
    CHECK(parse_structure(far, wide).edge_count() == 1);
}

TEST_CASE("bond modes") {
    std::string text = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") +
                       pdb_atom(2, "C2", "LIG", 'A', 1, 1.5, 0, 0, "C") +
                       pdb_atom(3, "C3", "LIG", 'A', 1, 8, 0, 0, "C") +
                       pdb_conect({1, 3}); // long-range record, no inferred partner

    StructureOptions records;
    records.bond_mode = BondMode::RecordsOnly;
    MolecularGraph gr = parse_structure(text, records);
    CHECK(gr.edge_count() == 1);
    CHECK(gr.has_edge(0, 2));

    StructureOptions infer;
    infer.bond_mode = BondMode::Infer;
    MolecularGraph gi = parse_structure(text, infer);
    CHECK(gi.edge_count() == 1);
    CHECK(gi.has_edge(0, 1));

    MolecularGraph gb = parse_structure(text); // union by default
    CHECK(gb.edge_count() == 2);

    // records mode demands records
    std::string bare = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C");
    CHECK_THROWS_AS(parse_structure(bare, records), std::runtime_error);

    CHECK(parse_bond_mode("records") == BondMode::RecordsOnly);
    CHECK(parse_bond_mode("infer") == BondMode::Infer);
    CHECK(parse_bond_mode("both") == BondMode::RecordsThenInfer);
    CHECK_THROWS_AS(parse_bond_mode("fuzzy"), std::invalid_argument);
}

TEST_CASE("alternate locations keep the first occurrence") {
    std::string text = pdb_atom(1, "CA", "ALA", 'A', 1, 0, 0, 0, "C", 'A') +
                       pdb_atom(2, "CA", "ALA", 'A', 1, 5, 0, 0, "C", 'B') +
                       pdb_atom(3, "CB", "ALA", 'A', 1, 1.5, 0, 0, "C");
    MolecularGraph g = parse_structure(text);
    REQUIRE(g.node_count() == 2);
    CHECK(g.atoms()[0].position[0] == doctest::Approx(0.0)); // altloc A won
    CHECK(g.edge_count() == 1);
}

TEST_CASE("reading stops at ENDMDL") {
    std::string text = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") + "ENDMDL\n" +
                       pdb_atom(2, "C2", "LIG", 'A', 1, 1.5, 0, 0, "C");
    CHECK(parse_structure(text).node_count() == 1);
}

TEST_CASE("hydrogen stripping removes atoms and their records") {
    std::string text = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C") +
                       pdb_atom(2, "H1", "LIG", 'A', 1, 1.0, 0, 0, "H") +
                       pdb_conect({1, 2});
    MolecularGraph with_h = parse_structure(text);
    CHECK(with_h.node_count() == 2);
    CHECK(with_h.edge_count() == 1);

    StructureOptions strip;
    strip.strip_hydrogens = true;
    MolecularGraph no_h = parse_structure(text, strip);
    CHECK(no_h.node_count() == 1);
    CHECK(no_h.edge_count() == 0); // CONECT to the stripped H drops out
}

TEST_CASE("element resolution") {
    // explicit element column wins
    MolecularGraph g1 = parse_structure(pdb_atom(1, "CA", "XXX", 'A', 1, 0, 0, 0, "N"));
    CHECK(g1.atoms()[0].element == "N");

    // otherwise derived from the atom name; names starting at column 14 are
    // single-letter elements ("CA" is a carbon, not calcium)
    MolecularGraph g2 = parse_structure(pdb_atom(1, "CA", "XXX", 'A', 1, 0, 0, 0));
    CHECK(g2.atoms()[0].element == "C");

    // a name occupying column 13 may carry a two-letter element
    MolecularGraph g3 = parse_structure(pdb_atom(1, "FE  ", "XXX", 'A', 1, 0, 0, 0));
    CHECK(g3.atoms()[0].element == "Fe");

    // leading digits are skipped ("1HB" is hydrogen)
    MolecularGraph g4 = parse_structure(pdb_atom(1, "1HB ", "XXX", 'A', 1, 0, 0, 0));
    CHECK(g4.atoms()[0].element == "H");
}

TEST_CASE("annotations survive into the graph") {
    MolecularGraph g = parse_structure(pdb_atom(7, "CG", "PHE", 'B', 42, 1.25, -2.5, 3.75, "C"));
    REQUIRE(g.has_atoms());
    const AtomRecord& a = g.atoms()[0];
    CHECK(a.atom_name == "CG");
    CHECK(a.residue_name == "PHE");
    CHECK(a.chain == 'B');
    CHECK(a.residue_seq == 42);
    CHECK(a.position[0] == doctest::Approx(1.25));
    CHECK(a.position[1] == doctest::Approx(-2.5));
    CHECK(a.position[2] == doctest::Approx(3.75));
}

TEST_CASE("malformed input is reported with its line") {
    CHECK_THROWS_AS(parse_structure("REMARK nothing here\n"), std::runtime_error);

    std::string bad_x = pdb_atom(1, "C1", "LIG", 'A', 1, 0, 0, 0, "C");
    bad_x.replace(30, 8, "  12.3.4");
    CHECK_THROWS_WITH_AS(parse_structure(bad_x, {}, "in.pdb"), doctest::Contains("in.pdb:1"),
                         std::runtime_error);

    CHECK_THROWS_WITH_AS(parse_structure("ATOM      1  C1\n"), doctest::Contains("truncated"),
                         std::runtime_error);
}

TEST_CASE("phenylalanine fragment perceives as one ring plus stem") {
    MolecularGraph g = parse_structure(support::phe_fragment(0, 'A', 1, 0, 0));
    CHECK(g.node_count() == 7);
    CHECK(g.edge_count() == 7); // six ring bonds plus CG-CB
    uint32_t deg3 = 0;
    for (uint32_t u = 0; u < g.node_count(); ++u)
        if (g.degree(u) == 3) ++deg3;
    CHECK(deg3 == 1); // only CG carries the stem
}

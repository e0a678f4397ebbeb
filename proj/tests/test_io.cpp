#include <catch2/catch_amalgamated.hpp>

#include "torsion/io.hpp"

using namespace torsion;

TEST_CASE("parse a small document") {
    std::string doc = R"(
# a lens-like complex over Z_4
group g
relation g^4
cell 0 g0
cell 1 g1
cell 2 g2
cell 3 g3
boundary g1 1*g*g0 + -1*1*g0
boundary g2 1*1*g1 + 1*g*g1 + 1*g^2*g1 + 1*g^3*g1
boundary g3 1*g*g2 + -1*1*g2
)";
    ParsedComplex p = parse_complex(doc);
    REQUIRE(p.complex.group == (AbelianGroup{0, {4}}));
    REQUIRE(validate(p.complex).ok());
    REQUIRE(complexes_equal(p.complex, lens_complex(4)));
}

TEST_CASE("parse errors carry line numbers") {
    SECTION("no group block") {
        REQUIRE_THROWS_AS(parse_complex("cell 0 v\n"), ParseError);
    }
    SECTION("dangling cell reference") {
        std::string doc = "group t\ncell 1 e\nboundary e 1*t*nope\n";
        try {
            parse_complex(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& err) {
            REQUIRE(err.line == 3);
            REQUIRE(std::string(err.what()).find("nope") != std::string::npos);
        }
    }
    SECTION("unknown generator") {
        std::string doc = "group t\ncell 0 v\ncell 1 e\nboundary e 1*z*v\n";
        REQUIRE_THROWS_AS(parse_complex(doc), ParseError);
    }
    SECTION("empty document") {
        REQUIRE_THROWS_AS(parse_complex(""), ParseError);
    }
}

TEST_CASE("render/parse round trip on the builders") {
    std::vector<EquivariantComplex> fixtures = {
        standard_solid_torus(1), standard_solid_torus(3), thickened_torus_complex(),
        local_unknot_exterior_complex(), lens_complex(6)};
    fixtures.push_back(glue(standard_solid_torus(1), FillingData{"p0", "a", "b", "q2", 3}).complex);
    for (const auto& x : fixtures) {
        std::string doc = render_complex(x);
        ParsedComplex p = parse_complex(doc);
        REQUIRE(complexes_equal(p.complex, x));
        // byte-identical re-render
        REQUIRE(render_complex(p.complex) == doc);
    }
}

TEST_CASE("knot presentation files") {
    std::string doc = "generators 2\nrelator x1*x2*x1*x2^-1*x1^-1*x2^-1\n";
    KnotPresentation p = parse_knot(doc);
    REQUIRE(p.ngens == 2);
    REQUIRE(p.relators.size() == 1);
    REQUIRE(p.relators[0].size() == 6);
    Laurent delta = fox_alexander(p);
    Laurent expect(1, 1);
    expect.add_term({2}, Cyclotomic::one(1));
    expect.add_term({1}, Cyclotomic::from_rational(1, -1));
    expect.add_term({0}, Cyclotomic::one(1));
    REQUIRE(delta == expect);
}

TEST_CASE("filling files") {
    FillingData f = parse_filling("# fill\ntorus p0 a b q2\nalpha 3\n");
    REQUIRE(f.zero_cell == "p0");
    REQUIRE(f.a_cell == "a");
    REQUIRE(f.alpha == 3);
    REQUIRE_THROWS_AS(parse_filling("alpha 2\n"), ParseError);
}

TEST_CASE("group words with negative exponents resolve") {
    std::string doc = R"(
group s m
cell 0 v
cell 1 e
boundary e 1*s^-2*m^3*v + -1*1*v
)";
    ParsedComplex p = parse_complex(doc);
    GroupElement g = p.eval_word("s^-2*m^3");
    REQUIRE(g == make_element(p.complex.group, {-2, 3}, {}));
    REQUIRE(p.complex.entry(1, 0, 0) == fundamental(p.complex.group, g));
}

TEST_CASE("shipped fixtures match the builders") {
    std::string dir = TORSION_FIXTURE_DIR;
    auto load = [&](const std::string& f) { return parse_complex(read_file(dir + "/" + f)); };
    REQUIRE(complexes_equal(load("solid_torus_3.tcx").complex, standard_solid_torus(3)));
    REQUIRE(complexes_equal(load("solid_torus.tcx").complex, standard_solid_torus(1)));
    REQUIRE(complexes_equal(load("thickened_torus.tcx").complex, thickened_torus_complex()));
    REQUIRE(complexes_equal(load("local_unknot_exterior.tcx").complex,
                            local_unknot_exterior_complex()));
    REQUIRE(complexes_equal(load("lens_5.tcx").complex, lens_complex(5)));
    for (const char* f : {"solid_torus_3.tcx", "two_curves.tcx", "trefoil_exterior.tcx",
                          "fig8_exterior.tcx", "solid_torus_core_slope.tcx"})
        REQUIRE(validate(load(f).complex).ok());
}

TEST_CASE("parse errors carry columns") {
    std::string doc = "group t\ncell 0 v\ncell 1 e\nboundary e 1*zz*v\n";
    try {
        parse_complex(doc);
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        REQUIRE(err.line == 4);
        REQUIRE(err.column == 14);  // the word inside the term
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "torsion/builders.hpp"
#include "torsion/verify.hpp"

using namespace torsion;
using namespace torsion::testsup;

namespace {

// test-only straight-line evaluation for complexes without singular tags:
// all cells contribute, the Euler offset is applied as a final unit
FieldElem regular_component(const EquivariantComplex& x, const SplitComponent& comp,
                            const EulerStructure& e, const HomologyOrientation& w) {
    MonomialMap psi = component_map(x.group, comp);
    BasedChainComplex<FieldElem> c;
    c.zero = FieldElem::zero(psi.conductor, psi.nvars);
    c.one = FieldElem::one(psi.conductor, psi.nvars);
    c.dims = {x.ncells(0), x.ncells(1), x.ncells(2), x.ncells(3)};
    c.boundary.resize(4);
    c.boundary[0] = Mat<FieldElem>(0, c.dims[0]);
    for (int d = 1; d < 4; ++d) {
        Mat<FieldElem> m(c.dims[d - 1], c.dims[d], c.zero);
        for (int i = 0; i < c.dims[d - 1]; ++i)
            for (int j = 0; j < c.dims[d]; ++j) m(i, j) = psi.apply(x.entry(d, i, j));
        c.boundary[d] = std::move(m);
    }
    auto h = homology(c);
    if (!h.acyclic()) return c.zero;
    FieldElem v = chain_torsion(c, h).value * psi.apply_unit(e.offset);
    return tau0(x, w) < 0 ? -v : v;
}

std::array<std::vector<std::pair<int, int>>, 4> identity_chain_map(const EquivariantComplex& x) {
    std::array<std::vector<std::pair<int, int>>, 4> map;
    for (int d = 0; d < 4; ++d)
        for (int i = 0; i < x.ncells(d); ++i) map[d].push_back({i, 1});
    return map;
}

}  // namespace

TEST_CASE("validate accepts the builders and rejects broken complexes") {
    EquivariantComplex st = standard_solid_torus(3);
    REQUIRE(validate(st).ok());

    SECTION("broken chain condition is reported with cell ids") {
        EquivariantComplex bad = st;
        bad.boundary[3](0, 0) = ring_zero(bad.group);  // drop the q2 term of e3
        Diagnostics d = validate(bad);
        REQUIRE(!d.ok());
        bool mentions = false;
        for (const auto& e : d.errors)
            if (e.find("e3") != std::string::npos) mentions = true;
        REQUIRE(mentions);
    }
    SECTION("wrong configuration boundary is reported") {
        EquivariantComplex bad = st;
        // d(e1_2) = (h^2 - 1) e0
        GroupElement h2 = group_pow(bad.group, bad.curves[0].curve_class, 2);
        bad.boundary[1](1, 3) = fundamental(bad.group, h2);
        Diagnostics d = validate(bad);
        REQUIRE(!d.ok());
    }
}

TEST_CASE("euler structure action") {
    EquivariantComplex st = standard_solid_torus(3);
    EulerStructure e = reference_euler(st);
    GroupElement h = make_element(st.group, {2}, {1});
    GroupElement h2 = make_element(st.group, {-1}, {2});
    REQUIRE(euler_act(st, identity_element(st.group), e).offset == e.offset);
    EulerStructure a = euler_act(st, h, euler_act(st, h2, e));
    EulerStructure b = euler_act(st, group_mul(st.group, h, h2), e);
    REQUIRE(a.offset == b.offset);
    REQUIRE(!(euler_act(st, h, e).offset == e.offset));
}

TEST_CASE("underlying real complex of the solid torus") {
    for (long long alpha : {1LL, 3LL}) {
        EquivariantComplex st = standard_solid_torus(alpha);
        auto [c, h] = underlying_real_complex(st);
        REQUIRE(h.ranks == std::vector<int>{1, 1, 0, 0});
    }
}

TEST_CASE("twist drops exactly the singular cells with nontrivial character") {
    EquivariantComplex st = standard_solid_torus(3);
    auto comps = split_components(st.group);
    REQUIRE(comps.size() == 2);
    EulerStructure e = reference_euler(st);

    BasedChainComplex<FieldElem> c0 = twist(st, comps[0], e);
    REQUIRE(c0.dims == std::vector<int>{2, 4, 3, 1});  // trivial character keeps everything

    BasedChainComplex<FieldElem> c1 = twist(st, comps[1], e);
    REQUIRE(c1.dims == std::vector<int>{1, 3, 3, 1});  // e0 and the core 1-cell vanish
    c1.check_valid();
}

TEST_CASE("torsion of the equivariant solid torus over Z x Z_3") {
    EquivariantComplex st = standard_solid_torus(3);
    EulerStructure e = reference_euler(st);
    HomologyOrientation w;
    TorsionVector tv = orbifold_torsion(st, e, w);
    REQUIRE(tv.values.size() == 2);
    // hand evaluation: trivial component -(t-1)^{-1}, twisted component -1
    FieldElem t = FieldElem::variable(1, 1, 0);
    REQUIRE(tv.values[0] == -(FieldElem::one(1, 1) / (t - FieldElem::one(1, 1))));
    REQUIRE(tv.values[1] == -FieldElem::one(3, 1));
}

TEST_CASE("lens space torsion values") {
    for (long long p : {5LL, 6LL}) {
        EquivariantComplex lens = lens_complex(p);
        TorsionVector tv = orbifold_torsion(lens, reference_euler(lens), HomologyOrientation{});
        auto comps = split_components(lens.group);
        for (size_t l = 0; l < comps.size(); ++l) {
            long long n = comps[l].conductor();
            if (n == 1) {
                REQUIRE(tv.values[l].is_zero());  // real complex is not acyclic
            } else {
                long long k = comps[l].cls.zeta_power(0, lens.group);
                FieldElem z(Laurent::constant(n, 0, Cyclotomic::zeta_power(n, k)));
                FieldElem expect = (z - FieldElem::one(n, 0)).pow(-2);
                REQUIRE(tv.values[l] == expect);
            }
        }
    }
}

TEST_CASE("tau0 sign covariance") {
    EquivariantComplex st = standard_solid_torus(3);
    HomologyOrientation w;
    REQUIRE(tau0(st, w) * tau0(st, w.flipped()) == -1);
    TorsionVector a = orbifold_torsion(st, reference_euler(st), w);
    TorsionVector b = orbifold_torsion(st, reference_euler(st), w.flipped());
    for (size_t l = 0; l < a.values.size(); ++l) REQUIRE(a.values[l] == -b.values[l]);
}

TEST_CASE("euler equivariance: tau(h.e) = phi(h) tau(e)") {
    EquivariantComplex st = standard_solid_torus(3);
    HomologyOrientation w;
    EulerStructure e = reference_euler(st);
    TorsionVector base = orbifold_torsion(st, e, w);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 6; ++trial) {
        GroupElement h = make_element(st.group, {d(rng)}, {d(rng)});
        TorsionVector moved = orbifold_torsion(st, euler_act(st, h, e), w);
        for (size_t l = 0; l < base.values.size(); ++l) {
            MonomialMap phi_l = component_map(st.group, base.components[l]);
            REQUIRE(moved.values[l] == base.values[l] * phi_l.apply_unit(h));
        }
    }
}

TEST_CASE("invariance under cell order, orientation, and equivalent lifts") {
    std::mt19937_64 rng(4242);
    std::vector<EquivariantComplex> fixtures;
    fixtures.push_back(standard_solid_torus(3));
    {
        EquivariantComplex st1 = standard_solid_torus(1);
        EquivariantComplex flipped = flip_cell(st1, 2, 0);
        FillingData f{"p0", "b", "a", "q2", 3};
        fixtures.push_back(glue(flipped, f).complex);  // (S^3, unknot, 3)
    }
    fixtures.push_back(lens_complex(4));

    for (const auto& x : fixtures) {
        EulerStructure e = reference_euler(x);
        HomologyOrientation w;
        TorsionVector base = orbifold_torsion(x, e, w);

        // permuting free cells of a dimension
        for (int d = 0; d < 4; ++d) {
            std::vector<int> frees;
            for (int i = 0; i < x.ncells(d); ++i)
                if (x.cell_is_free(d, i)) frees.push_back(i);
            if (frees.size() < 2) continue;
            int aidx = frees[rng() % frees.size()], bidx = frees[rng() % frees.size()];
            if (aidx == bidx) continue;
            std::vector<int> perm(x.ncells(d));
            std::iota(perm.begin(), perm.end(), 0);
            std::swap(perm[aidx], perm[bidx]);
            EquivariantComplex y = permute_cells(x, d, perm);
            auto m2 = identity_chain_map(y);
            for (int i = 0; i < y.ncells(d); ++i) m2[d][i] = {perm[i], 1};
            HomologyOrientation w2 = transport_orientation(x, y, m2, w);
            TorsionVector moved = orbifold_torsion(y, e, w2);
            REQUIRE(moved.values == base.values);
        }

        // flipping the orientation of a free cell
        for (int d = 0; d < 4; ++d) {
            std::vector<int> frees;
            for (int i = 0; i < x.ncells(d); ++i)
                if (x.cell_is_free(d, i)) frees.push_back(i);
            if (frees.empty()) continue;
            int idx = frees[rng() % frees.size()];
            EquivariantComplex y = flip_cell(x, d, idx);
            auto m2 = identity_chain_map(y);
            m2[d][idx] = {idx, -1};
            HomologyOrientation w2 = transport_orientation(x, y, m2, w);
            TorsionVector moved = orbifold_torsion(y, e, w2);
            REQUIRE(moved.values == base.values);
        }

        // equivalent lift: translate two free cells so the signed product is 1
        {
            std::vector<std::pair<int, int>> frees;
            for (int d = 0; d < 4; ++d)
                for (int i = 0; i < x.ncells(d); ++i)
                    if (x.cell_is_free(d, i)) frees.push_back({d, i});
            if (frees.size() >= 2) {
                for (int trial = 0; trial < 4; ++trial) {
                    auto [d1, i1] = frees[rng() % frees.size()];
                    auto [d2, i2] = frees[rng() % frees.size()];
                    if (d1 == d2 && i1 == i2) continue;
                    GroupElement g = identity_element(x.group);
                    if (x.group.free_rank > 0) g.free_part[0] = 1 + (int)(rng() % 2);
                    if (x.group.torsion_rank() > 0) g.torsion_part[0] = 1;
                    if (is_identity(g)) continue;
                    // the structure changes by g^{(-1)^{d1}} g2^{(-1)^{d2}}; cancel
                    GroupElement g2 = (d1 % 2 == d2 % 2) ? group_inv(x.group, g) : g;
                    EquivariantComplex y = translate_cell_lift(x, d1, i1, g);
                    y = translate_cell_lift(y, d2, i2, g2);
                    REQUIRE(validate(y).ok());
                    TorsionVector moved = orbifold_torsion(y, e, w);
                    REQUIRE(moved.values == base.values);
                }
            }
        }
    }
}

TEST_CASE("regular path agrees on complexes without singular set") {
    for (auto x : {standard_solid_torus(1), lens_complex(6), thickened_torus_complex()}) {
        EulerStructure e = reference_euler(x);
        GroupElement off = identity_element(x.group);
        if (x.group.free_rank > 0) off.free_part[0] = 2;
        if (x.group.torsion_rank() > 0) off.torsion_part[0] = 1;
        for (const EulerStructure& eu : {e, EulerStructure{off}}) {
            HomologyOrientation w;
            TorsionVector tv = orbifold_torsion(x, eu, w);
            for (size_t l = 0; l < tv.values.size(); ++l)
                REQUIRE(tv.values[l] == regular_component(x, tv.components[l], eu, w));
        }
    }
}

TEST_CASE("euler_to_underlying") {
    SECTION("no singular set: identity map") {
        EquivariantComplex x = lens_complex(5);
        EulerStructure e{make_element(x.group, {}, {3})};
        auto [y, e2] = euler_to_underlying(x, e);
        REQUIRE(e2.offset == e.offset);
        REQUIRE(y.curves.empty());
    }
    SECTION("singular curve with trivial meridian class") {
        // fill the solid torus along its own meridian slope: the filling core
        // becomes singular with meridian class 1
        EquivariantComplex st = standard_solid_torus(1);
        FillingData f{"p0", "a", "b", "q2", 3};
        GluingResult res = glue(st, f);
        const EquivariantComplex& y = res.complex;
        REQUIRE(y.curves.size() == 1);
        REQUIRE(is_identity(y.curves[0].meridian));
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 12; ++trial) {
            GroupElement h = identity_element(y.group);
            h.free_part[0] = (long long)(rng() % 9) - 4;
            EulerStructure e{h};
            auto [underlying, e2] = euler_to_underlying(y, e);
            REQUIRE(underlying.curves.empty());
            REQUIRE(e2.offset == h);
            // equivariance with respect to the canonical identification
            GroupElement g = identity_element(y.group);
            g.free_part[0] = 1;
            auto [underlying2, e3] = euler_to_underlying(y, euler_act(y, g, e));
            REQUIRE(e3.offset == group_mul(y.group, g, e2.offset));
        }
    }
    SECTION("precondition failure") {
        EquivariantComplex st = standard_solid_torus(3);
        REQUIRE_THROWS_AS(euler_to_underlying(st, reference_euler(st)), std::invalid_argument);
    }
}

// acceptance suite: every criterion is evaluated exactly, one line per
// criterion; exits nonzero on any failure

#include <functional>
#include <iostream>
#include <random>

#include "support.hpp"
#include "torsion/io.hpp"
#include "torsion/verify.hpp"

using namespace torsion;
using namespace torsion::testsup;

namespace {

std::string g_fixture_dir = "tests/fixtures";

int g_pass = 0, g_fail = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "criterion " << index << ": " << name << " ... " << (ok ? "PASS" : "FAIL");
    if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    (ok ? g_pass : g_fail)++;
}

EquivariantComplex fixture_complex(const std::string& file) {
    ParsedComplex p = parse_complex(read_file(g_fixture_dir + "/" + file));
    return p.complex;
}

// ---------------------------------------------------------------- criterion 1
bool torsion_definition_suite() {
    // real relative complex of the filling: tau = -1
    {
        BasedChainComplex<Rat> c;
        c.zero = Rat(0);
        c.one = Rat(1);
        c.dims = {1, 2, 2, 1};
        c.boundary.assign(4, Mat<Rat>());
        c.boundary[0] = Mat<Rat>(0, 1);
        c.boundary[1] = Mat<Rat>(1, 2, Rat(0));
        c.boundary[1](0, 0) = 1;
        c.boundary[2] = Mat<Rat>(2, 2, Rat(0));
        c.boundary[2](1, 0) = 1;
        c.boundary[3] = Mat<Rat>(2, 1, Rat(0));
        auto h = homology(c);
        if (h.ranks != std::vector<int>{0, 0, 1, 1}) return false;
        if (!(chain_torsion(c, h).value == Rat(-1))) return false;
    }
    // twisted relative complex, phi(mu) = zeta_3 != 1: acyclic with tau = 1
    {
        long long n = 3;
        FieldElem zero = FieldElem::zero(n, 1), one = FieldElem::one(n, 1);
        FieldElem x = FieldElem::variable(n, 1, 0);
        FieldElem u = FieldElem(Laurent::constant(n, 1, Cyclotomic::zeta_power(n, 1)));
        BasedChainComplex<FieldElem> c;
        c.zero = zero;
        c.one = one;
        c.dims = {0, 1, 2, 1};
        c.boundary.assign(4, Mat<FieldElem>());
        c.boundary[0] = Mat<FieldElem>(0, 0);
        c.boundary[1] = Mat<FieldElem>(0, 1);
        c.boundary[2] = Mat<FieldElem>(1, 2, zero);
        c.boundary[2](0, 0) = one - x;
        c.boundary[2](0, 1) = u - one;
        c.boundary[3] = Mat<FieldElem>(2, 1, zero);
        c.boundary[3](0, 0) = u - one;
        c.boundary[3](1, 0) = x - one;
        auto h = homology(c);
        if (!h.acyclic()) return false;
        if (!(chain_torsion(c, h).value == one)) return false;
    }
    // twisted relative complex, phi(mu) = 1, phi(h) = x != 1: tau = (x-1)^{-1}
    {
        FieldElem zero = qt_zero(), one = qt_one(), x = qt_t();
        BasedChainComplex<FieldElem> c;
        c.zero = zero;
        c.one = one;
        c.dims = {1, 2, 2, 1};
        c.boundary.assign(4, Mat<FieldElem>());
        c.boundary[0] = Mat<FieldElem>(0, 1);
        c.boundary[1] = Mat<FieldElem>(1, 2, zero);
        c.boundary[1](0, 0) = one;
        c.boundary[1](0, 1) = x - one;
        c.boundary[2] = Mat<FieldElem>(2, 2, zero);
        c.boundary[2](0, 0) = one - x;
        c.boundary[2](1, 0) = one;
        c.boundary[3] = Mat<FieldElem>(2, 1, zero);
        c.boundary[3](1, 0) = x - one;
        auto h = homology(c);
        if (!h.acyclic()) return false;
        if (!(chain_torsion(c, h).value == one / (x - one))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2
bool b_independence_and_covariance() {
    std::mt19937_64 rng(0xACCE55);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + (int)(rng() % 3);  // length up to 4
        std::vector<int> r;
        for (int d = 0; d < m; ++d) r.push_back((int)(rng() % 3));
        auto c = random_acyclic_complex(r, rng);
        for (int d : c.dims)
            if (d > 5) return false;
        auto h = homology(c);
        if (!h.acyclic()) return false;
        FieldElem base = chain_torsion(c, h).value;
        for (int k = 0; k < 5; ++k) {
            std::vector<std::vector<int>> orders(c.dims.size());
            for (int d = 1; d <= c.length(); ++d) {
                std::vector<int> ord(c.dims[d]);
                std::iota(ord.begin(), ord.end(), 0);
                std::shuffle(ord.begin(), ord.end(), rng);
                orders[d] = ord;
            }
            if (!(chain_torsion(c, h, orders).value == base)) return false;
        }
        // swap covariance
        {
            int deg = (int)(rng() % (m + 1));
            if (c.dims[deg] >= 2) {
                int i = (int)(rng() % c.dims[deg]), j = (int)(rng() % c.dims[deg]);
                if (i != j) {
                    auto c2 = c;
                    if (deg >= 1) c2.boundary[deg].swap_cols(i, j);
                    if (deg < m) c2.boundary[deg + 1].swap_rows(i, j);
                    FieldElem direct = chain_torsion(c2, homology(c2)).value;
                    std::vector<Mat<FieldElem>> ch;
                    for (int d = 0; d <= m; ++d)
                        ch.push_back(Mat<FieldElem>::identity(c.dims[d], qt_one(), qt_zero()));
                    ch[deg](i, i) = ch[deg](j, j) = qt_zero();
                    ch[deg](i, j) = ch[deg](j, i) = qt_one();
                    if (!(direct == rebase_torsion(base, ch, qt_zero(), qt_one()))) return false;
                    if (!(direct == -base)) return false;
                }
            }
        }
        // scale covariance
        {
            int deg = (int)(rng() % (m + 1));
            if (c.dims[deg] >= 1) {
                int i = (int)(rng() % c.dims[deg]);
                FieldElem lam = qt_t() + qt_c(1 + (int)(rng() % 3));
                auto c2 = c;
                if (deg >= 1)
                    for (int rr = 0; rr < c.dims[deg - 1]; ++rr)
                        c2.boundary[deg](rr, i) = c2.boundary[deg](rr, i) * lam;
                if (deg < m)
                    for (int cc = 0; cc < c.dims[deg + 1]; ++cc)
                        c2.boundary[deg + 1](i, cc) = c2.boundary[deg + 1](i, cc) / lam;
                FieldElem direct = chain_torsion(c2, homology(c2)).value;
                std::vector<Mat<FieldElem>> ch;
                for (int d = 0; d <= m; ++d)
                    ch.push_back(Mat<FieldElem>::identity(c.dims[d], qt_one(), qt_zero()));
                ch[deg](i, i) = qt_one() / lam;
                if (!(direct == rebase_torsion(base, ch, qt_zero(), qt_one()))) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3
bool multiplicativity_suite() {
    std::mt19937_64 rng(0x5E5);
    for (int trial = 0; trial < 100; ++trial) {
        auto pair = random_pair(rng);
        auto ht = homology(pair.total);
        auto hs = homology(pair.sub());
        auto hq = homology(pair.quotient());
        if (!multiplicativity_check(pair, ht, hs, hq)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
bool invariance_suite() {
    std::mt19937_64 rng(0x1437);
    std::vector<EquivariantComplex> fixtures;
    fixtures.push_back(fixture_complex("solid_torus_3.tcx"));
    fixtures.push_back(
        glue(fixture_complex("solid_torus_core_slope.tcx"), FillingData{"p0", "b", "a", "q2", 3})
            .complex);
    fixtures.push_back(fixture_complex("two_curves.tcx"));

    for (const auto& x : fixtures) {
        EulerStructure e = reference_euler(x);
        HomologyOrientation w;
        TorsionVector base = orbifold_torsion(x, e, w);

        std::vector<std::pair<int, int>> frees;
        for (int d = 0; d < 4; ++d)
            for (int i = 0; i < x.ncells(d); ++i)
                if (x.cell_is_free(d, i)) frees.push_back({d, i});

        for (int mod = 0; mod < 20; ++mod) {
            int kind = mod % 3;
            if (kind == 0) {
                // random permutation of the free cells of one dimension
                int d = (int)(rng() % 4);
                std::vector<int> fr;
                for (int i = 0; i < x.ncells(d); ++i)
                    if (x.cell_is_free(d, i)) fr.push_back(i);
                if (fr.size() < 2) continue;
                std::vector<int> shuffled = fr;
                std::shuffle(shuffled.begin(), shuffled.end(), rng);
                std::vector<int> perm(x.ncells(d));
                std::iota(perm.begin(), perm.end(), 0);
                for (size_t k = 0; k < fr.size(); ++k) perm[fr[k]] = shuffled[k];
                EquivariantComplex y = permute_cells(x, d, perm);
                std::array<std::vector<std::pair<int, int>>, 4> m2;
                for (int dd = 0; dd < 4; ++dd)
                    for (int i = 0; i < y.ncells(dd); ++i)
                        m2[dd].push_back({dd == d ? perm[i] : i, 1});
                HomologyOrientation w2 = transport_orientation(x, y, m2, w);
                if (!(orbifold_torsion(y, e, w2).values == base.values)) return false;
            } else if (kind == 1) {
                auto [d, i] = frees[rng() % frees.size()];
                EquivariantComplex y = flip_cell(x, d, i);
                std::array<std::vector<std::pair<int, int>>, 4> m2;
                for (int dd = 0; dd < 4; ++dd)
                    for (int ii = 0; ii < y.ncells(dd); ++ii)
                        m2[dd].push_back({ii, dd == d && ii == i ? -1 : 1});
                HomologyOrientation w2 = transport_orientation(x, y, m2, w);
                if (!(orbifold_torsion(y, e, w2).values == base.values)) return false;
            } else {
                auto [d1, i1] = frees[rng() % frees.size()];
                auto [d2, i2] = frees[rng() % frees.size()];
                if (d1 == d2 && i1 == i2) continue;
                GroupElement g = identity_element(x.group);
                if (x.group.free_rank > 0) g.free_part[0] = 1 + (long long)(rng() % 2);
                if (x.group.torsion_rank() > 0) g.torsion_part[0] = 1;
                if (is_identity(g)) continue;
                GroupElement g2 = (d1 % 2 == d2 % 2) ? group_inv(x.group, g) : g;
                EquivariantComplex y = translate_cell_lift(x, d1, i1, g);
                y = translate_cell_lift(y, d2, i2, g2);
                if (!validate(y).ok()) return false;
                if (!(orbifold_torsion(y, e, w).values == base.values)) return false;
            }
        }
        // equivariance for 20 random h
        std::uniform_int_distribution<int> dd(-4, 4);
        for (int trial = 0; trial < 20; ++trial) {
            GroupElement h = identity_element(x.group);
            for (auto& v : h.free_part) v = dd(rng);
            for (int j = 0; j < x.group.torsion_rank(); ++j)
                h.torsion_part[j] = mod_pos(dd(rng), x.group.invariant_factors[j]);
            TorsionVector moved = orbifold_torsion(x, euler_act(x, h, e), w);
            for (size_t l = 0; l < base.values.size(); ++l) {
                MonomialMap phi_l = component_map(x.group, base.components[l]);
                if (!(moved.values[l] == base.values[l] * phi_l.apply_unit(h))) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5
bool gluing_suite(std::string& detail) {
    bool saw1 = false, saw2 = false, saw3_live = false;
    auto run = [&](const EquivariantComplex& e, const FillingData& f,
                   const EulerStructure& eu) -> bool {
        VerifyReport rep = verify_gluing(e, f, eu, HomologyOrientation{});
        if (!rep.all_ok()) {
            detail = "mismatch at alpha=" + std::to_string(f.alpha) + "\n" + rep.render();
            return false;
        }
        for (const auto& rec : rep.records) {
            if (rec.kind == GluingCase::case1) saw1 = true;
            if (rec.kind == GluingCase::case2) saw2 = true;
            if (rec.kind == GluingCase::case3 && !rec.lhs.is_zero()) saw3_live = true;
        }
        return true;
    };
    EquivariantComplex st = fixture_complex("solid_torus.tcx");
    EquivariantComplex st_core = fixture_complex("solid_torus_core_slope.tcx");
    EquivariantComplex tt = fixture_complex("thickened_torus.tcx");
    EquivariantComplex lue = fixture_complex("local_unknot_exterior.tcx");
    for (long long alpha : {1LL, 2LL, 3LL}) {
        if (!run(st, FillingData{"p0", "a", "b", "q2", alpha},
                 EulerStructure{make_element(st.group, {(long long)(alpha % 2)}, {})}))
            return false;
        if (!run(st_core, FillingData{"p0", "b", "a", "q2", alpha}, reference_euler(st_core)))
            return false;
        if (!run(tt, FillingData{"v0", "a0", "b0", "q0", alpha},
                 EulerStructure{make_element(tt.group, {0, 1}, {})}))
            return false;
        if (!run(tt, FillingData{"v1", "a1", "b1", "q1", alpha}, reference_euler(tt))) return false;
    }
    for (long long alpha : {1LL, 3LL})
        if (!run(lue, FillingData{"pQ", "dQ", "rQ", "tQ", alpha},
                 EulerStructure{make_element(lue.group, {1, 0}, {})}))
            return false;
    if (!saw1 || !saw2 || !saw3_live) {
        detail = "cases covered: 1=" + std::to_string(saw1) + " 2=" + std::to_string(saw2) +
                 " 3(live)=" + std::to_string(saw3_live);
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 6
bool removal_suite(std::string& detail) {
    EquivariantComplex y = fixture_complex("two_curves.tcx");
    if (y.curves.size() != 2) {
        detail = "fixture does not carry two curves";
        return false;
    }
    for (int k = 0; k < 2; ++k) {
        VerifyReport rep = verify_removal(y, k, EulerStructure{make_element(y.group, {1}, {0})},
                                          HomologyOrientation{});
        if (!rep.all_ok() || rep.records.empty()) {
            detail = rep.render();
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7
bool decomposition_suite(std::string& detail) {
    EquivariantComplex e = fixture_complex("local_unknot_exterior.tcx");
    FillingData f = parse_filling(read_file(g_fixture_dir + "/fill_local_3.fil"));
    if (f.alpha != 3) {
        detail = "fixture filling is not alpha = 3";
        return false;
    }
    VerifyReport rep = verify_underlying_decomposition(
        e, f, EulerStructure{make_element(e.group, {1, 0}, {})}, HomologyOrientation{});
    bool count_ok = false, nonvacuous = false;
    for (const auto& r : rep.remarks)
        if (r.find("3 to 1") != std::string::npos) count_ok = true;
    for (const auto& r : rep.records)
        if (!r.lhs.is_zero()) nonvacuous = true;
    if (!rep.all_ok() || !count_ok || !nonvacuous) {
        detail = rep.render();
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool milnor_suite(std::string& detail) {
    for (std::string knot : {"trefoil", "fig8"}) {
        KnotPresentation p = parse_knot(read_file(g_fixture_dir + "/" + knot + ".knt"));
        Laurent delta = fox_alexander(p);
        // expected oracle values
        Laurent expect(1, 1);
        expect.add_term({2}, Cyclotomic::one(1));
        expect.add_term({1}, Cyclotomic::from_rational(1, knot == "trefoil" ? -1 : -3));
        expect.add_term({0}, Cyclotomic::one(1));
        if (!(delta == expect)) {
            detail = knot + ": oracle polynomial mismatch";
            return false;
        }
        EquivariantComplex e = fixture_complex(knot + "_exterior.tcx");
        TorsionVector tv = orbifold_torsion(e, reference_euler(e), HomologyOrientation{});
        if (tv.values.size() != 1 || tv.values[0].is_zero()) {
            detail = knot + ": exterior torsion vanished";
            return false;
        }
        FieldElem t = FieldElem::variable(1, 1, 0);
        FieldElem unit = tv.values[0] * (t - FieldElem::one(1, 1)) / FieldElem(delta);
        if (!unit.is_polynomial() || !unit.num().is_monomial()) {
            detail = knot + ": ratio is not a monomial unit: " + unit.to_string();
            return false;
        }
        Cyclotomic c = unit.num().leading_coefficient();
        if (!c.is_rational() || !(c.rational_part() == 1 || c.rational_part() == -1)) {
            detail = knot + ": unit is not +-t^k";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 9
bool euler_bijection_suite(std::string& detail) {
    // finite group: exhaustive
    {
        EquivariantComplex lens = fixture_complex("lens_5.tcx");
        long long n = lens.group.order();
        if (n != 5) {
            detail = "lens fixture group is not Z_5";
            return false;
        }
        for (long long k = 0; k < n; ++k) {
            EulerStructure e{make_element(lens.group, {}, {k})};
            auto [uy, ue] = euler_to_underlying(lens, e);
            if (!(ue.offset == e.offset)) return false;
            for (long long j = 0; j < n; ++j) {
                GroupElement h = make_element(lens.group, {}, {j});
                auto [uy2, ue2] = euler_to_underlying(lens, euler_act(lens, h, e));
                if (!(ue2.offset == group_mul(lens.group, h, ue.offset))) return false;
            }
        }
    }
    // infinite group with a singular curve whose meridian class is trivial
    {
        EquivariantComplex st = fixture_complex("solid_torus.tcx");
        EquivariantComplex y = glue(st, FillingData{"p0", "a", "b", "q2", 3}).complex;
        if (y.curves.size() != 1 || !is_identity(y.curves[0].meridian)) {
            detail = "singular fixture lacks a trivial-meridian curve";
            return false;
        }
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<long long> d(-20, 20);
        std::set<std::vector<long long>> seen;
        for (int trial = 0; trial < 50; ++trial) {
            EulerStructure e{make_element(y.group, {d(rng)}, {})};
            GroupElement h = make_element(y.group, {d(rng)}, {});
            auto [uy, ue] = euler_to_underlying(y, e);
            auto [uy2, ue2] = euler_to_underlying(y, euler_act(y, h, e));
            if (!(ue.offset == e.offset)) return false;
            if (!(ue2.offset == group_mul(y.group, h, ue.offset))) return false;
            seen.insert(ue.offset.free_part);  // injectivity on the sampled set
        }
        if (seen.size() < 10) {
            detail = "sampled offsets collapsed";
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_fixture_dir = argv[1];
    std::string detail;

    report(1, "torsion definition suite (relative complexes reproduce exactly)",
           torsion_definition_suite());
    report(2, "b_i-independence and basis covariance on 200 random acyclic complexes",
           b_independence_and_covariance());
    report(3, "multiplicativity on 100 random compatibly based pairs", multiplicativity_suite());
    report(4, "orbifold invariance and Euler equivariance on 3 fixtures", invariance_suite());
    detail.clear();
    report(5, "gluing formulas across the example matrix (cases 1, 2, 3)", gluing_suite(detail),
           detail);
    detail.clear();
    report(6, "curve removal on the two-curve fixture", removal_suite(detail), detail);
    detail.clear();
    report(7, "underlying decomposition for the local unknot (alpha = 3)",
           decomposition_suite(detail), detail);
    detail.clear();
    report(8, "Milnor comparison against the Fox-calculus oracle", milnor_suite(detail), detail);
    detail.clear();
    report(9, "Euler-structure comparison with the underlying manifold", euler_bijection_suite(detail),
           detail);

    std::cout << "acceptance: " << g_pass << "/" << (g_pass + g_fail) << " criteria passed"
              << std::endl;
    return g_fail == 0 ? 0 : 1;
}

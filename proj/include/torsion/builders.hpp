#pragma once

#include <set>
#include <string>
#include <vector>

#include "torsion/equivariant.hpp"
#include "torsion/fox.hpp"

namespace torsion {

// ---------------------------------------------------------------------------
// standard pieces
// ---------------------------------------------------------------------------

/// Cell structure of the (equivariant) solid torus: boundary torus cells
/// p0, a, b, q2 and interior cells e0, e1_1, e1_2 (core), e2_1, e2_2
/// (meridian disk), e3. Boundary conventions: the core is oriented along h,
/// the meridian disk against a, and the boundary-torus coefficients make the
/// chain condition hold on the nose.
///   da = (mu-1) p0          db = (h-1) p0
///   d(e1_1) = e0 - p0       d(e1_2) = (h-1) e0
///   d(q2)   = (1-h) a + (mu-1) b
///   d(e2_1) = -b + (1-h) e1_1 + e1_2
///   d(e2_2) = a + (mu-1) e1_1
///   d(e3)   = q2 + (mu-1) e2_1 + (h-1) e2_2
/// For alpha >= 2 the cells e0, e1_2 are singular with stabilizer <mu>.
inline EquivariantComplex solid_torus_complex(long long alpha, const AbelianGroup& group,
                                              const GroupElement& h, const GroupElement& mu) {
    if (alpha < 1) throw std::invalid_argument("solid torus: multiplicity must be >= 1");
    if (!is_identity(group_pow(group, mu, alpha)))
        throw std::invalid_argument("solid torus: mu^alpha is not the identity");
    EquivariantComplex x;
    x.group = group;
    x.cells[0] = {{"p0", -1}, {"e0", alpha >= 2 ? 0 : -1}};
    x.cells[1] = {{"a", -1}, {"b", -1}, {"e1_1", -1}, {"e1_2", alpha >= 2 ? 0 : -1}};
    x.cells[2] = {{"q2", -1}, {"e2_1", -1}, {"e2_2", -1}};
    x.cells[3] = {{"e3", -1}};
    if (alpha >= 2) x.curves.push_back(SingularCurve{alpha, mu, h, 1, 3});

    GroupRingElement z = ring_zero(group), one = ring_one(group);
    GroupRingElement hm1 = fundamental(group, h), mm1 = fundamental(group, mu);

    Mat<GroupRingElement> d1(2, 4, z), d2(4, 3, z), d3(3, 1, z);
    d1(0, 0) = mm1;                // a
    d1(0, 1) = hm1;                // b
    d1(0, 2) = -one;               // e1_1 -> -p0
    d1(1, 2) = one;                // e1_1 -> +e0
    d1(1, 3) = hm1;                // e1_2
    d2(0, 0) = -hm1;               // q2 -> (1-h) a
    d2(1, 0) = mm1;                // q2 -> (mu-1) b
    d2(1, 1) = -one;               // e2_1 -> -b
    d2(2, 1) = -hm1;               // e2_1 -> (1-h) e1_1
    d2(3, 1) = one;                // e2_1 -> e1_2
    d2(0, 2) = one;                // e2_2 -> a
    d2(2, 2) = mm1;                // e2_2 -> (mu-1) e1_1
    d3(0, 0) = one;                // e3 -> q2
    d3(1, 0) = mm1;                // e3 -> (mu-1) e2_1
    d3(2, 0) = hm1;                // e3 -> (h-1) e2_2
    x.boundary[1] = std::move(d1);
    x.boundary[2] = std::move(d2);
    x.boundary[3] = std::move(d3);
    x.boundary[0] = Mat<GroupRingElement>(0, 2, z);
    require_valid(x);
    return x;
}

/// Standalone equivariant solid torus over Z<h> x Z_alpha<mu>.
inline EquivariantComplex standard_solid_torus(long long alpha) {
    if (alpha == 1) {
        AbelianGroup g{1, {}};
        return solid_torus_complex(1, g, make_element(g, {1}, {}), identity_element(g));
    }
    AbelianGroup g{1, {alpha}};
    return solid_torus_complex(alpha, g, make_element(g, {1}, {0}), make_element(g, {0}, {1}));
}

/// T^2 x I over Z^2 = <x> + <y>: two boundary tori (v0,a0,b0,q0) and
/// (v1,a1,b1,q1) joined by product cells c = v x I, A = a x I, B = b x I,
/// Q = q x I.
inline EquivariantComplex thickened_torus_complex() {
    AbelianGroup g{2, {}};
    GroupElement gx = make_element(g, {1, 0}, {});
    GroupElement gy = make_element(g, {0, 1}, {});
    GroupRingElement z = ring_zero(g), one = ring_one(g);
    GroupRingElement xm1 = fundamental(g, gx), ym1 = fundamental(g, gy);

    EquivariantComplex t;
    t.group = g;
    t.cells[0] = {{"v0", -1}, {"v1", -1}};
    t.cells[1] = {{"a0", -1}, {"b0", -1}, {"a1", -1}, {"b1", -1}, {"c", -1}};
    t.cells[2] = {{"q0", -1}, {"q1", -1}, {"A", -1}, {"B", -1}};
    t.cells[3] = {{"Q", -1}};

    Mat<GroupRingElement> d1(2, 5, z), d2(5, 4, z), d3(4, 1, z);
    d1(0, 0) = xm1;   // a0
    d1(0, 1) = ym1;   // b0
    d1(1, 2) = xm1;   // a1
    d1(1, 3) = ym1;   // b1
    d1(0, 4) = -one;  // c: v1 - v0
    d1(1, 4) = one;
    d2(0, 0) = -ym1;  // q0 = (1-y) a0 + (x-1) b0
    d2(1, 0) = xm1;
    d2(2, 1) = -ym1;  // q1
    d2(3, 1) = xm1;
    d2(0, 2) = one;   // A = a0 - a1 + (x-1) c
    d2(2, 2) = -one;
    d2(4, 2) = xm1;
    d2(1, 3) = one;   // B = b0 - b1 + (y-1) c
    d2(3, 3) = -one;
    d2(4, 3) = ym1;
    d3(0, 0) = one;   // Q = q0 - q1 + (y-1) A + (1-x) B
    d3(1, 0) = -one;
    d3(2, 0) = ym1;
    d3(3, 0) = -xm1;
    t.boundary[1] = std::move(d1);
    t.boundary[2] = std::move(d2);
    t.boundary[3] = std::move(d3);
    t.boundary[0] = Mat<GroupRingElement>(0, 2, z);
    require_valid(t);
    return t;
}

/// Closed complex with H = Z_p and one cell in every dimension (the familiar
/// p-fold quotient of S^3).
inline EquivariantComplex lens_complex(long long p) {
    AbelianGroup g{0, {p}};
    GroupElement gen = make_element(g, {}, {1});
    GroupRingElement z = ring_zero(g);
    EquivariantComplex x;
    x.group = g;
    x.cells[0] = {{"g0", -1}};
    x.cells[1] = {{"g1", -1}};
    x.cells[2] = {{"g2", -1}};
    x.cells[3] = {{"g3", -1}};
    GroupRingElement norm = ring_zero(g);
    for (long long k = 0; k < p; ++k) norm.add_term(group_pow(g, gen, k), 1);
    x.boundary[0] = Mat<GroupRingElement>(0, 1, z);
    x.boundary[1] = Mat<GroupRingElement>(1, 1, fundamental(g, gen));
    x.boundary[2] = Mat<GroupRingElement>(1, 1, norm);
    x.boundary[3] = Mat<GroupRingElement>(1, 1, fundamental(g, gen));
    require_valid(x);
    return x;
}

/// Exterior of an unknot contained in a ball inside S^1 x S^2, as a genuine
/// CW structure over H_1 = Z<s> + Z<m> (m the meridian of the unknot). Built
/// from a solid torus V, a shell W = V_2 minus a ball (V union V_2 being
/// S^1 x S^2 glued along their common torus), and a second shell Q around
/// the drilled unknot, sharing the sphere wall with W. The boundary torus of
/// the result is (pQ, dQ, rQ, tQ) with meridian class m and longitude class
/// 1.
inline EquivariantComplex local_unknot_exterior_complex() {
    AbelianGroup g{2, {}};
    GroupElement gs = make_element(g, {1, 0}, {});
    GroupElement gm = make_element(g, {0, 1}, {});
    GroupElement gsinv = group_inv(g, gs);
    GroupRingElement z = ring_zero(g), one = ring_one(g);
    GroupRingElement sm1 = fundamental(g, gs), mm1 = fundamental(g, gm);
    GroupRingElement sinv = ring_term(g, gsinv);
    GroupRingElement sinv_m = ring_term(g, group_mul(g, gsinv, gm));

    EquivariantComplex x;
    x.group = g;
    x.cells[0] = {{"p0", -1}, {"e0", -1}, {"n", -1}, {"o", -1}, {"pQ", -1}};
    x.cells[1] = {{"a", -1},  {"b", -1},  {"e1_1", -1}, {"e1_2", -1}, {"LW", -1}, {"Asph", -1},
                  {"gW", -1}, {"LQ", -1}, {"gQ", -1},   {"dQ", -1},   {"rQ", -1}};
    x.cells[2] = {{"q2", -1},   {"e2_1", -1}, {"e2_2", -1}, {"FW", -1}, {"Asw", -1},
                  {"gswW", -1}, {"FQ", -1},   {"gswQ", -1}, {"tQ", -1}};
    x.cells[3] = {{"e3", -1}, {"FswW", -1}, {"FswQ", -1}};

    Mat<GroupRingElement> d1(5, 11, z), d2(11, 9, z), d3(9, 3, z);
    // rows of d1: p0, e0, n, o, pQ
    d1(0, 1) = sm1;             // b
    d1(0, 2) = -one;            // e1_1: e0 - p0
    d1(1, 2) = one;
    d1(1, 3) = sm1;             // e1_2
    d1(2, 4) = -one;            // LW: o - n
    d1(3, 4) = one;
    d1(2, 5) = -one;            // Asph: s^{-1} o - n
    d1(3, 5) = sinv;
    d1(0, 6) = -one;            // gW: o - p0
    d1(3, 6) = one;
    d1(2, 7) = -one;            // LQ: s^{-1} m o - n
    d1(3, 7) = sinv_m;
    d1(3, 8) = one;             // gQ: o - pQ
    d1(4, 8) = -one;
    d1(4, 9) = mm1;             // dQ
    // rQ has zero boundary (column 10)

    // rows of d2: a, b, e1_1, e1_2, LW, Asph, gW, LQ, gQ, dQ, rQ
    d2(0, 0) = -sm1;            // q2 = (1-s) a
    d2(1, 1) = -one;            // e2_1 = -b + (1-s) e1_1 + e1_2
    d2(2, 1) = -sm1;
    d2(3, 1) = one;
    d2(0, 2) = one;             // e2_2 = a
    d2(4, 3) = one;             // FW = LW - Asph - (1 - s^{-1}) gW - s^{-1} b
    d2(5, 3) = -one;
    d2(6, 3) = sinv - one;
    d2(1, 3) = -sinv;
    // Asw has zero boundary (column 4)
    d2(0, 5) = -one;            // gswW = -a
    d2(7, 6) = one;             // FQ = LQ + (s^{-1} - s^{-1} m) gQ - s^{-1} dQ - Asph
    d2(8, 6) = sinv - sinv_m;
    d2(9, 6) = -sinv;
    d2(5, 6) = -one;
    d2(10, 7) = -one;           // gswQ = -rQ
    d2(10, 8) = mm1;            // tQ = (m-1) rQ

    // rows of d3: q2, e2_1, e2_2, FW, Asw, gswW, FQ, gswQ, tQ
    d3(0, 0) = one;             // e3 = q2 + (s-1) e2_2
    d3(2, 0) = sm1;
    d3(4, 1) = one;             // FswW = Asw + (1 - s^{-1}) gswW - s^{-1} q2
    d3(5, 1) = one - sinv;
    d3(0, 1) = -sinv;
    d3(4, 2) = one;             // FswQ = Asw + (s^{-1} m - s^{-1}) gswQ + s^{-1} tQ
    d3(7, 2) = sinv_m - sinv;
    d3(8, 2) = sinv;

    x.boundary[0] = Mat<GroupRingElement>(0, 5, z);
    x.boundary[1] = std::move(d1);
    x.boundary[2] = std::move(d2);
    x.boundary[3] = std::move(d3);
    require_valid(x);
    return x;
}

/// Presentation 2-complex of a knot group over its abelianization Z: one
/// 0-cell, one 1-cell per generator, one 2-cell per relator with the
/// abelianized Fox derivatives as boundary coefficients.
inline EquivariantComplex presentation_complex(const KnotPresentation& p) {
    auto weights = detail_fox::abelianization_weights(p);
    AbelianGroup g{1, {}};
    GroupRingElement z = ring_zero(g);
    EquivariantComplex x;
    x.group = g;
    x.cells[0] = {{"v", -1}};
    for (int i = 0; i < p.ngens; ++i) x.cells[1].push_back({"x" + std::to_string(i + 1), -1});
    for (int j = 0; j < (int)p.relators.size(); ++j)
        x.cells[2].push_back({"r" + std::to_string(j + 1), -1});

    Mat<GroupRingElement> d1(1, p.ngens, z), d2(p.ngens, (int)p.relators.size(), z);
    for (int i = 0; i < p.ngens; ++i)
        d1(0, i) = fundamental(g, make_element(g, {weights[i]}, {}));
    for (int j = 0; j < (int)p.relators.size(); ++j)
        for (int i = 0; i < p.ngens; ++i) d2(i, j) = fox_derivative(p.relators[j], i, weights);
    x.boundary[0] = Mat<GroupRingElement>(0, 1, z);
    x.boundary[1] = std::move(d1);
    x.boundary[2] = std::move(d2);
    x.boundary[3] = Mat<GroupRingElement>((int)p.relators.size(), 0, z);
    require_valid(x);
    return x;
}

// ---------------------------------------------------------------------------
// gluing
// ---------------------------------------------------------------------------

/// Where and how to glue a solid torus: the four boundary-torus cells of the
/// host complex, with the filling meridian attached along cell `a`, and the
/// multiplicity (1 = honest solid torus).
struct FillingData {
    std::string zero_cell, a_cell, b_cell, two_cell;
    long long alpha = 1;
};

struct GluingResult {
    EquivariantComplex complex;   // the filled complex Y
    GroupHomomorphism quotient;   // q: H(E) -> H(Y); Euler offsets map through it
    GroupElement core_class;      // h, the class of the filling core
    GroupElement meridian_class;  // mu = q([a])
    int curve_index = -1;         // index of the new singular curve, -1 when alpha = 1
    int orientation_factor = 1;   // omega_Y = orientation_factor * omega_E (as signs)

    EulerStructure induced_euler(const EulerStructure& e) const {
        return EulerStructure{quotient.apply(e.offset)};
    }
    HomologyOrientation induced_orientation(const HomologyOrientation& w) const {
        return HomologyOrientation{orientation_factor * w.sign};
    }
};

namespace detail_build {

/// read g from a boundary column of the exact form (g - 1) * cell
inline GroupElement loop_class(const EquivariantComplex& e, int dim, int col, int vertex_row) {
    const AbelianGroup& g = e.group;
    GroupRingElement expect_zero = ring_zero(g);
    for (int r = 0; r < e.ncells(dim - 1); ++r) {
        if (r == vertex_row) continue;
        if (!e.entry(dim, r, col).is_zero())
            throw std::invalid_argument("filling: boundary cell is not a loop at the torus vertex");
    }
    const GroupRingElement& v = e.entry(dim, vertex_row, col);
    if (v.is_zero()) return identity_element(g);
    if (v.terms.size() == 2) {
        GroupElement cls;
        bool seen_id = false, seen_g = false;
        for (const auto& [x, c] : v.terms) {
            if (is_identity(x) && c == -1)
                seen_id = true;
            else if (c == 1) {
                cls = x;
                seen_g = true;
            }
        }
        if (seen_id && seen_g) return cls;
    }
    throw std::invalid_argument("filling: boundary cell does not have the form (g-1) * vertex");
}

inline std::string fresh_id(const std::set<std::string>& used, const std::string& base) {
    if (!used.count(base)) return base;
    for (int k = 2;; ++k) {
        std::string c = base + "_" + std::to_string(k);
        if (!used.count(c)) return c;
    }
}

}  // namespace detail_build

/// Glue a solid torus (alpha = 1) or an equivariant solid torus (alpha >= 2)
/// to the designated boundary torus of E, with the filling meridian attached
/// along the `a` cell. The group becomes H(E)/<mu^alpha>, the interior cells
/// are appended with the canonical lifts, and the induced Euler structure /
/// homology orientation maps are returned alongside.
inline GluingResult glue(const EquivariantComplex& e, const FillingData& f) {
    int v = e.find_cell(0, f.zero_cell);
    int a = e.find_cell(1, f.a_cell);
    int b = e.find_cell(1, f.b_cell);
    int q2 = e.find_cell(2, f.two_cell);
    if (v < 0 || a < 0 || b < 0 || q2 < 0)
        throw std::invalid_argument("filling: torus cells not found");
    if (e.cells[0][v].singular() || e.cells[1][a].singular() || e.cells[1][b].singular())
        throw std::invalid_argument("filling: torus cells must be free");
    if (f.alpha < 1) throw std::invalid_argument("filling: multiplicity must be >= 1");

    GroupElement mu_e = detail_build::loop_class(e, 1, a, v);
    GroupElement beta_e = detail_build::loop_class(e, 1, b, v);
    {  // the torus 2-cell must read (1 - beta) a + (mu - 1) b
        GroupRingElement expect_a = -fundamental(e.group, beta_e);
        GroupRingElement expect_b = fundamental(e.group, mu_e);
        for (int r = 0; r < e.ncells(1); ++r) {
            GroupRingElement want = r == a ? expect_a : (r == b ? expect_b : ring_zero(e.group));
            if (!(e.entry(2, r, q2) == want))
                throw std::invalid_argument("filling: torus 2-cell boundary is not in normal form");
        }
    }

    auto [hy, q] = quotient_by_power(e.group, mu_e, f.alpha);
    GroupElement mu = q.apply(mu_e);
    GroupElement h = q.apply(beta_e);

    GluingResult out;
    out.quotient = q;
    out.core_class = h;
    out.meridian_class = mu;

    EquivariantComplex y;
    y.group = hy;
    std::set<std::string> used;
    for (int d = 0; d < 4; ++d) {
        y.cells[d] = e.cells[d];
        for (const auto& c : y.cells[d]) used.insert(c.id);
    }
    for (const auto& cur : e.curves)
        y.curves.push_back(SingularCurve{cur.multiplicity, q.apply(cur.meridian),
                                         q.apply(cur.curve_class), cur.zero_cell, cur.one_cell});

    std::string f0 = detail_build::fresh_id(used, "f0");
    used.insert(f0);
    std::string f1_1 = detail_build::fresh_id(used, "f1_1");
    used.insert(f1_1);
    std::string f1_2 = detail_build::fresh_id(used, "f1_2");
    used.insert(f1_2);
    std::string f2_1 = detail_build::fresh_id(used, "f2_1");
    used.insert(f2_1);
    std::string f2_2 = detail_build::fresh_id(used, "f2_2");
    used.insert(f2_2);
    std::string f3 = detail_build::fresh_id(used, "f3");

    int curve = -1;
    if (f.alpha >= 2) {
        curve = (int)y.curves.size();
        y.curves.push_back(SingularCurve{f.alpha, mu, h, (int)y.cells[0].size(),
                                         (int)y.cells[1].size() + 1});
        out.curve_index = curve;
    }
    y.cells[0].push_back({f0, curve});
    y.cells[1].push_back({f1_1, -1});
    y.cells[1].push_back({f1_2, curve});
    y.cells[2].push_back({f2_1, -1});
    y.cells[2].push_back({f2_2, -1});
    y.cells[3].push_back({f3, -1});

    GroupRingElement z = ring_zero(hy), one = ring_one(hy);
    GroupRingElement hm1 = fundamental(hy, h), mm1 = fundamental(hy, mu);
    for (int d = 0; d < 4; ++d) {
        Mat<GroupRingElement> m((int)y.cells[d == 0 ? 0 : d - 1].size(), (int)y.cells[d].size(), z);
        if (d == 0) {
            y.boundary[0] = Mat<GroupRingElement>(0, (int)y.cells[0].size(), z);
            continue;
        }
        for (int r = 0; r < e.ncells(d - 1); ++r)
            for (int c = 0; c < e.ncells(d); ++c) m(r, c) = push_through(q, e.entry(d, r, c));
        y.boundary[d] = std::move(m);
    }
    int i_f0 = e.ncells(0), i_f11 = e.ncells(1), i_f12 = e.ncells(1) + 1;
    int i_f21 = e.ncells(2), i_f22 = e.ncells(2) + 1, i_f3 = e.ncells(3);
    auto& d1 = y.boundary[1];
    auto& d2 = y.boundary[2];
    auto& d3 = y.boundary[3];
    d1(i_f0, i_f11) = one;   // f1_1: f0 - v
    d1(v, i_f11) = -one;
    d1(i_f0, i_f12) = hm1;   // f1_2
    d2(b, i_f21) = -one;     // f2_1 = -b + (1-h) f1_1 + f1_2
    d2(i_f11, i_f21) = -hm1;
    d2(i_f12, i_f21) = one;
    d2(a, i_f22) = one;      // f2_2 = a + (mu-1) f1_1
    d2(i_f11, i_f22) = mm1;
    d3(q2, i_f3) = one;      // f3 = q2 + (mu-1) f2_1 + (h-1) f2_2
    d3(i_f21, i_f3) = mm1;
    d3(i_f22, i_f3) = hm1;

    require_valid(y);
    out.complex = std::move(y);

    // induced homology orientation, characterized by the sign relation of the
    // real pair: tau_0(Y, w^Y) = (-1)^{nu(c, c')} tau_0(E, w), which is the
    // property the gluing formulas consume
    auto [cy, hy_real] = underlying_real_complex(out.complex);
    std::vector<int> sub_dims = {e.ncells(0), e.ncells(1), e.ncells(2), e.ncells(3)};
    int nu_real = nu(cy.dims, sub_dims);
    int t0_e = tau0(e, HomologyOrientation{});
    int t0_y = tau0(out.complex, HomologyOrientation{});
    out.orientation_factor = (nu_real ? -1 : 1) * t0_e * t0_y;
    return out;
}

/// Desingularize one curve: quotient the group by its meridian, push the
/// boundaries through, and drop the tag.
inline EquivariantComplex remove_singular_curve(const EquivariantComplex& y, int k,
                                                GroupHomomorphism* quotient_out = nullptr) {
    if (k < 0 || k >= (int)y.curves.size())
        throw std::invalid_argument("remove_singular_curve: no such curve");
    auto [h2, q] = quotient_by_power(y.group, y.curves[k].meridian, 1);
    EquivariantComplex out;
    out.group = h2;
    for (int d = 0; d < 4; ++d) {
        out.cells[d] = y.cells[d];
        for (auto& c : out.cells[d]) {
            if (c.curve == k)
                c.curve = -1;
            else if (c.curve > k)
                --c.curve;
        }
    }
    for (int ci = 0; ci < (int)y.curves.size(); ++ci) {
        if (ci == k) continue;
        const auto& cur = y.curves[ci];
        out.curves.push_back(SingularCurve{cur.multiplicity, q.apply(cur.meridian),
                                           q.apply(cur.curve_class), cur.zero_cell, cur.one_cell});
    }
    GroupRingElement z = ring_zero(h2);
    out.boundary[0] = Mat<GroupRingElement>(0, y.ncells(0), z);
    for (int d = 1; d < 4; ++d) {
        Mat<GroupRingElement> m(y.ncells(d - 1), y.ncells(d), z);
        for (int r = 0; r < y.ncells(d - 1); ++r)
            for (int c = 0; c < y.ncells(d); ++c) m(r, c) = push_through(q, y.entry(d, r, c));
        out.boundary[d] = std::move(m);
    }
    require_valid(out);
    if (quotient_out) *quotient_out = q;
    return out;
}

}  // namespace torsion

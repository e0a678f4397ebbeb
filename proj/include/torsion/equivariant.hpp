#pragma once

#include <array>
#include <string>
#include <vector>

#include "torsion/chain_complex.hpp"
#include "torsion/splitting.hpp"

namespace torsion {

/// One component of the singular set: an embedded circle with cyclic local
/// group of order `multiplicity`, meridian class and curve class in H, and
/// the preferred cell structure (one 0-cell, one 1-cell).
struct SingularCurve {
    long long multiplicity = 2;
    GroupElement meridian;
    GroupElement curve_class;
    int zero_cell = -1;  // index into cells[0]
    int one_cell = -1;   // index into cells[1]
};

struct CellInfo {
    std::string id;
    int curve = -1;  // index into curves, -1 for free cells

    bool singular() const { return curve >= 0; }
};

/// Equivariant cellular chain complex of the abelian cover: one generator per
/// cell orbit, boundary matrices over Z[H], and stabilizer data for the cells
/// on the singular curves (row entries of those cells are well defined only
/// modulo (mu - 1)).
struct EquivariantComplex {
    AbelianGroup group;
    std::array<std::vector<CellInfo>, 4> cells;
    // boundary[d] has cells[d-1].size() rows, cells[d].size() columns
    std::array<Mat<GroupRingElement>, 4> boundary;
    std::vector<SingularCurve> curves;

    int ncells(int d) const { return (int)cells[d].size(); }
    int total_cells() const { return ncells(0) + ncells(1) + ncells(2) + ncells(3); }

    const GroupRingElement& entry(int d, int row, int col) const { return boundary[d](row, col); }

    int find_cell(int d, const std::string& id) const {
        for (int i = 0; i < ncells(d); ++i)
            if (cells[d][i].id == id) return i;
        return -1;
    }

    bool cell_is_free(int d, int idx) const { return !cells[d][idx].singular(); }

    /// first free cell in any dimension (for realizing Euler offsets)
    std::pair<int, int> first_free_cell() const {
        for (int d = 0; d < 4; ++d)
            for (int i = 0; i < ncells(d); ++i)
                if (cell_is_free(d, i)) return {d, i};
        return {-1, -1};
    }
};

/// An orbifold Euler structure relative to the reference lift stored in the
/// boundary matrices: a single translation, since H acts freely and
/// transitively on the structures.
struct EulerStructure {
    GroupElement offset;
};

inline EulerStructure reference_euler(const EquivariantComplex& x) {
    return EulerStructure{identity_element(x.group)};
}

inline EulerStructure euler_act(const EquivariantComplex& x, const GroupElement& h,
                                const EulerStructure& e) {
    if ((int)h.free_part.size() != x.group.free_rank ||
        (int)h.torsion_part.size() != x.group.torsion_rank())
        throw std::invalid_argument("euler_act: element not in the complex group");
    return EulerStructure{group_mul(x.group, h, e.offset)};
}

/// Orientation of the total real homology, stored as a sign relative to the
/// reference bases produced by underlying_real_complex.
struct HomologyOrientation {
    int sign = +1;

    HomologyOrientation flipped() const { return HomologyOrientation{-sign}; }
};

struct Diagnostics {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

/// Structural validation: shapes, curve data, the configuration boundary of
/// singular 1-cells, and the chain condition over Z[H] with singular rows
/// read modulo their stabilizer ideal.
inline Diagnostics validate(const EquivariantComplex& x) {
    Diagnostics diag;
    auto err = [&](const std::string& s) { diag.errors.push_back(s); };

    for (int d = 1; d < 4; ++d) {
        if (x.boundary[d].rows() != x.ncells(d - 1) || x.boundary[d].cols() != x.ncells(d))
            err("boundary matrix " + std::to_string(d) + " has wrong shape");
    }
    if (!diag.ok()) return diag;

    for (int ci = 0; ci < (int)x.curves.size(); ++ci) {
        const auto& c = x.curves[ci];
        if (c.multiplicity < 2) err("curve " + std::to_string(ci) + ": multiplicity < 2");
        if (!is_identity(group_pow(x.group, c.meridian, c.multiplicity)))
            err("curve " + std::to_string(ci) + ": meridian^multiplicity is not the identity");
        if (c.zero_cell < 0 || c.zero_cell >= x.ncells(0) || x.cells[0][c.zero_cell].curve != ci)
            err("curve " + std::to_string(ci) + ": missing its 0-cell");
        if (c.one_cell < 0 || c.one_cell >= x.ncells(1) || x.cells[1][c.one_cell].curve != ci)
            err("curve " + std::to_string(ci) + ": missing its 1-cell");
    }
    for (int d = 0; d < 4; ++d)
        for (int i = 0; i < x.ncells(d); ++i) {
            int ci = x.cells[d][i].curve;
            if (ci < 0) continue;
            if (d >= 2) {
                err("cell " + x.cells[d][i].id + ": singular tags are only allowed in dimensions 0,1");
                continue;
            }
            if (ci >= (int)x.curves.size()) {
                err("cell " + x.cells[d][i].id + ": refers to unknown curve");
                continue;
            }
            if ((d == 0 && x.curves[ci].zero_cell != i) || (d == 1 && x.curves[ci].one_cell != i))
                err("cell " + x.cells[d][i].id + ": curve owns a different cell");
        }
    if (!diag.ok()) return diag;

    // configuration: the singular 1-cell has boundary exactly (h_i - 1) e0_i
    for (int ci = 0; ci < (int)x.curves.size(); ++ci) {
        const auto& c = x.curves[ci];
        for (int r = 0; r < x.ncells(0); ++r) {
            GroupRingElement expect = r == c.zero_cell ? fundamental(x.group, c.curve_class)
                                                       : ring_zero(x.group);
            if (!(x.entry(1, r, c.one_cell) == expect)) {
                err("curve " + std::to_string(ci) +
                    ": boundary of its 1-cell is not (h-1) times its 0-cell");
                break;
            }
        }
    }

    // chain condition; entries landing on a singular row are compared modulo
    // the ideal generated by (mu - 1) for that row's curve
    for (int d = 2; d < 4; ++d) {
        for (int r = 0; r < x.ncells(d - 2); ++r)
            for (int c = 0; c < x.ncells(d); ++c) {
                GroupRingElement s = ring_zero(x.group);
                for (int k = 0; k < x.ncells(d - 1); ++k)
                    s = s + x.entry(d - 1, r, k) * x.entry(d, k, c);
                bool zero = s.is_zero();
                if (!zero && x.cells[d - 2][r].singular())
                    zero = vanishes_mod_subgroup(s, x.curves[x.cells[d - 2][r].curve].meridian);
                if (!zero)
                    err("boundary squared is nonzero at cells (" + x.cells[d - 2][r].id + ", " +
                        x.cells[d][c].id + ")");
            }
    }
    return diag;
}

inline void require_valid(const EquivariantComplex& x) {
    Diagnostics d = validate(x);
    if (!d.ok()) throw std::invalid_argument("invalid equivariant complex: " + d.errors.front());
}

// ---------------------------------------------------------------------------
// twisting
// ---------------------------------------------------------------------------

/// Cells contributing a basis vector to the twisted complex at psi: in
/// dimensions 0 and 1 the free cells plus the singular cells whose meridian
/// maps to 1; in dimensions 2 and 3 every cell.
inline std::array<std::vector<int>, 4> kept_cells(const EquivariantComplex& x,
                                                  const MonomialMap& psi) {
    std::array<std::vector<int>, 4> kept;
    for (int d = 0; d < 4; ++d)
        for (int i = 0; i < x.ncells(d); ++i) {
            int ci = x.cells[d][i].curve;
            if (ci >= 0 && !psi.maps_to_one(x.curves[ci].meridian)) continue;
            kept[d].push_back(i);
        }
    return kept;
}

/// The twisted based chain complex C^psi, based by the reference lift
/// translated by the Euler offset.
inline BasedChainComplex<FieldElem> twisted_complex(const EquivariantComplex& x,
                                                    const MonomialMap& psi,
                                                    const EulerStructure& e) {
    if (psi.domain != x.group) throw std::invalid_argument("twist: map domain mismatch");
    auto kept = kept_cells(x, psi);
    BasedChainComplex<FieldElem> c;
    c.zero = FieldElem::zero(psi.conductor, psi.nvars);
    c.one = FieldElem::one(psi.conductor, psi.nvars);
    c.dims.resize(4);
    for (int d = 0; d < 4; ++d) c.dims[d] = (int)kept[d].size();
    c.boundary.resize(4);
    c.boundary[0] = Mat<FieldElem>(0, c.dims[0]);
    for (int d = 1; d < 4; ++d) {
        Mat<FieldElem> m(c.dims[d - 1], c.dims[d], c.zero);
        for (int j = 0; j < c.dims[d]; ++j)
            for (int i = 0; i < c.dims[d - 1]; ++i)
                m(i, j) = psi.apply(x.entry(d, kept[d - 1][i], kept[d][j]));
        c.boundary[d] = std::move(m);
    }

    if (!is_identity(e.offset)) {
        // realize the offset by translating the lift of one free cell: a cell
        // of dimension d translated by g changes the structure by g^{(-1)^d},
        // so translate by offset or offset^{-1} according to parity
        auto [fd, fi] = x.first_free_cell();
        if (fd < 0)
            throw std::invalid_argument("twist: nontrivial Euler offset needs a free cell");
        GroupElement g = fd % 2 == 0 ? e.offset : group_inv(x.group, e.offset);
        FieldElem unit = psi.apply_unit(g);
        FieldElem unit_inv = c.one / unit;
        int col = -1;
        for (int k = 0; k < (int)kept[fd].size(); ++k)
            if (kept[fd][k] == fi) col = k;
        if (col < 0) throw std::logic_error("twist: free cell not kept");
        if (fd >= 1)
            for (int r = 0; r < c.dims[fd - 1]; ++r)
                c.boundary[fd](r, col) = c.boundary[fd](r, col) * unit;
        if (fd + 1 < 4)
            for (int k = 0; k < c.dims[fd + 1]; ++k)
                c.boundary[fd + 1](col, k) = c.boundary[fd + 1](col, k) * unit_inv;
    }
    return c;
}

inline BasedChainComplex<FieldElem> twist(const EquivariantComplex& x, const SplitComponent& comp,
                                          const EulerStructure& e) {
    return twisted_complex(x, component_map(x.group, comp), e);
}

// ---------------------------------------------------------------------------
// the underlying real complex, tau_0, and the orbifold torsion
// ---------------------------------------------------------------------------

/// C(|Y|, R): apply the augmentation to every boundary entry; every cell
/// contributes. Returned with its reference homology bases.
inline std::pair<BasedChainComplex<Rat>, HomologyData<Rat>> underlying_real_complex(
    const EquivariantComplex& x) {
    BasedChainComplex<Rat> c;
    c.zero = Rat(0);
    c.one = Rat(1);
    c.dims.resize(4);
    for (int d = 0; d < 4; ++d) c.dims[d] = x.ncells(d);
    c.boundary.resize(4);
    c.boundary[0] = Mat<Rat>(0, c.dims[0]);
    for (int d = 1; d < 4; ++d) {
        Mat<Rat> m(c.dims[d - 1], c.dims[d], Rat(0));
        for (int i = 0; i < c.dims[d - 1]; ++i)
            for (int j = 0; j < c.dims[d]; ++j) m(i, j) = Rat(augmentation(x.entry(d, i, j)));
        c.boundary[d] = std::move(m);
    }
    return {c, homology(c)};
}

/// Sign of the torsion of the underlying real complex with homology bases
/// realizing the orientation.
inline int tau0(const EquivariantComplex& x, const HomologyOrientation& omega) {
    auto [c, h] = underlying_real_complex(x);
    if (omega.sign < 0) {
        for (int i = 0; i < (int)h.reps.size(); ++i)
            if (!h.reps[i].empty()) {
                for (auto& v : h.reps[i][0]) v = -v;
                break;
            }
    }
    Rat t = chain_torsion(c, h).value;
    if (t == 0) throw std::logic_error("tau0: torsion of the real complex vanished");
    return sign_of(t);
}

/// The orbifold torsion: per component, tau_0 times the torsion of the
/// twisted complex, or 0 when that complex is not acyclic.
inline TorsionVector orbifold_torsion(const EquivariantComplex& x, const EulerStructure& e,
                                      const HomologyOrientation& omega) {
    TorsionVector out;
    out.components = split_components(x.group);
    int t0 = tau0(x, omega);
    for (const auto& comp : out.components) {
        BasedChainComplex<FieldElem> c = twist(x, comp, e);
        HomologyData<FieldElem> h = homology(c);
        if (!h.acyclic()) {
            out.values.push_back(comp.zero());
            continue;
        }
        FieldElem v = chain_torsion(c, h).value;
        if (t0 < 0) v = -v;
        out.values.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// regular structures on the underlying manifold
// ---------------------------------------------------------------------------

/// When every meridian class is already trivial in H the cover complex is the
/// abelian cover of the underlying manifold; dropping the tags yields its
/// equivariant complex and Euler structures correspond by the identity on
/// offsets.
inline std::pair<EquivariantComplex, EulerStructure> euler_to_underlying(
    const EquivariantComplex& x, const EulerStructure& e) {
    for (const auto& c : x.curves)
        if (!is_identity(c.meridian))
            throw std::invalid_argument(
                "euler_to_underlying: a meridian class is nontrivial, the cover is not the "
                "underlying-manifold cover");
    EquivariantComplex y = x;
    y.curves.clear();
    for (int d = 0; d < 4; ++d)
        for (auto& cell : y.cells[d]) cell.curve = -1;
    return {y, EulerStructure{e.offset}};
}

// ---------------------------------------------------------------------------
// cell modifications (used by the invariance tests and the verifiers)
// ---------------------------------------------------------------------------

/// Flip the orientation of one cell: negate its boundary column and its row
/// in the next boundary.
inline EquivariantComplex flip_cell(const EquivariantComplex& x, int d, int idx) {
    EquivariantComplex y = x;
    if (d >= 1)
        for (int r = 0; r < y.ncells(d - 1); ++r) y.boundary[d](r, idx) = -y.boundary[d](r, idx);
    if (d + 1 < 4)
        for (int c = 0; c < y.ncells(d + 1); ++c) y.boundary[d + 1](idx, c) = -y.boundary[d + 1](idx, c);
    return y;
}

/// Replace the reference lift of one cell by its g-translate.
inline EquivariantComplex translate_cell_lift(const EquivariantComplex& x, int d, int idx,
                                              const GroupElement& g) {
    EquivariantComplex y = x;
    GroupRingElement u = ring_term(y.group, g);
    GroupRingElement uinv = ring_term(y.group, group_inv(y.group, g));
    if (d >= 1)
        for (int r = 0; r < y.ncells(d - 1); ++r) y.boundary[d](r, idx) = y.boundary[d](r, idx) * u;
    if (d + 1 < 4)
        for (int c = 0; c < y.ncells(d + 1); ++c)
            y.boundary[d + 1](idx, c) = y.boundary[d + 1](idx, c) * uinv;
    return y;
}

/// Permute the cells of one dimension (perm[new_position] = old_position).
inline EquivariantComplex permute_cells(const EquivariantComplex& x, int d,
                                        const std::vector<int>& perm) {
    if ((int)perm.size() != x.ncells(d)) throw std::invalid_argument("permute_cells: size mismatch");
    EquivariantComplex y = x;
    for (int i = 0; i < x.ncells(d); ++i) y.cells[d][i] = x.cells[d][perm[i]];
    if (d >= 1) {
        Mat<GroupRingElement> m(x.ncells(d - 1), x.ncells(d), ring_zero(x.group));
        for (int r = 0; r < x.ncells(d - 1); ++r)
            for (int c = 0; c < x.ncells(d); ++c) m(r, c) = x.boundary[d](r, perm[c]);
        y.boundary[d] = std::move(m);
    }
    if (d + 1 < 4) {
        Mat<GroupRingElement> m(x.ncells(d), x.ncells(d + 1), ring_zero(x.group));
        for (int r = 0; r < x.ncells(d); ++r)
            for (int c = 0; c < x.ncells(d + 1); ++c) m(r, c) = x.boundary[d + 1](perm[r], c);
        y.boundary[d + 1] = std::move(m);
    }
    // fix curve cell indices
    std::vector<int> inv(perm.size());
    for (int i = 0; i < (int)perm.size(); ++i) inv[perm[i]] = i;
    for (auto& cur : y.curves) {
        if (d == 0) cur.zero_cell = inv[cur.zero_cell];
        if (d == 1) cur.one_cell = inv[cur.one_cell];
    }
    return y;
}

/// Transport a homology orientation from x to a modified complex y whose real
/// chain groups are related by the given signed permutation (per dimension,
/// map[new] = (old index, sign)). Returns the orientation of y representing
/// the same orientation class.
inline HomologyOrientation transport_orientation(const EquivariantComplex& x,
                                                 const EquivariantComplex& y,
                                                 const std::array<std::vector<std::pair<int, int>>, 4>& map,
                                                 const HomologyOrientation& omega) {
    auto [cx, hx] = underlying_real_complex(x);
    auto [cy, hy] = underlying_real_complex(y);
    // push x's reference homology bases through the chain map and express in
    // y's reference bases; the total determinant sign compares orientations
    int sign = 1;
    for (int d = 0; d < 4; ++d) {
        int n = hx.ranks[d];
        if (n == 0) continue;
        std::vector<Vec<Rat>> pushed;
        for (const auto& rep : hx.reps[d]) {
            Vec<Rat> v(cy.dims[d], Rat(0));
            for (int nw = 0; nw < cy.dims[d]; ++nw) {
                auto [old, s] = map[d][nw];
                v[nw] = rep[old] * s;
            }
            pushed.push_back(std::move(v));
        }
        auto bimg = detail_chain::boundary_image_basis(cy, d);
        Mat<Rat> coords(n, n, Rat(0));
        for (int j = 0; j < n; ++j) {
            Vec<Rat> cj = detail_chain::class_coordinates(pushed[j], hy.reps[d], bimg, Rat(0), Rat(1));
            for (int i = 0; i < n; ++i) coords(i, j) = cj[i];
        }
        Rat det = field_det(coords, Rat(0), Rat(1));
        if (det == 0) throw std::logic_error("transport_orientation: singular comparison");
        if (det < 0) sign = -sign;
    }
    return HomologyOrientation{omega.sign * sign};
}

}  // namespace torsion

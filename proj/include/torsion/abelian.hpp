#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsion/arith.hpp"
#include "torsion/matrix.hpp"

namespace torsion {

/// Finitely generated abelian group Z^b + Z/m_1 + ... + Z/m_s in invariant
/// factor form: m_1 | m_2 | ... | m_s, every m_j >= 2.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> invariant_factors;

    int torsion_rank() const { return (int)invariant_factors.size(); }
    int ngens() const { return free_rank + torsion_rank(); }
    bool is_trivial() const { return ngens() == 0; }
    // 0 means infinite
    long long order() const {
        if (free_rank > 0) return 0;
        long long p = 1;
        for (long long m : invariant_factors) p *= m;
        return p;
    }
    long long torsion_order() const {
        long long p = 1;
        for (long long m : invariant_factors) p *= m;
        return p;
    }
    long long exponent() const {
        return invariant_factors.empty() ? 1 : invariant_factors.back();
    }
    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
};

/// Element given by exponents of the canonical generators; torsion entry j is
/// kept in [0, m_j).
struct GroupElement {
    std::vector<long long> free_part;
    std::vector<long long> torsion_part;

    bool operator==(const GroupElement& o) const {
        return free_part == o.free_part && torsion_part == o.torsion_part;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const {
        if (free_part != o.free_part) return free_part < o.free_part;
        return torsion_part < o.torsion_part;
    }
};

inline GroupElement make_element(const AbelianGroup& g, std::vector<long long> free_part,
                                 std::vector<long long> torsion_part) {
    if ((int)free_part.size() != g.free_rank || (int)torsion_part.size() != g.torsion_rank())
        throw std::invalid_argument("make_element: exponent vector sizes do not match group");
    for (int j = 0; j < g.torsion_rank(); ++j)
        torsion_part[j] = mod_pos(torsion_part[j], g.invariant_factors[j]);
    return GroupElement{std::move(free_part), std::move(torsion_part)};
}

inline GroupElement identity_element(const AbelianGroup& g) {
    return GroupElement{std::vector<long long>(g.free_rank, 0),
                        std::vector<long long>(g.torsion_rank(), 0)};
}

inline bool is_identity(const GroupElement& x) {
    for (auto v : x.free_part)
        if (v != 0) return false;
    for (auto v : x.torsion_part)
        if (v != 0) return false;
    return true;
}

inline GroupElement group_mul(const AbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    for (int i = 0; i < g.free_rank; ++i) r.free_part[i] += b.free_part[i];
    for (int j = 0; j < g.torsion_rank(); ++j)
        r.torsion_part[j] = mod_pos(r.torsion_part[j] + b.torsion_part[j], g.invariant_factors[j]);
    return r;
}

inline GroupElement group_inv(const AbelianGroup& g, const GroupElement& a) {
    GroupElement r = a;
    for (auto& v : r.free_part) v = -v;
    for (int j = 0; j < g.torsion_rank(); ++j)
        r.torsion_part[j] = mod_pos(-r.torsion_part[j], g.invariant_factors[j]);
    return r;
}

inline GroupElement group_pow(const AbelianGroup& g, const GroupElement& a, long long k) {
    GroupElement r = a;
    for (auto& v : r.free_part) v *= k;
    for (int j = 0; j < g.torsion_rank(); ++j)
        r.torsion_part[j] = mod_pos(r.torsion_part[j] * k, g.invariant_factors[j]);
    return r;
}

/// Order of an element; 0 when infinite.
inline long long element_order(const AbelianGroup& g, const GroupElement& a) {
    for (auto v : a.free_part)
        if (v != 0) return 0;
    long long n = 1;
    for (int j = 0; j < g.torsion_rank(); ++j) {
        long long m = g.invariant_factors[j];
        n = lcm_ll(n, m / gcd_ll(m, a.torsion_part[j]));
    }
    return n;
}

/// Homomorphism determined by images of the canonical generators of the
/// domain. `section` (optional) holds lifts of the codomain generators.
struct GroupHomomorphism {
    AbelianGroup domain, codomain;
    std::vector<GroupElement> gen_images;
    std::vector<GroupElement> section;

    GroupElement apply(const GroupElement& x) const {
        if ((int)x.free_part.size() != domain.free_rank ||
            (int)x.torsion_part.size() != domain.torsion_rank())
            throw std::invalid_argument("hom apply: element not in domain");
        GroupElement r = identity_element(codomain);
        for (int i = 0; i < domain.free_rank; ++i)
            if (x.free_part[i] != 0)
                r = group_mul(codomain, r, group_pow(codomain, gen_images[i], x.free_part[i]));
        for (int j = 0; j < domain.torsion_rank(); ++j)
            if (x.torsion_part[j] != 0)
                r = group_mul(codomain, r,
                              group_pow(codomain, gen_images[domain.free_rank + j], x.torsion_part[j]));
        return r;
    }

    bool well_defined() const {
        for (int j = 0; j < domain.torsion_rank(); ++j) {
            GroupElement img = gen_images[domain.free_rank + j];
            if (!is_identity(group_pow(codomain, img, domain.invariant_factors[j]))) return false;
        }
        return true;
    }

    GroupElement lift(const GroupElement& y) const {
        if (section.empty()) throw std::logic_error("homomorphism carries no section");
        GroupElement r = identity_element(domain);
        for (int i = 0; i < codomain.free_rank; ++i)
            if (y.free_part[i] != 0)
                r = group_mul(domain, r, group_pow(domain, section[i], y.free_part[i]));
        for (int j = 0; j < codomain.torsion_rank(); ++j)
            if (y.torsion_part[j] != 0)
                r = group_mul(domain, r,
                              group_pow(domain, section[codomain.free_rank + j], y.torsion_part[j]));
        return r;
    }
};

inline GroupHomomorphism identity_hom(const AbelianGroup& g) {
    GroupHomomorphism h;
    h.domain = h.codomain = g;
    for (int i = 0; i < g.ngens(); ++i) {
        GroupElement e = identity_element(g);
        if (i < g.free_rank)
            e.free_part[i] = 1;
        else
            e.torsion_part[i - g.free_rank] = 1;
        h.gen_images.push_back(e);
        h.section.push_back(e);
    }
    return h;
}

inline GroupHomomorphism compose(const GroupHomomorphism& f, const GroupHomomorphism& g) {
    // (f o g): apply g first
    if (g.codomain != f.domain) throw std::invalid_argument("compose: domain mismatch");
    GroupHomomorphism h;
    h.domain = g.domain;
    h.codomain = f.codomain;
    for (const auto& img : g.gen_images) h.gen_images.push_back(f.apply(img));
    if (!f.section.empty() && !g.section.empty())
        for (const auto& s : f.section) h.section.push_back(g.lift(s));
    return h;
}

struct SmithResult {
    IMat U, D, V;     // U*M*V = D
    IMat Uinv, Vinv;  // exact inverses
};

/// Smith normal form with unimodular transforms. Pivot choice: smallest
/// nonzero absolute value in the remaining submatrix.
inline SmithResult smith_normal_form(const IMat& m0) {
    int r = m0.rows(), c = m0.cols();
    SmithResult s{IMat::identity(r, 1), m0, IMat::identity(c, 1), IMat::identity(r, 1),
                  IMat::identity(c, 1)};
    IMat& m = s.D;

    auto row_add = [&](int dst, int src, const Int& q) {  // row_dst += q * row_src
        for (int j = 0; j < c; ++j) m(dst, j) += q * m(src, j);
        for (int j = 0; j < r; ++j) s.U(dst, j) += q * s.U(src, j);
        for (int j = 0; j < r; ++j) s.Uinv(j, src) -= q * s.Uinv(j, dst);
    };
    auto col_add = [&](int dst, int src, const Int& q) {  // col_dst += q * col_src
        for (int i = 0; i < r; ++i) m(i, dst) += q * m(i, src);
        for (int i = 0; i < c; ++i) s.V(i, dst) += q * s.V(i, src);
        for (int i = 0; i < c; ++i) s.Vinv(src, i) -= q * s.Vinv(dst, i);
    };
    auto row_swap = [&](int i, int j) {
        m.swap_rows(i, j);
        s.U.swap_rows(i, j);
        s.Uinv.swap_cols(i, j);
    };
    auto col_swap = [&](int i, int j) {
        m.swap_cols(i, j);
        s.V.swap_cols(i, j);
        s.Vinv.swap_rows(i, j);
    };
    auto row_negate = [&](int i) {
        for (int j = 0; j < c; ++j) m(i, j) = -m(i, j);
        for (int j = 0; j < r; ++j) s.U(i, j) = -s.U(i, j);
        for (int j = 0; j < r; ++j) s.Uinv(j, i) = -s.Uinv(j, i);
    };

    int t = 0;
    int nmin = std::min(r, c);
    while (t < nmin) {
        // smallest nonzero |entry| in the submatrix
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (m(i, j) == 0) continue;
                Int a = abs(m(i, j));
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // submatrix is zero
        if (pi != t) row_swap(t, pi);
        if (pj != t) col_swap(t, pj);
        if (m(t, t) < 0) row_negate(t);

        bool clean = true;
        for (int i = t + 1; i < r; ++i) {
            if (m(i, t) == 0) continue;
            Int q = m(i, t) / m(t, t);
            if (q != 0) row_add(i, t, -q);
            if (m(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < c; ++j) {
            if (m(t, j) == 0) continue;
            Int q = m(t, j) / m(t, t);
            if (q != 0) col_add(j, t, -q);
            if (m(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // remainder left, pick a new (smaller) pivot

        // enforce divisibility of the remaining block by the pivot
        bool fixed = false;
        for (int i = t + 1; i < r && !fixed; ++i)
            for (int j = t + 1; j < c && !fixed; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    row_add(t, i, 1);
                    fixed = true;
                }
        if (fixed) continue;
        ++t;
    }
    return s;
}

/// Cokernel of the relation rows: Z^ngens / <rows of relations>, together
/// with the projection from Z^ngens (carrying a section).
inline std::pair<AbelianGroup, GroupHomomorphism> group_from_presentation(int ngens,
                                                                          const IMat& relations) {
    if (relations.cols() != ngens && relations.rows() != 0)
        throw std::invalid_argument("group_from_presentation: relation width mismatch");
    IMat rel = relations.cols() == ngens ? relations : IMat(0, ngens);
    SmithResult s = smith_normal_form(rel);

    int nmin = std::min(rel.rows(), ngens);
    std::vector<Int> diag(ngens, 0);
    for (int j = 0; j < nmin; ++j) diag[j] = s.D(j, j);

    std::vector<int> tors_cols, free_cols;
    for (int j = 0; j < ngens; ++j) {
        if (diag[j] == 0)
            free_cols.push_back(j);
        else if (diag[j] >= 2)
            tors_cols.push_back(j);
        // diag 1: generator dies
    }

    AbelianGroup q;
    q.free_rank = (int)free_cols.size();
    for (int j : tors_cols) {
        Int d = diag[j];
        if (d > (Int)std::numeric_limits<long long>::max())
            throw std::overflow_error("invariant factor too large");
        q.invariant_factors.push_back((long long)d);
    }

    GroupHomomorphism proj;
    proj.domain = AbelianGroup{ngens, {}};
    proj.codomain = q;
    // In coordinates z = V^T x the relation subgroup is spanned by d_j e_j,
    // so e_i projects to row i of V and new generator j lifts to row j of Vinv.
    for (int i = 0; i < ngens; ++i) {
        std::vector<long long> fr, to;
        for (int j : free_cols) fr.push_back((long long)s.V(i, j));
        for (int j : tors_cols) to.push_back((long long)(s.V(i, j) % diag[j]));
        proj.gen_images.push_back(make_element(q, fr, to));
    }
    auto row_elem = [&](int j) {
        std::vector<long long> fr(ngens);
        for (int i = 0; i < ngens; ++i) fr[i] = (long long)s.Vinv(j, i);
        return GroupElement{fr, {}};
    };
    for (int j : free_cols) proj.section.push_back(row_elem(j));
    for (int j : tors_cols) proj.section.push_back(row_elem(j));
    return {q, proj};
}

/// G / <x^k> with the projection (carrying a section).
inline std::pair<AbelianGroup, GroupHomomorphism> quotient_by_power(const AbelianGroup& g,
                                                                    const GroupElement& x,
                                                                    long long k) {
    if (k < 1) throw std::invalid_argument("quotient_by_power: k must be >= 1");
    int n = g.ngens();
    IMat rel(g.torsion_rank() + 1, n);
    for (int j = 0; j < g.torsion_rank(); ++j) rel(j, g.free_rank + j) = g.invariant_factors[j];
    for (int i = 0; i < g.free_rank; ++i) rel(g.torsion_rank(), i) = k * x.free_part[i];
    for (int j = 0; j < g.torsion_rank(); ++j)
        rel(g.torsion_rank(), g.free_rank + j) = k * x.torsion_part[j];

    auto [q, proj0] = group_from_presentation(n, rel);
    GroupHomomorphism proj;
    proj.domain = g;
    proj.codomain = q;
    proj.gen_images = proj0.gen_images;
    for (const auto& sec : proj0.section) {
        std::vector<long long> fr(sec.free_part.begin(), sec.free_part.begin() + g.free_rank);
        std::vector<long long> to(sec.free_part.begin() + g.free_rank, sec.free_part.end());
        proj.section.push_back(make_element(g, fr, to));
    }
    return {q, proj};
}

/// One Galois orbit of characters of the torsion subgroup. gen_exponents[j]
/// sends torsion generator j to zeta_{m_j}^{k_j}; as a root of unity of the
/// class conductor n that is zeta_n^{k_j * n / m_j}.
struct CharacterClass {
    long long conductor = 1;
    std::vector<long long> gen_exponents;
    long long orbit_size = 1;

    long long zeta_power(int j, const AbelianGroup& g) const {
        long long m = g.invariant_factors[j];
        // zeta_m^k = zeta_n^{k n / m}; k n is divisible by m because the
        // order of the character divides n
        long long kn = gen_exponents[j] * conductor;
        if (kn % m != 0) throw std::logic_error("character exponent not divisible");
        return mod_pos(kn / m, conductor);
    }
};

/// All Galois classes of characters of Tor(G), deterministically ordered by
/// (conductor, lexicographic minimal representative).
inline std::vector<CharacterClass> character_classes(const AbelianGroup& g) {
    long long total = g.torsion_order();
    if (total > 2'000'000) throw std::overflow_error("character_classes: torsion subgroup too large");
    int s = g.torsion_rank();
    const auto& m = g.invariant_factors;

    auto order_of_tuple = [&](const std::vector<long long>& k) {
        long long n = 1;
        for (int j = 0; j < s; ++j) n = lcm_ll(n, m[j] / gcd_ll(m[j], k[j]));
        return n;
    };

    std::set<std::vector<long long>> seen;
    std::vector<CharacterClass> out;
    std::vector<long long> k(s, 0);
    while (true) {
        if (!seen.count(k)) {
            long long n = order_of_tuple(k);
            // Galois orbit {k^a : gcd(a, n) = 1}
            std::set<std::vector<long long>> orbit;
            for (long long a = 1; a <= n; ++a) {
                if (gcd_ll(a, n) != 1) continue;
                std::vector<long long> ka(s);
                for (int j = 0; j < s; ++j) ka[j] = mod_pos(a * k[j], m[j]);
                orbit.insert(ka);
            }
            for (const auto& o : orbit) seen.insert(o);
            CharacterClass cls;
            cls.conductor = n;
            cls.gen_exponents = *orbit.begin();  // lexicographic minimum
            cls.orbit_size = (long long)orbit.size();
            out.push_back(cls);
        }
        // next tuple
        int j = s - 1;
        while (j >= 0 && ++k[j] == m[j]) k[j--] = 0;
        if (j < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const CharacterClass& a, const CharacterClass& b) {
        if (a.conductor != b.conductor) return a.conductor < b.conductor;
        return a.gen_exponents < b.gen_exponents;
    });
    return out;
}

}  // namespace torsion

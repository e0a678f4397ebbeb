#pragma once

#include <vector>

#include "torsion/field.hpp"
#include "torsion/group_ring.hpp"

namespace torsion {

/// One summand F_l = Q(zeta_n)(t_1..t_b) of the canonical splitting of
/// Q(Z[H]), indexed by a Galois class of characters of Tor(H).
struct SplitComponent {
    CharacterClass cls;
    int free_rank = 0;
    int index = 0;

    long long conductor() const { return cls.conductor; }
    FieldElem zero() const { return FieldElem::zero(conductor(), free_rank); }
    FieldElem one() const { return FieldElem::one(conductor(), free_rank); }
};

/// The components in canonical order (one per character class).
inline std::vector<SplitComponent> split_components(const AbelianGroup& g) {
    std::vector<SplitComponent> out;
    auto classes = character_classes(g);
    for (int l = 0; l < (int)classes.size(); ++l)
        out.push_back(SplitComponent{classes[l], g.free_rank, l});
    return out;
}

/// A ring map Z[H] -> Q(zeta_n)(t_1..t_nvars) sending every generator of H to
/// a unit monomial t^v * zeta^k. The canonical component maps phi_l and all
/// their pullbacks along quotient maps have this shape.
struct MonomialMap {
    AbelianGroup domain;
    long long conductor = 1;
    int nvars = 0;
    // one (t-exponent vector, zeta exponent) per canonical generator of domain
    std::vector<std::pair<Laurent::Exp, long long>> images;

    bool well_defined() const {
        for (int j = 0; j < domain.torsion_rank(); ++j) {
            const auto& [v, k] = images[domain.free_rank + j];
            long long m = domain.invariant_factors[j];
            for (auto e : v)
                if (e != 0) return false;  // torsion cannot reach a free variable
            if (mod_pos(m * k, conductor) != 0) return false;
        }
        return true;
    }

    std::pair<Laurent::Exp, long long> apply_element(const GroupElement& x) const {
        Laurent::Exp v(nvars, 0);
        long long k = 0;
        auto acc = [&](const std::pair<Laurent::Exp, long long>& img, long long e) {
            for (int i = 0; i < nvars; ++i) v[i] += img.first[i] * e;
            k = mod_pos(k + img.second * e, conductor);
        };
        for (int i = 0; i < domain.free_rank; ++i)
            if (x.free_part[i] != 0) acc(images[i], x.free_part[i]);
        for (int j = 0; j < domain.torsion_rank(); ++j)
            if (x.torsion_part[j] != 0) acc(images[domain.free_rank + j], x.torsion_part[j]);
        return {v, k};
    }

    bool maps_to_one(const GroupElement& x) const {
        auto [v, k] = apply_element(x);
        if (k != 0) return false;
        for (auto e : v)
            if (e != 0) return false;
        return true;
    }

    Laurent apply_to_ring(const GroupRingElement& a) const {
        if (a.group != domain) throw std::invalid_argument("monomial map: wrong group");
        Laurent p(conductor, nvars);
        for (const auto& [g, c] : a.terms) {
            auto [v, k] = apply_element(g);
            Cyclotomic coeff =
                Cyclotomic::zeta_power(conductor, k) * Cyclotomic::from_rational(conductor, Rat(c));
            p.add_term(v, coeff);
        }
        return p;
    }

    FieldElem apply(const GroupRingElement& a) const { return FieldElem(apply_to_ring(a)); }

    FieldElem apply_unit(const GroupElement& x) const {
        auto [v, k] = apply_element(x);
        return FieldElem(Laurent::monomial(conductor, nvars, v, Cyclotomic::zeta_power(conductor, k)));
    }
};

/// The canonical ring map phi_l: Z[H] -> F_l. Free generators go to the
/// variables, torsion generator j to the class representative's root of
/// unity.
inline MonomialMap component_map(const AbelianGroup& g, const SplitComponent& comp) {
    MonomialMap m;
    m.domain = g;
    m.conductor = comp.conductor();
    m.nvars = g.free_rank;
    for (int i = 0; i < g.free_rank; ++i) {
        Laurent::Exp v(m.nvars, 0);
        v[i] = 1;
        m.images.emplace_back(v, 0);
    }
    for (int j = 0; j < g.torsion_rank(); ++j)
        m.images.emplace_back(Laurent::Exp(m.nvars, 0), comp.cls.zeta_power(j, g));
    return m;
}

inline FieldElem phi(const GroupRingElement& x, const SplitComponent& comp) {
    return component_map(x.group, comp).apply(x);
}

/// psi o q for a group homomorphism q into psi's domain.
inline MonomialMap pullback(const MonomialMap& psi, const GroupHomomorphism& q) {
    if (q.codomain != psi.domain) throw std::invalid_argument("pullback: codomain mismatch");
    MonomialMap m;
    m.domain = q.domain;
    m.conductor = psi.conductor;
    m.nvars = psi.nvars;
    for (const auto& img : q.gen_images) m.images.push_back(psi.apply_element(img));
    return m;
}

/// Substitute unit monomials for the variables of a Laurent polynomial,
/// landing in Q(zeta_n)(t_1..t_nvars).
inline Laurent substitute_monomials(const Laurent& p, long long conductor, int nvars,
                                    const std::vector<std::pair<Laurent::Exp, long long>>& var_images) {
    if ((int)var_images.size() != p.nvars())
        throw std::invalid_argument("substitute_monomials: arity mismatch");
    Laurent out(conductor, nvars);
    for (const auto& [e, c] : p.terms()) {
        Laurent::Exp v(nvars, 0);
        long long k = 0;
        for (int i = 0; i < p.nvars(); ++i) {
            for (int j = 0; j < nvars; ++j) v[j] += var_images[i].first[j] * e[i];
            k = mod_pos(k + var_images[i].second * e[i], conductor);
        }
        out.add_term(v, c.promoted(conductor) * Cyclotomic::zeta_power(conductor, k));
    }
    return out;
}

inline FieldElem substitute_monomials(const FieldElem& x, long long conductor, int nvars,
                                      const std::vector<std::pair<Laurent::Exp, long long>>& var_images) {
    Laurent d = substitute_monomials(x.den(), conductor, nvars, var_images);
    if (d.is_zero()) throw std::domain_error("substitution hits a pole");
    return FieldElem(substitute_monomials(x.num(), conductor, nvars, var_images), d);
}

/// tau(Y, e, omega) presented component by component.
struct TorsionVector {
    std::vector<SplitComponent> components;
    std::vector<FieldElem> values;

    bool operator==(const TorsionVector& o) const { return values == o.values; }
};

}  // namespace torsion

#pragma once

#include <map>
#include <string>

#include "torsion/abelian.hpp"

namespace torsion {

/// Element of the integral group ring Z[H] for a finitely generated abelian
/// group H; a finite integer combination of group elements.
struct GroupRingElement {
    AbelianGroup group;
    std::map<GroupElement, Int> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const GroupElement& g, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(g, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    bool operator==(const GroupRingElement& o) const {
        return group == o.group && terms == o.terms;
    }
    bool operator!=(const GroupRingElement& o) const { return !(*this == o); }
};

inline GroupRingElement ring_zero(const AbelianGroup& g) { return GroupRingElement{g, {}}; }

inline GroupRingElement ring_one(const AbelianGroup& g) {
    GroupRingElement r{g, {}};
    r.add_term(identity_element(g), 1);
    return r;
}

inline GroupRingElement ring_term(const AbelianGroup& g, const GroupElement& x, const Int& c = 1) {
    GroupRingElement r{g, {}};
    r.add_term(x, c);
    return r;
}

inline void check_same_group(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.group != b.group) throw std::invalid_argument("group ring: mixed groups");
}

inline GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    check_same_group(a, b);
    GroupRingElement r = a;
    for (const auto& [g, c] : b.terms) r.add_term(g, c);
    return r;
}

inline GroupRingElement operator-(const GroupRingElement& a) {
    GroupRingElement r = a;
    for (auto& [g, c] : r.terms) c = -c;
    return r;
}

inline GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    check_same_group(a, b);
    GroupRingElement r = a;
    for (const auto& [g, c] : b.terms) r.add_term(g, -c);
    return r;
}

inline GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    check_same_group(a, b);
    GroupRingElement r{a.group, {}};
    for (const auto& [ga, ca] : a.terms)
        for (const auto& [gb, cb] : b.terms) r.add_term(group_mul(a.group, ga, gb), ca * cb);
    return r;
}

inline GroupRingElement scale(const GroupRingElement& a, const Int& c) {
    GroupRingElement r{a.group, {}};
    if (c == 0) return r;
    for (const auto& [g, k] : a.terms) r.terms.emplace(g, k * c);
    return r;
}

/// h - 1 for a group element h
inline GroupRingElement fundamental(const AbelianGroup& g, const GroupElement& h) {
    GroupRingElement r{g, {}};
    r.add_term(h, 1);
    r.add_term(identity_element(g), -1);
    return r;
}

/// Sum of the integer coefficients (image under every group element -> 1).
inline Int augmentation(const GroupRingElement& a) {
    Int s = 0;
    for (const auto& [g, c] : a.terms) s += c;
    return s;
}

/// Push coefficients through a group homomorphism applied to the exponents.
inline GroupRingElement push_through(const GroupHomomorphism& q, const GroupRingElement& a) {
    if (a.group != q.domain) throw std::invalid_argument("push_through: wrong group");
    GroupRingElement r{q.codomain, {}};
    for (const auto& [g, c] : a.terms) r.add_term(q.apply(g), c);
    return r;
}

/// True when a lies in the left ideal generated by (mu - 1), i.e. vanishes in
/// Z[H / <mu>].
inline bool vanishes_mod_subgroup(const GroupRingElement& a, const GroupElement& mu) {
    auto [q, proj] = quotient_by_power(a.group, mu, 1);
    return push_through(proj, a).is_zero();
}

inline std::string element_to_string(const AbelianGroup& g, const GroupElement& x,
                                     const std::vector<std::string>& names) {
    if (is_identity(x)) return "1";
    std::string s;
    auto emit = [&](int idx, long long e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += names[idx];
        if (e != 1) s += "^" + std::to_string(e);
    };
    for (int i = 0; i < g.free_rank; ++i) emit(i, x.free_part[i]);
    for (int j = 0; j < g.torsion_rank(); ++j) emit(g.free_rank + j, x.torsion_part[j]);
    return s;
}

inline std::string ring_to_string(const GroupRingElement& a, const std::vector<std::string>& names) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [g, c] : a.terms) {
        if (!s.empty()) s += " + ";
        s += c.str() + "*" + element_to_string(a.group, g, names);
    }
    return s;
}

}  // namespace torsion

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torsion/field.hpp"
#include "torsion/group_ring.hpp"

namespace torsion {

/// Group presentation with infinite cyclic abelianization. Words are
/// sequences of (generator index, exponent) syllables.
struct KnotPresentation {
    int ngens = 0;
    std::vector<std::vector<std::pair<int, long long>>> relators;
};

namespace detail_fox {

/// abelianization data: requires H_1 = Z; returns the weight of each
/// generator (its image under an identification with Z)
inline std::vector<long long> abelianization_weights(const KnotPresentation& p) {
    IMat rel((int)p.relators.size(), p.ngens);
    for (int r = 0; r < (int)p.relators.size(); ++r)
        for (const auto& [g, e] : p.relators[r]) rel(r, g) += e;
    auto [grp, proj] = group_from_presentation(p.ngens, rel);
    if (grp.free_rank != 1 || !grp.invariant_factors.empty())
        throw std::invalid_argument("presentation does not abelianize to Z");
    std::vector<long long> w(p.ngens);
    for (int i = 0; i < p.ngens; ++i) w[i] = proj.gen_images[i].free_part[0];
    return w;
}

}  // namespace detail_fox

/// Abelianized Fox derivative d(word)/d(gen j), in Z[t^{+-1}] presented as a
/// group ring element over Z with generator weights w.
inline GroupRingElement fox_derivative(const std::vector<std::pair<int, long long>>& word, int j,
                                       const std::vector<long long>& weights) {
    AbelianGroup z{1, {}};
    GroupRingElement d = ring_zero(z);
    long long pos = 0;  // abelianized prefix exponent
    for (const auto& [g, e] : word) {
        if (g == j) {
            // d(g^e)/dg = 1 + g + ... + g^{e-1}  (e > 0)
            //           = -(g^{-1} + ... + g^{e}) (e < 0)
            if (e > 0)
                for (long long k = 0; k < e; ++k)
                    d.add_term(make_element(z, {pos + k * weights[g]}, {}), 1);
            else
                for (long long k = 1; k <= -e; ++k)
                    d.add_term(make_element(z, {pos - k * weights[g]}, {}), -1);
        }
        pos += e * weights[g];
    }
    return d;
}

namespace detail_fox {

inline Laurent ring_to_laurent(const GroupRingElement& x) {
    Laurent p(1, 1);
    for (const auto& [g, c] : x.terms)
        p.add_term({g.free_part[0]}, Cyclotomic::from_rational(1, Rat(c)));
    return p;
}

/// gcd of many univariate polynomials, then renormalized to a primitive
/// integer polynomial with positive leading coefficient and exponent 0 floor
inline Laurent normalize_alexander(Laurent g) {
    if (g.is_zero()) return g;
    auto mins = g.min_exponents();
    for (auto& m : mins) m = -m;
    g = g.shifted(mins);
    // clear rational content
    Int num_lcm = 1, num_gcd = 0;
    for (const auto& [e, c] : g.terms()) {
        Rat q = c.rational_part();
        num_lcm = boost::multiprecision::lcm(num_lcm, Int(denominator(q)));
    }
    g = g.scaled(Cyclotomic::from_rational(1, Rat(num_lcm)));
    for (const auto& [e, c] : g.terms())
        num_gcd = boost::multiprecision::gcd(num_gcd, Int(numerator(c.rational_part())));
    if (num_gcd != 0) g = g.scaled(Cyclotomic::from_rational(1, Rat(1, num_gcd)));
    if (g.leading_coefficient().rational_part() < 0)
        g = g.scaled(Cyclotomic::from_rational(1, -1));
    return g;
}

}  // namespace detail_fox

/// Alexander polynomial via Fox calculus: gcd of the maximal minors of the
/// abelianized Alexander matrix (the first elementary ideal), normalized with
/// no monomial unit and positive leading coefficient.
inline Laurent fox_alexander(const KnotPresentation& p) {
    auto weights = detail_fox::abelianization_weights(p);
    int g = p.ngens, r = (int)p.relators.size();
    if (g == 0) throw std::invalid_argument("empty presentation");
    if (r == 0) {
        if (g != 1) throw std::invalid_argument("degenerate presentation (too few relators)");
        return Laurent::one(1, 1);  // unknot
    }
    if (r < g - 1) throw std::invalid_argument("degenerate presentation (too few relators)");

    Mat<FieldElem> alex(r, g, FieldElem::zero(1, 1));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < g; ++j)
            alex(i, j) = FieldElem(detail_fox::ring_to_laurent(fox_derivative(p.relators[i], j, weights)));

    // gcd over all (g-1)x(g-1) minors
    Laurent acc = Laurent::zero(1, 1);
    std::vector<int> rows(g - 1), cols(g - 1);
    std::vector<int> rsel, csel;
    std::function<void(int, int)> loop_rows = [&](int start, int depth) {
        if (depth == g - 1) {
            std::function<void(int, int)> loop_cols = [&](int cstart, int cdepth) {
                if (cdepth == g - 1) {
                    Mat<FieldElem> minor(g - 1, g - 1, FieldElem::zero(1, 1));
                    for (int i = 0; i < g - 1; ++i)
                        for (int j = 0; j < g - 1; ++j) minor(i, j) = alex(rsel[i], csel[j]);
                    FieldElem d = determinant(minor, 1, 1);
                    if (!d.is_zero()) {
                        Laurent dd = d.num();
                        auto mins = dd.min_exponents();
                        for (auto& m : mins) m = -m;
                        dd = dd.shifted(mins);
                        acc = acc.is_zero() ? dd : detail::laurent_gcd(acc, dd);
                    }
                    return;
                }
                for (int c = cstart; c < g; ++c) {
                    csel.push_back(c);
                    loop_cols(c + 1, cdepth + 1);
                    csel.pop_back();
                }
            };
            loop_cols(0, 0);
            return;
        }
        for (int i = start; i < r; ++i) {
            rsel.push_back(i);
            loop_rows(i + 1, depth + 1);
            rsel.pop_back();
        }
    };
    loop_rows(0, 0);
    if (acc.is_zero()) throw std::invalid_argument("degenerate presentation (vanishing ideal)");
    return detail_fox::normalize_alexander(acc);
}

}  // namespace torsion

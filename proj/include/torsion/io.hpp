#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "torsion/builders.hpp"

namespace torsion {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line_, int column_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
    ParseError(int line_, const std::string& msg) : ParseError(line_, 1, msg) {}
};

/// A parsed complex document: the complex plus the name environment of the
/// group presentation (used to resolve group words given on the command
/// line).
struct ParsedComplex {
    EquivariantComplex complex;
    std::vector<std::string> gen_names;
    std::map<std::string, GroupElement> env;

    GroupElement eval_word(const std::string& word) const;
};

namespace detail_io {

struct Tok {
    std::string text;
    int col = 1;
};

inline std::vector<Tok> tokenize(const std::string& line) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
        if (i >= line.size() || line[i] == '#') break;
        size_t start = i;
        while (i < line.size() && !std::isspace((unsigned char)line[i])) ++i;
        out.push_back({line.substr(start, i - start), (int)start + 1});
    }
    return out;
}

/// word := 1 | name(^int)? (* name(^int)?)*
inline GroupElement eval_word(const std::string& word, const AbelianGroup& g,
                              const std::map<std::string, GroupElement>& env, int line, int col) {
    GroupElement acc = identity_element(g);
    size_t pos = 0;
    while (pos < word.size()) {
        size_t star = word.find('*', pos);
        std::string syl = word.substr(pos, star == std::string::npos ? star : star - pos);
        int syl_col = col + (int)pos;
        pos = star == std::string::npos ? word.size() : star + 1;
        if (syl.empty()) throw ParseError(line, syl_col, "empty syllable in group word");
        if (syl == "1") continue;
        size_t caret = syl.find('^');
        std::string name = syl.substr(0, caret);
        long long exp = 1;
        if (caret != std::string::npos) {
            try {
                exp = std::stoll(syl.substr(caret + 1));
            } catch (...) {
                throw ParseError(line, syl_col, "bad exponent in group word '" + syl + "'");
            }
        }
        auto it = env.find(name);
        if (it == env.end()) throw ParseError(line, syl_col, "unknown generator '" + name + "'");
        acc = group_mul(g, acc, group_pow(g, it->second, exp));
    }
    return acc;
}

inline long long parse_int(const std::string& s, int line, int col, const std::string& what) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ParseError(line, col, "expected integer for " + what + ", got '" + s + "'");
    }
}

}  // namespace detail_io

inline GroupElement ParsedComplex::eval_word(const std::string& word) const {
    return detail_io::eval_word(word, complex.group, env, 0, 1);
}

/// Parse a complex document. Grammar (line oriented, '#' comments):
///   group <name>...
///   relation <word>
///   cell <dim> <id>
///   boundary <id> <int>*<word>*<cellid> [ +|- <int>*<word>*<cellid> ]... | 0
///   curve <alpha> <meridian word> <class word> <0-cell id> <1-cell id>
inline ParsedComplex parse_complex(const std::string& text) {
    using detail_io::Tok;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    std::vector<std::string> names;
    struct RawRelation {
        std::string word;
        int line, col;
    };
    struct RawCell {
        int dim;
        std::string id;
        int line;
    };
    struct RawBoundary {
        std::string id;
        std::vector<Tok> tokens;
        int line;
    };
    struct RawCurve {
        long long alpha;
        Tok meridian, cls, c0, c1;
        int line;
    };
    std::vector<RawRelation> raw_rels;
    std::vector<RawCell> raw_cells;
    std::vector<RawBoundary> raw_bnds;
    std::vector<RawCurve> raw_curves;
    int group_line = -1;

    while (std::getline(is, line)) {
        ++lineno;
        auto tok = detail_io::tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0].text;
        if (kw == "group") {
            if (group_line >= 0) throw ParseError(lineno, tok[0].col, "duplicate group block");
            group_line = lineno;
            for (size_t i = 1; i < tok.size(); ++i) names.push_back(tok[i].text);
        } else if (kw == "relation") {
            if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "relation takes one word");
            raw_rels.push_back({tok[1].text, lineno, tok[1].col});
        } else if (kw == "cell") {
            if (tok.size() != 3) throw ParseError(lineno, tok[0].col, "cell takes <dim> <id>");
            long long d = detail_io::parse_int(tok[1].text, lineno, tok[1].col, "cell dimension");
            if (d < 0 || d > 3) throw ParseError(lineno, tok[1].col, "cell dimension out of range");
            raw_cells.push_back({(int)d, tok[2].text, lineno});
        } else if (kw == "boundary") {
            if (tok.size() < 3) throw ParseError(lineno, tok[0].col, "boundary takes <id> <terms>");
            raw_bnds.push_back({tok[1].text, {tok.begin() + 2, tok.end()}, lineno});
        } else if (kw == "curve") {
            if (tok.size() != 6)
                throw ParseError(lineno, tok[0].col,
                                 "curve takes <alpha> <meridian> <class> <0-cell> <1-cell>");
            raw_curves.push_back({detail_io::parse_int(tok[1].text, lineno, tok[1].col, "multiplicity"),
                                  tok[2], tok[3], tok[4], tok[5], lineno});
        } else {
            throw ParseError(lineno, tok[0].col, "unknown directive '" + kw + "'");
        }
    }
    if (group_line < 0) throw ParseError(lineno ? lineno : 1, "no group block");

    // the group: abelian presentation on the declared names
    std::map<std::string, int> name_index;
    for (size_t i = 0; i < names.size(); ++i) {
        if (name_index.count(names[i]))
            throw ParseError(group_line, "duplicate generator name '" + names[i] + "'");
        name_index[names[i]] = (int)i;
    }
    // relation words are parsed syllable by syllable into exponent rows
    IMat rel((int)raw_rels.size(), (int)names.size());
    for (size_t r = 0; r < raw_rels.size(); ++r) {
        const std::string& w = raw_rels[r].word;
        size_t pos = 0;
        while (pos < w.size()) {
            size_t star = w.find('*', pos);
            std::string syl = w.substr(pos, star == std::string::npos ? star : star - pos);
            int syl_col = raw_rels[r].col + (int)pos;
            pos = star == std::string::npos ? w.size() : star + 1;
            if (syl == "1") continue;
            size_t caret = syl.find('^');
            std::string nm = syl.substr(0, caret);
            long long e = 1;
            if (caret != std::string::npos)
                e = detail_io::parse_int(syl.substr(caret + 1), raw_rels[r].line, syl_col, "exponent");
            auto it = name_index.find(nm);
            if (it == name_index.end())
                throw ParseError(raw_rels[r].line, syl_col, "unknown generator '" + nm + "'");
            rel(r, it->second) += e;
        }
    }
    auto [group, proj] = group_from_presentation((int)names.size(), rel);

    ParsedComplex out;
    out.complex.group = group;
    out.gen_names = names;
    for (size_t i = 0; i < names.size(); ++i) out.env[names[i]] = proj.gen_images[i];

    for (const auto& rc : raw_cells) {
        if (out.complex.find_cell(rc.dim, rc.id) >= 0)
            throw ParseError(rc.line, "duplicate cell id '" + rc.id + "'");
        for (int d = 0; d < 4; ++d)
            if (d != rc.dim && out.complex.find_cell(d, rc.id) >= 0)
                throw ParseError(rc.line, "cell id '" + rc.id + "' reused across dimensions");
        out.complex.cells[rc.dim].push_back({rc.id, -1});
    }
    EquivariantComplex& x = out.complex;
    x.boundary[0] = Mat<GroupRingElement>(0, x.ncells(0), ring_zero(group));
    for (int d = 1; d < 4; ++d)
        x.boundary[d] = Mat<GroupRingElement>(x.ncells(d - 1), x.ncells(d), ring_zero(group));

    for (const auto& rb : raw_bnds) {
        int dim = -1, col = -1;
        for (int d = 0; d < 4; ++d) {
            int idx = x.find_cell(d, rb.id);
            if (idx >= 0) {
                dim = d;
                col = idx;
            }
        }
        if (dim < 0) throw ParseError(rb.line, "boundary of unknown cell '" + rb.id + "'");
        if (dim == 0) throw ParseError(rb.line, "0-cells have no boundary line");
        if (rb.tokens.size() == 1 && rb.tokens[0].text == "0") continue;
        int sign = +1;
        bool expect_term = true;
        for (const auto& t : rb.tokens) {
            if (t.text == "+" || t.text == "-") {
                if (expect_term)
                    throw ParseError(rb.line, t.col, "misplaced sign in boundary expression");
                sign = t.text == "+" ? +1 : -1;
                expect_term = true;
                continue;
            }
            if (!expect_term)
                throw ParseError(rb.line, t.col, "missing +/- between boundary terms");
            // term: coeff*word*cellid  (the word may itself contain '*')
            size_t first = t.text.find('*');
            size_t last = t.text.rfind('*');
            if (first == std::string::npos || first == last)
                throw ParseError(rb.line, t.col,
                                 "boundary term must be coeff*word*cell: '" + t.text + "'");
            long long coeff = detail_io::parse_int(t.text.substr(0, first), rb.line, t.col, "coefficient");
            std::string word = t.text.substr(first + 1, last - first - 1);
            std::string cell = t.text.substr(last + 1);
            int row = x.find_cell(dim - 1, cell);
            if (row < 0)
                throw ParseError(rb.line, t.col + (int)last + 1,
                                 "boundary term references unknown " + std::to_string(dim - 1) +
                                     "-cell '" + cell + "'");
            GroupElement g =
                detail_io::eval_word(word, group, out.env, rb.line, t.col + (int)first + 1);
            x.boundary[dim](row, col).add_term(g, sign * coeff);
            sign = +1;
            expect_term = false;
        }
        if (expect_term) throw ParseError(rb.line, "dangling sign in boundary expression");
    }

    for (const auto& rc : raw_curves) {
        int c0 = x.find_cell(0, rc.c0.text), c1 = x.find_cell(1, rc.c1.text);
        if (c0 < 0)
            throw ParseError(rc.line, rc.c0.col, "curve references unknown 0-cell '" + rc.c0.text + "'");
        if (c1 < 0)
            throw ParseError(rc.line, rc.c1.col, "curve references unknown 1-cell '" + rc.c1.text + "'");
        int ci = (int)x.curves.size();
        x.curves.push_back(
            SingularCurve{rc.alpha,
                          detail_io::eval_word(rc.meridian.text, group, out.env, rc.line, rc.meridian.col),
                          detail_io::eval_word(rc.cls.text, group, out.env, rc.line, rc.cls.col), c0, c1});
        x.cells[0][c0].curve = ci;
        x.cells[1][c1].curve = ci;
    }
    return out;
}

/// Canonical generator names of a group in invariant-factor form: t1..tb for
/// the free part, u1..us for the torsion part.
inline std::vector<std::string> canonical_names(const AbelianGroup& g) {
    std::vector<std::string> names;
    for (int i = 0; i < g.free_rank; ++i) names.push_back("t" + std::to_string(i + 1));
    for (int j = 0; j < g.torsion_rank(); ++j) names.push_back("u" + std::to_string(j + 1));
    return names;
}

/// Deterministic rendering; parse(render(x)) reproduces x exactly.
inline std::string render_complex(const EquivariantComplex& x) {
    std::ostringstream os;
    auto names = canonical_names(x.group);
    os << "group";
    for (const auto& n : names) os << " " << n;
    os << "\n";
    for (int j = 0; j < x.group.torsion_rank(); ++j)
        os << "relation u" << (j + 1) << "^" << x.group.invariant_factors[j] << "\n";
    for (int d = 0; d < 4; ++d)
        for (const auto& c : x.cells[d]) os << "cell " << d << " " << c.id << "\n";
    for (int d = 1; d < 4; ++d)
        for (int col = 0; col < x.ncells(d); ++col) {
            bool any = false;
            for (int row = 0; row < x.ncells(d - 1); ++row)
                if (!x.entry(d, row, col).is_zero()) any = true;
            if (!any) continue;
            os << "boundary " << x.cells[d][col].id;
            bool first = true;
            for (int row = 0; row < x.ncells(d - 1); ++row) {
                const GroupRingElement& v = x.entry(d, row, col);
                for (const auto& [g, cf] : v.terms) {
                    os << (first ? " " : " + ") << cf.str() << "*"
                       << element_to_string(x.group, g, names) << "*" << x.cells[d - 1][row].id;
                    first = false;
                }
            }
            os << "\n";
        }
    for (const auto& cur : x.curves) {
        os << "curve " << cur.multiplicity << " " << element_to_string(x.group, cur.meridian, names)
           << " " << element_to_string(x.group, cur.curve_class, names) << " "
           << x.cells[0][cur.zero_cell].id << " " << x.cells[1][cur.one_cell].id << "\n";
    }
    return os.str();
}

/// Knot presentation file: `generators <count>` then `relator <word>` lines
/// over the implicit names x1..xg.
inline KnotPresentation parse_knot(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    KnotPresentation p;
    bool have_gens = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto tok = detail_io::tokenize(line);
        if (tok.empty()) continue;
        if (tok[0].text == "generators") {
            if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "generators takes a count");
            p.ngens = (int)detail_io::parse_int(tok[1].text, lineno, tok[1].col, "generator count");
            have_gens = true;
        } else if (tok[0].text == "relator") {
            if (!have_gens) throw ParseError(lineno, tok[0].col, "relator before generators");
            if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "relator takes one word");
            std::vector<std::pair<int, long long>> word;
            const std::string& w = tok[1].text;
            size_t pos = 0;
            while (pos < w.size()) {
                size_t star = w.find('*', pos);
                std::string syl = w.substr(pos, star == std::string::npos ? star : star - pos);
                int syl_col = tok[1].col + (int)pos;
                pos = star == std::string::npos ? w.size() : star + 1;
                if (syl == "1") continue;
                size_t caret = syl.find('^');
                std::string nm = syl.substr(0, caret);
                long long e = 1;
                if (caret != std::string::npos)
                    e = detail_io::parse_int(syl.substr(caret + 1), lineno, syl_col, "exponent");
                if (nm.size() < 2 || nm[0] != 'x')
                    throw ParseError(lineno, syl_col,
                                     "generators are named x1..x" + std::to_string(p.ngens));
                long long gi = detail_io::parse_int(nm.substr(1), lineno, syl_col, "generator index");
                if (gi < 1 || gi > p.ngens)
                    throw ParseError(lineno, syl_col, "generator index out of range");
                word.push_back({(int)(gi - 1), e});
            }
            p.relators.push_back(std::move(word));
        } else {
            throw ParseError(lineno, tok[0].col, "unknown directive '" + tok[0].text + "'");
        }
    }
    if (!have_gens) throw ParseError(lineno ? lineno : 1, "no generators line");
    return p;
}

/// Filling file: `torus <v> <a> <b> <q>` and `alpha <k>`.
inline FillingData parse_filling(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    FillingData f;
    bool have_torus = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto tok = detail_io::tokenize(line);
        if (tok.empty()) continue;
        if (tok[0].text == "torus") {
            if (tok.size() != 5) throw ParseError(lineno, tok[0].col, "torus takes <v> <a> <b> <q>");
            f.zero_cell = tok[1].text;
            f.a_cell = tok[2].text;
            f.b_cell = tok[3].text;
            f.two_cell = tok[4].text;
            have_torus = true;
        } else if (tok[0].text == "alpha") {
            if (tok.size() != 2) throw ParseError(lineno, tok[0].col, "alpha takes an integer");
            f.alpha = detail_io::parse_int(tok[1].text, lineno, tok[1].col, "alpha");
        } else {
            throw ParseError(lineno, tok[0].col, "unknown directive '" + tok[0].text + "'");
        }
    }
    if (!have_torus) throw ParseError(lineno ? lineno : 1, "no torus line");
    return f;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline bool complexes_equal(const EquivariantComplex& a, const EquivariantComplex& b) {
    if (!(a.group == b.group)) return false;
    for (int d = 0; d < 4; ++d) {
        if (a.ncells(d) != b.ncells(d)) return false;
        for (int i = 0; i < a.ncells(d); ++i)
            if (a.cells[d][i].id != b.cells[d][i].id || a.cells[d][i].curve != b.cells[d][i].curve)
                return false;
    }
    for (int d = 1; d < 4; ++d)
        for (int r = 0; r < a.ncells(d - 1); ++r)
            for (int c = 0; c < a.ncells(d); ++c)
                if (!(a.entry(d, r, c) == b.entry(d, r, c))) return false;
    if (a.curves.size() != b.curves.size()) return false;
    for (size_t i = 0; i < a.curves.size(); ++i) {
        const auto& x = a.curves[i];
        const auto& y = b.curves[i];
        if (x.multiplicity != y.multiplicity || !(x.meridian == y.meridian) ||
            !(x.curve_class == y.curve_class) || x.zero_cell != y.zero_cell || x.one_cell != y.one_cell)
            return false;
    }
    return true;
}

}  // namespace torsion

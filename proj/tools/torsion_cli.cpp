// command line front end: parse complex documents, compute orbifold torsion,
// apply fillings, and run the theorem verifiers

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "torsion/io.hpp"
#include "torsion/verify.hpp"

using namespace torsion;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;

struct Options {
    std::string euler_word = "1";
    std::string orientation = "+1";
    std::string component = "all";
    std::string report_path;
    std::string out_path;
};

std::string group_to_string(const AbelianGroup& g) {
    std::string s = "Z^" + std::to_string(g.free_rank);
    for (long long m : g.invariant_factors) s += " x Z_" + std::to_string(m);
    return s;
}

ParsedComplex load_complex(const std::string& path) {
    ParsedComplex p = parse_complex(read_file(path));
    Diagnostics d = validate(p.complex);
    if (!d.ok()) {
        std::ostringstream os;
        os << "validation failed for " << path << ":";
        for (const auto& e : d.errors) os << "\n  " << e;
        throw std::invalid_argument(os.str());
    }
    return p;
}

HomologyOrientation parse_orientation(const std::string& s) {
    if (s == "+1" || s == "1") return HomologyOrientation{+1};
    if (s == "-1") return HomologyOrientation{-1};
    throw std::invalid_argument("--orientation takes +1 or -1");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
    }
}

std::string render_character(const SplitComponent& comp, const AbelianGroup& g) {
    std::string s = "(";
    for (int j = 0; j < g.torsion_rank(); ++j) {
        if (j) s += ", ";
        s += "u" + std::to_string(j + 1) + " -> z^" +
             std::to_string(comp.cls.zeta_power(j, g));
    }
    return s + ")";
}

// univariate integer Laurent polynomials are printed in the usual textbook
// shape, e.g. t^2 - t + 1
std::string alexander_to_string(const Laurent& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        Rat c = it->second.rational_part();
        long long e = it->first[0];
        bool neg = c < 0;
        Rat a = neg ? -c : c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string coeff = rat_to_string(a);
        if (e == 0)
            s += coeff;
        else {
            if (coeff != "1") s += coeff + "*";
            s += "t";
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

int run_report(const VerifyReport& rep, const Options& opt) {
    std::string text = rep.render();
    std::cout << text;
    if (!opt.report_path.empty()) emit(text, opt.report_path);
    return rep.all_ok() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Turaev torsion of 3-orbifolds with link singular set"};
    app.require_subcommand(1);

    Options opt;
    std::string complex_path, filling_path, knot_path, act_word;
    int curve_index = 0;

    auto add_euler_opts = [&](CLI::App* cmd) {
        cmd->add_option("--euler", opt.euler_word, "Euler structure offset as a group word");
        cmd->add_option("--orientation", opt.orientation, "homology orientation, +1 or -1");
    };

    CLI::App* compute = app.add_subcommand("compute", "orbifold torsion of a complex");
    compute->add_option("complex", complex_path, "complex document (.tcx)")->required();
    add_euler_opts(compute);
    compute->add_option("--component", opt.component, "component index or 'all'");

    CLI::App* split = app.add_subcommand("split", "list the field components of the splitting");
    split->add_option("complex", complex_path)->required();

    CLI::App* glue_cmd = app.add_subcommand("glue", "apply a filling file");
    glue_cmd->add_option("complex", complex_path)->required();
    glue_cmd->add_option("filling", filling_path, "filling file (.fil)")->required();
    glue_cmd->add_option("--out", opt.out_path, "write the filled complex here");

    CLI::App* vg = app.add_subcommand("verify-gluing", "check the filling formulas component-wise");
    vg->add_option("complex", complex_path)->required();
    vg->add_option("filling", filling_path)->required();
    add_euler_opts(vg);
    vg->add_option("--report", opt.report_path, "also write the report here");

    CLI::App* rc = app.add_subcommand("remove-curve", "desingularize one singular curve");
    rc->add_option("complex", complex_path)->required();
    rc->add_option("--curve", curve_index, "curve index (0-based)")->required();
    rc->add_option("--out", opt.out_path);

    CLI::App* vd = app.add_subcommand("verify-decomposition",
                                      "check the underlying-manifold decomposition for a filling");
    vd->add_option("complex", complex_path)->required();
    vd->add_option("filling", filling_path)->required();
    add_euler_opts(vd);
    vd->add_option("--report", opt.report_path);

    CLI::App* alex = app.add_subcommand("alexander", "Alexander polynomial of a knot presentation");
    alex->add_option("presentation", knot_path, "presentation file (.knt)")->required();

    CLI::App* euler = app.add_subcommand("euler", "inspect or act on Euler structures");
    euler->add_option("complex", complex_path)->required();
    euler->add_option("--act", act_word, "group word acting on the reference structure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            EulerStructure e{p.eval_word(opt.euler_word)};
            HomologyOrientation w = parse_orientation(opt.orientation);
            TorsionVector tv = orbifold_torsion(p.complex, e, w);
            std::cout << "group: " << group_to_string(p.complex.group) << "\n";
            std::cout << "components: " << tv.components.size() << "\n";
            for (size_t l = 0; l < tv.components.size(); ++l) {
                if (opt.component != "all" && std::to_string(l) != opt.component) continue;
                std::cout << "component " << l << ": conductor " << tv.components[l].conductor()
                          << ", value = " << tv.values[l].to_string() << "\n";
            }
            return kExitOk;
        }
        if (split->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            auto comps = split_components(p.complex.group);
            std::cout << "group: " << group_to_string(p.complex.group) << "\n";
            for (const auto& c : comps)
                std::cout << "component " << c.index << ": conductor " << c.conductor()
                          << ", class size " << c.cls.orbit_size << ", character "
                          << render_character(c, p.complex.group) << "\n";
            return kExitOk;
        }
        if (glue_cmd->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            FillingData f = parse_filling(read_file(filling_path));
            GluingResult r = glue(p.complex, f);
            std::ostringstream os;
            os << "# filled complex, alpha = " << f.alpha << "\n";
            os << "# group: " << group_to_string(r.complex.group) << "\n";
            auto names = canonical_names(r.complex.group);
            os << "# core class h = " << element_to_string(r.complex.group, r.core_class, names)
               << ", meridian mu = " << element_to_string(r.complex.group, r.meridian_class, names)
               << "\n";
            os << render_complex(r.complex);
            emit(os.str(), opt.out_path);
            return kExitOk;
        }
        if (vg->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            FillingData f = parse_filling(read_file(filling_path));
            EulerStructure e{p.eval_word(opt.euler_word)};
            return run_report(verify_gluing(p.complex, f, e, parse_orientation(opt.orientation)), opt);
        }
        if (rc->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            EquivariantComplex y2 = remove_singular_curve(p.complex, curve_index);
            std::ostringstream os;
            os << "# curve " << curve_index << " removed\n";
            os << "# group: " << group_to_string(y2.group) << "\n";
            os << render_complex(y2);
            emit(os.str(), opt.out_path);
            return kExitOk;
        }
        if (vd->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            FillingData f = parse_filling(read_file(filling_path));
            EulerStructure e{p.eval_word(opt.euler_word)};
            return run_report(
                verify_underlying_decomposition(p.complex, f, e, parse_orientation(opt.orientation)),
                opt);
        }
        if (alex->parsed()) {
            KnotPresentation p = parse_knot(read_file(knot_path));
            std::cout << alexander_to_string(fox_alexander(p)) << "\n";
            return kExitOk;
        }
        if (euler->parsed()) {
            ParsedComplex p = load_complex(complex_path);
            std::cout << "group: " << group_to_string(p.complex.group) << "\n";
            std::cout << "structures form a torsor under the group; reference offset: 1\n";
            if (!act_word.empty()) {
                EulerStructure moved =
                    euler_act(p.complex, p.eval_word(act_word), reference_euler(p.complex));
                std::cout << "acted offset: "
                          << element_to_string(p.complex.group, moved.offset,
                                               canonical_names(p.complex.group))
                          << "\n";
            }
            long long n = p.complex.group.order();
            if (n != 0 && n <= 64) {
                std::cout << "all offsets:\n";
                // enumerate the finite group in lexicographic order
                std::vector<long long> v(p.complex.group.torsion_rank(), 0);
                auto names = canonical_names(p.complex.group);
                while (true) {
                    GroupElement g = make_element(p.complex.group, {}, v);
                    std::cout << "  " << element_to_string(p.complex.group, g, names) << "\n";
                    int j = (int)v.size() - 1;
                    while (j >= 0 && ++v[j] == p.complex.group.invariant_factors[j]) v[j--] = 0;
                    if (j < 0) break;
                }
            }
            return kExitOk;
        }
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}

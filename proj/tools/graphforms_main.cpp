// Command-line surface over the graphforms library: exact (p,q)-form
// calculus, Dolbeault cohomology, quotients and tropicalizations of
// weighted metric graphs.
//
// Exit codes: 0 success/verified, 1 mathematical failure (obstruction,
// imperfect pairing, failed balancing, ...), 2 malformed or invalid input.

#include <CLI11.hpp>

#include "graphforms/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace graphforms;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

WeightedMetricGraph load_graph(const std::string& path) {
    auto g = parse_graph_string(slurp(path));
    auto vr = validate_graph(g);
    if (!vr.ok()) throw InputError("invalid graph: " + vr.problems.front());
    return g;
}

GraphForm load_form(const std::string& path, const WeightedMetricGraph& g) {
    auto f = parse_form_string(slurp(path));
    auto vr = validate_form(g, f);
    if (!vr.ok()) throw InputError("invalid form: " + vr.problems.front());
    return f;
}

GammaGroup parse_gamma(const std::vector<std::string>& gens) {
    GammaGroup g;
    for (const auto& s : gens) g.generators.push_back(parse_rational(s));
    return g;
}

void print_dimensions(const std::string& tag, const DolbeaultDimensions& d) {
    std::cout << tag << " h00=" << d.h00 << " h10=" << d.h10 << " h01=" << d.h01
              << " h11=" << d.h11 << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact (p,q)-form calculus on weighted metric graphs"};
    app.require_subcommand(1);

    int order = 3;
    if (const char* env = std::getenv("GRAPHFORMS_K")) order = std::atoi(env);
    app.add_option("--K", order, "smoothness order (minimum 2)")->capture_default_str();

    std::string graph_path, form_path, map_path, action_path, trop_path, lagerberg_path,
        skeleton_path;
    std::vector<std::string> gamma_gens;
    std::vector<std::string> cut_specs;
    int at_vertex = -1, at_edge = -1;
    std::string at_pos;

    auto* c_validate = app.add_subcommand("validate", "validate a graph, form or map");
    c_validate->add_option("--graph", graph_path)->required();
    c_validate->add_option("--form", form_path);
    c_validate->add_option("--map", map_path);

    auto* c_cohom = app.add_subcommand("cohomology", "Dolbeault dimension table");
    c_cohom->add_option("--graph", graph_path)->required();

    auto* c_basis = app.add_subcommand("basis", "explicit cohomology bases");
    c_basis->add_option("--graph", graph_path)->required();

    auto* c_pairing = app.add_subcommand("pairing", "Poincare pairing matrices");
    c_pairing->add_option("--graph", graph_path)->required();

    auto* c_integrate = app.add_subcommand("integrate", "graph or boundary integral of a form");
    c_integrate->add_option("--graph", graph_path)->required();
    c_integrate->add_option("--form", form_path)->required();

    auto* c_stokes = app.add_subcommand("stokes", "check the Stokes equality for a form");
    c_stokes->add_option("--graph", graph_path)->required();
    c_stokes->add_option("--form", form_path)->required();

    auto* c_dbar = app.add_subcommand("ddbar-preimage", "solve d''eta = omega or report the obstruction");
    c_dbar->add_option("--graph", graph_path)->required();
    c_dbar->add_option("--form", form_path)->required();

    auto* c_pullback = app.add_subcommand("pullback", "pull a form back along a map or tropicalization");
    c_pullback->add_option("--map", map_path);
    c_pullback->add_option("--form", form_path);
    c_pullback->add_option("--graph", graph_path);
    c_pullback->add_option("--trop", trop_path);
    c_pullback->add_option("--lagerberg", lagerberg_path);

    auto* c_quotient = app.add_subcommand("quotient", "quotient by a finite harmonic action");
    c_quotient->add_option("--action", action_path)->required();

    auto* c_trop = app.add_subcommand("tropicalize", "tropical cycle of a Z-harmonic tropicalization");
    c_trop->add_option("--graph", graph_path)->required();
    c_trop->add_option("--trop", trop_path)->required();
    c_trop->add_option("--gamma", gamma_gens, "generators of Gamma");

    auto* c_cert = app.add_subcommand("certify-local", "local Lagerberg pullback certificate");
    c_cert->add_option("--graph", graph_path)->required();
    c_cert->add_option("--form", form_path)->required();
    c_cert->add_option("--vertex", at_vertex);
    c_cert->add_option("--edge", at_edge);
    c_cert->add_option("--pos", at_pos);
    c_cert->add_option("--gamma", gamma_gens, "generators of Gamma")->required();

    auto* c_unweight = app.add_subcommand("unweight", "pass to the unweighting");
    c_unweight->add_option("--graph", graph_path)->required();

    auto* c_subdivide = app.add_subcommand("subdivide", "insert vertices at edge positions");
    c_subdivide->add_option("--graph", graph_path)->required();
    c_subdivide->add_option("--at", cut_specs, "edge:position (repeatable)")->required();

    auto* c_skeleton = app.add_subcommand("skeleton", "curve cohomology from skeleton data");
    c_skeleton->add_option("--skeleton", skeleton_path)->required();

    CLI11_PARSE(app, argc, argv);
    if (order < 2) throw InputError("smoothness order must be at least 2");

    if (c_validate->parsed()) {
        auto g = parse_graph_string(slurp(graph_path));
        auto vr = validate_graph(g);
        std::cout << "graph " << (vr.ok() ? "valid" : "invalid") << "\n" << vr.str();
        if (!vr.ok()) return kExitInput;
        if (!form_path.empty()) {
            auto f = parse_form_string(slurp(form_path));
            auto fr = validate_form(g, f);
            std::cout << "form " << (fr.ok() ? "valid" : "invalid") << "\n" << fr.str();
            if (!fr.ok()) return kExitInput;
        }
        if (!map_path.empty()) {
            auto m = parse_plmap_string(slurp(map_path));
            auto mr = validate_plmap(m);
            std::cout << "map " << (mr.ok() ? "valid" : "invalid") << "\n" << mr.str();
            if (!mr.ok()) return kExitInput;
            auto h = harmonicity(m);
            std::cout << "harmonic " << (h.harmonic ? "yes" : "no") << "\n";
            if (h.degree) std::cout << "degree " << rational_str(*h.degree) << "\n";
        }
        return kExitOk;
    }

    if (c_cohom->parsed()) {
        auto g = load_graph(graph_path);
        auto per = dolbeault_dimensions_per_component(g);
        for (size_t i = 0; i < per.size(); ++i)
            print_dimensions("component " + std::to_string(i), per[i]);
        auto total = dolbeault_dimensions(g);
        print_dimensions("total", total);
        if (!(total == dolbeault_closed_form(g))) {
            std::cout << "mismatch with the closed-form table\n";
            return kExitMath;
        }
        return kExitOk;
    }

    if (c_basis->parsed()) {
        auto g = load_graph(graph_path);
        auto basis = cohomology_basis(g, order);
        std::cout << "# H00 basis (" << basis.h00.size() << ")\n";
        for (const auto& f : basis.h00) std::cout << serialize_form(f);
        std::cout << "# H10 basis (" << basis.h10.size() << ")\n";
        for (const auto& f : basis.h10) std::cout << serialize_form(f);
        std::cout << "# H01 basis (" << basis.h01.size() << ")\n";
        for (const auto& f : basis.h01) std::cout << serialize_form(f);
        std::cout << "# H11 basis (" << basis.h11.size() << ")\n";
        for (const auto& f : basis.h11) std::cout << serialize_form(f);
        return kExitOk;
    }

    if (c_pairing->parsed()) {
        auto g = load_graph(graph_path);
        auto p = poincare_pairing(g, cohomology_basis(g, order));
        if (!p.applicable) {
            std::cout << "not-applicable " << p.reason << "\n";
            return kExitOk;
        }
        std::cout << "scalar";
        for (const auto& s : p.scalar) std::cout << " " << rational_str(s);
        std::cout << "\ngram\n";
        for (const auto& row : p.gram) {
            for (size_t j = 0; j < row.size(); ++j)
                std::cout << (j ? " " : "") << rational_str(row[j]);
            std::cout << "\n";
        }
        std::cout << "perfect " << (p.perfect ? "yes" : "no") << "\n";
        return p.perfect ? kExitOk : kExitMath;
    }

    if (c_integrate->parsed()) {
        auto g = load_graph(graph_path);
        auto f = load_form(form_path, g);
        if (f.bidegree == BD11)
            std::cout << "integral " << rational_str(integrate_graph(g, f)) << "\n";
        else if (f.bidegree == BD10 || f.bidegree == BD01)
            std::cout << "boundary-integral " << rational_str(integrate_boundary(g, f)) << "\n";
        else
            throw InputError("integrate needs a form of bidegree (1,1), (1,0) or (0,1)");
        return kExitOk;
    }

    if (c_stokes->parsed()) {
        auto g = load_graph(graph_path);
        auto f = load_form(form_path, g);
        auto s = stokes_check(g, f);
        std::cout << "lhs " << rational_str(s.lhs) << "\nrhs " << rational_str(s.rhs)
                  << "\nequal " << (s.equal ? "yes" : "no") << "\n";
        return s.equal ? kExitOk : kExitMath;
    }

    if (c_dbar->parsed()) {
        auto g = load_graph(graph_path);
        auto f = load_form(form_path, g);
        auto pre = dbar_preimage(g, f);
        if (!pre.success) {
            std::cout << "obstruction";
            for (const auto& o : pre.obstruction) std::cout << " " << rational_str(o);
            std::cout << "\n";
            return kExitMath;
        }
        std::cout << "preimage\n" << serialize_form(*pre.preimage);
        return kExitOk;
    }

    if (c_pullback->parsed()) {
        if (!map_path.empty()) {
            auto m = parse_plmap_string(slurp(map_path));
            auto f = parse_form_string(slurp(form_path));
            auto vr = validate_form(m.target, f);
            if (!vr.ok()) throw InputError("invalid form on the target: " + vr.problems.front());
            std::cout << serialize_form(pullback_form(m, f));
            return kExitOk;
        }
        if (trop_path.empty() || lagerberg_path.empty() || graph_path.empty())
            throw InputError("pullback needs --map/--form or --graph/--trop/--lagerberg");
        auto g = load_graph(graph_path);
        auto h = parse_trop_string(slurp(trop_path));
        auto eta = parse_lagerberg_string(slurp(lagerberg_path));
        std::cout << serialize_form(pullback_lagerberg(g, h, eta, order));
        return kExitOk;
    }

    if (c_quotient->parsed()) {
        auto a = parse_action_string(slurp(action_path));
        auto vr = validate_action(a);
        if (!vr.ok()) throw InputError("invalid action: " + vr.problems.front());
        auto q = quotient_graph(a);
        std::cout << "quotient\n" << serialize_graph(q.graph);
        std::cout << "projection\n" << serialize_plmap(q.projection);
        auto check = verify_quotient(q.action, q.graph, q.projection);
        std::cout << "verified " << (check.ok() ? "yes" : "no") << "\n" << check.str();
        auto inv = invariant_cohomology(a);
        print_dimensions("invariant-ranks", inv.invariant_ranks);
        print_dimensions("quotient-dims", inv.quotient_dims);
        std::cout << "match " << (inv.match ? "yes" : "no") << "\n";
        return (check.ok() && inv.match) ? kExitOk : kExitMath;
    }

    if (c_trop->parsed()) {
        auto g = load_graph(graph_path);
        auto h = parse_trop_string(slurp(trop_path));
        auto flags = check_harmonic_trop(g, h, parse_gamma(gamma_gens));
        std::cout << "consistent " << (flags.consistent ? "yes" : "no") << "\n";
        std::cout << "harmonic " << (flags.harmonic ? "yes" : "no") << "\n";
        std::cout << "z-harmonic " << (flags.z_harmonic ? "yes" : "no") << "\n";
        std::cout << "z-gamma-harmonic " << (flags.z_gamma_harmonic ? "yes" : "no") << "\n";
        if (!flags.witness.empty()) std::cout << "witness " << flags.witness << "\n";
        if (!flags.z_harmonic) throw InputError("tropicalization is not Z-harmonic");
        auto cycle = trop_cycle(g, h);
        std::cout << serialize_cycle(cycle);
        auto bal = check_balancing(cycle);
        std::cout << "balanced " << (bal.balanced ? "yes" : "no") << "\n";
        for (const auto& [pt, sum] : bal.violations) {
            std::cout << "unbalanced-at";
            for (const auto& x : pt) std::cout << " " << rational_str(x);
            std::cout << " residual";
            for (const auto& x : sum) std::cout << " " << rational_str(x);
            std::cout << "\n";
        }
        return bal.balanced ? kExitOk : kExitMath;
    }

    if (c_cert->parsed()) {
        auto g = load_graph(graph_path);
        auto f = load_form(form_path, g);
        GraphPoint x = (at_vertex >= 0)
                           ? GraphPoint::on_vertex(at_vertex)
                           : GraphPoint::on_edge(at_edge, parse_rational(at_pos));
        LocalPullbackCertificate cert;
        try {
            cert = local_pullback_certificate(g, f, x, parse_gamma(gamma_gens));
        } catch (const std::invalid_argument& e) {
            std::cout << "no-certificate " << e.what() << "\n";
            return kExitMath;
        }
        std::cout << "case " << cert.case_id << "\n";
        std::cout << "neighborhood\n" << serialize_graph(cert.neighborhood);
        std::cout << "tropicalization\n" << serialize_trop(cert.trop);
        std::cout << "lagerberg\n" << serialize_lagerberg(cert.form);
        std::cout << "restriction\n" << serialize_form(cert.restricted);
        std::cout << "verified yes\n";
        return kExitOk;
    }

    if (c_unweight->parsed()) {
        auto g = load_graph(graph_path);
        std::cout << serialize_graph(unweight(g).first);
        return kExitOk;
    }

    if (c_subdivide->parsed()) {
        auto g = load_graph(graph_path);
        std::vector<std::pair<int, Rational>> cuts;
        for (const auto& spec : cut_specs) {
            auto colon = spec.find(':');
            if (colon == std::string::npos) throw InputError("--at expects edge:position");
            cuts.emplace_back(std::stoi(spec.substr(0, colon)),
                              parse_rational(spec.substr(colon + 1)));
        }
        std::cout << serialize_graph(subdivide(g, cuts).first);
        return kExitOk;
    }

    if (c_skeleton->parsed()) {
        auto d = parse_skeleton_string(slurp(skeleton_path));
        auto vr = validate_skeleton(d);
        if (!vr.ok()) throw InputError("invalid skeleton: " + vr.problems.front());
        std::cout << serialize_graph(skeleton_to_graph(d));
        print_dimensions("curve", curve_cohomology(d));
        return kExitOk;
    }

    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

#pragma once

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbistack/expr.hpp"
#include "orbistack/groupoid_io.hpp"
#include "orbistack/lens.hpp"
#include "orbistack/lifted.hpp"
#include "orbistack/report.hpp"
#include "orbistack/rotation.hpp"
#include "orbistack/toral.hpp"

namespace orbistack::cli {

// Exit codes: 0 equivalent/true/success, 1 not equivalent/false,
// 2 unknown (a bounded search ran out), 64 usage errors, 65 malformed
// input (expressions, matrices, files, domain preconditions), 70 an
// internal invariant failed. The code is a function of the verdict only,
// never of output flags.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;
inline constexpr int kExitInternal = 70;

namespace detail {

struct Options {
    bool json = false;
    bool timing = false;

    std::string tau, sigma;
    long oracle_bound = 0;
    bool oracle_requested = false;

    std::string mat_a, mat_b;
    std::string method = "auto";
    long bound = 10;

    long p = 0, q = 0, q2 = 0;
    std::string level = "stack";

    std::string domain_file, codomain_file, morphism_file;

    std::string matrix;
    long kmax = 6;
};

inline std::string classes_to_line(const std::vector<std::vector<long>>& classes) {
    std::string s;
    for (const auto& cls : classes) {
        if (!s.empty()) s += " ";
        s += "{";
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(cls[i]);
        }
        s += "}";
    }
    return s;
}

inline Json classes_to_json(const std::vector<std::vector<long>>& classes) {
    Json out = Json::array();
    for (const auto& cls : classes) out.push_back(cls);
    return out;
}

struct Run {
    int exit_code = kExitTrue;
    std::string human;
    Json report;
};

inline Run run_rotation_equiv(const Options& o, const std::vector<std::string>& argv) {
    QuadraticNumber tau = parse_quadratic(o.tau);
    QuadraticNumber sigma = parse_quadratic(o.sigma);
    auto v = gl2z_equivalent(tau, sigma);

    Run r;
    r.exit_code = v.equivalent ? kExitTrue : kExitFalse;
    r.human = "tau: " + print_quadratic(tau) + "\n" +
              "sigma: " + print_quadratic(sigma) + "\n" +
              "equivalent: " + (v.equivalent ? "yes" : "no") + "\n" +
              "reason: " + to_string(v.reason) + "\n";
    r.report = make_report("rotation equiv", argv);
    r.report["tau"] = print_quadratic(tau);
    r.report["sigma"] = print_quadratic(sigma);
    r.report["verdict"] = v.equivalent ? "equivalent" : "not-equivalent";
    r.report["reason"] = to_string(v.reason);

    if (o.oracle_requested) {
        auto s = brute_force_equiv_oracle(tau, sigma, o.oracle_bound);
        if (s.found()) {
            r.human += "oracle: witness " + s.witness->to_string() + "\n";
            r.report["oracle"] = Json{{"bound", s.bound},
                                      {"found", true},
                                      {"witness", matrix_to_json(*s.witness)}};
            if (!v.equivalent) throw InternalError("oracle witness contradicts the tail decision");
        } else {
            r.human += "oracle: no witness with entries up to " + std::to_string(s.bound) + "\n";
            r.report["oracle"] = Json{{"bound", s.bound}, {"found", false}};
        }
    }
    return r;
}

inline Run run_toral_equiv(const Options& o, const std::vector<std::string>& argv) {
    IntegerMatrix a = parse_matrix(o.mat_a);
    IntegerMatrix b = parse_matrix(o.mat_b);
    ConjugacyConfig config;
    config.bound = o.bound;
    if (o.method == "lm")
        config.method = ConjugacyMethod::LatimerMacDuffee;
    else if (o.method == "search")
        config.method = ConjugacyMethod::BoundedSearch;
    else if (o.method == "auto")
        config.method = ConjugacyMethod::Auto;
    else
        throw DomainError("unknown method '" + o.method + "' (expected lm, search or auto)");

    auto v = toral_stack_equiv(a, b, config);

    Run r;
    r.exit_code = v.yes() ? kExitTrue : (v.no() ? kExitFalse : kExitUnknown);
    r.human = "a: " + a.to_string() + "\n" + "b: " + b.to_string() + "\n";
    r.report = make_report("toral equiv", argv);
    r.report["a"] = matrix_to_json(a);
    r.report["b"] = matrix_to_json(b);
    if (v.yes()) {
        r.human += "verdict: yes\nbranch: " + v.branch + "\nmethod: " + v.method + "\n" +
                   "certificate: " + v.certificate->to_string() + "\n";
        r.report["verdict"] = "yes";
        r.report["branch"] = v.branch;
        r.report["method"] = v.method;
        r.report["certificate"] = matrix_to_json(*v.certificate);
    } else if (v.no()) {
        r.human += "verdict: no\nmethod: " + v.method + "\nobstruction: " + v.obstruction + "\n";
        r.report["verdict"] = "no";
        r.report["method"] = v.method;
        r.report["obstruction"] = v.obstruction;
    } else {
        r.human += "verdict: unknown\nbound: " + std::to_string(v.bound) + "\n";
        r.report["verdict"] = "unknown";
        r.report["bound"] = v.bound;
    }
    if (!v.note.empty()) {
        r.human += "note: " + v.note + "\n";
        r.report["note"] = v.note;
    }
    return r;
}

inline Run run_lens_classify(const Options& o, const std::vector<std::string>& argv) {
    auto c = lens_classify(o.p);
    Run r;
    r.exit_code = kExitTrue;
    r.human = "p: " + std::to_string(o.p) + "\n" +
              "homotopy: " + classes_to_line(c.homotopy_classes) + "\n" +
              "homeomorphism: " + classes_to_line(c.homeo_classes) + "\n" +
              "stack: " + classes_to_line(c.stack_classes) + "\n";
    r.report = make_report("lens classify", argv);
    r.report["p"] = o.p;
    r.report["units"] = c.units;
    r.report["partitions"] = Json{{"homotopy", classes_to_json(c.homotopy_classes)},
                                  {"homeomorphism", classes_to_json(c.homeo_classes)},
                                  {"stack", classes_to_json(c.stack_classes)}};
    r.report["verdict"] = "ok";
    return r;
}

inline Run run_lens_equiv(const Options& o, const std::vector<std::string>& argv) {
    bool eq;
    if (o.level == "stack")
        eq = lens_stack_equiv(o.p, o.q, o.q2);
    else if (o.level == "homeo")
        eq = lens_homeo_equiv(o.p, o.q, o.q2);
    else if (o.level == "homotopy")
        eq = lens_homotopy_equiv(o.p, o.q, o.q2);
    else
        throw DomainError("unknown level '" + o.level + "' (expected stack, homeo or homotopy)");

    Run r;
    r.exit_code = eq ? kExitTrue : kExitFalse;
    r.human = "p: " + std::to_string(o.p) + "\nq: " + std::to_string(o.q) +
              "\nq2: " + std::to_string(o.q2) + "\nlevel: " + o.level +
              "\nequivalent: " + (eq ? "yes" : "no") + "\n";
    r.report = make_report("lens equiv", argv);
    r.report["p"] = o.p;
    r.report["q"] = o.q;
    r.report["q2"] = o.q2;
    r.report["level"] = o.level;
    r.report["verdict"] = eq ? "equivalent" : "not-equivalent";
    return r;
}

inline Run run_groupoid_morita(const Options& o, const std::vector<std::string>& argv) {
    NamedAction dom = load_action(load_json_file(o.domain_file));
    NamedAction cod = load_action(load_json_file(o.codomain_file));
    ActionMorphism m = load_action_morphism(load_json_file(o.morphism_file), dom, cod);
    auto v = is_morita(dom.action, cod.action, m);

    Run r;
    r.exit_code = v.morita ? kExitTrue : kExitFalse;
    r.human = std::string("essentially surjective: ") + (v.essentially_surjective ? "yes" : "no") +
              "\n" + "fully faithful: " + (v.fully_faithful ? "yes" : "no") + "\n" +
              "morita: " + (v.morita ? "yes" : "no") + "\n";
    if (v.witness) r.human += "witness: " + v.witness->describe() + "\n";
    r.report = make_report("groupoid morita", argv);
    r.report["essentially_surjective"] = v.essentially_surjective;
    r.report["fully_faithful"] = v.fully_faithful;
    r.report["verdict"] = v.morita ? "morita" : "not-morita";
    if (v.witness) r.report["witness"] = v.witness->describe();
    return r;
}

inline Run run_groupoid_factor(const Options& o, const std::vector<std::string>& argv) {
    NamedAction dom = load_action(load_json_file(o.domain_file));
    NamedAction cod = load_action(load_json_file(o.codomain_file));
    ActionMorphism m = load_action_morphism(load_json_file(o.morphism_file), dom, cod);
    auto res = factor_morita(dom.action, cod.action, m);

    Run r;
    r.report = make_report("groupoid factor", argv);
    if (res.ok()) {
        const auto& s = *res.success;
        std::vector<long> kernel_ids;
        for (int e : s.kernel.embedding) kernel_ids.push_back(e);
        r.exit_code = kExitTrue;
        r.human = "factors: yes\n";
        r.human += "kernel order: " + std::to_string(s.kernel.group.order()) + "\n";
        r.human += "kernel acts freely: yes\n";
        r.human += "quotient: group of order " + std::to_string(s.quotient.quotient.group().order()) +
                   " acting on " + std::to_string(s.quotient.quotient.objects()) + " objects\n";
        r.human += "induced map: isomorphism\n";
        r.report["verdict"] = "factors";
        r.report["kernel"] = Json{{"order", s.kernel.group.order()}, {"elements", kernel_ids}};
        r.report["quotient"] = Json{{"group_order", s.quotient.quotient.group().order()},
                                    {"objects", s.quotient.quotient.objects()}};
        r.report["projection"] = Json{{"lambda", s.projection.lambda}, {"phi", s.projection.phi}};
        r.report["induced"] = Json{{"lambda", s.induced.lambda}, {"phi", s.induced.phi}};
    } else {
        r.exit_code = kExitFalse;
        bool not_morita = res.failure_kind == FactorFailureKind::NotMorita;
        r.human = "factors: no\n";
        r.human += std::string("reason: ") + (not_morita ? "not a morita morphism" : res.detail) + "\n";
        if (res.morita_witness) r.human += "witness: " + res.morita_witness->describe() + "\n";
        r.report["verdict"] = not_morita ? "not-morita" : "induced-map-not-iso";
        r.report["reason"] = not_morita && res.morita_witness ? res.morita_witness->describe()
                                                              : res.detail;
    }
    return r;
}

inline Run run_lifted_commutator_lattice(const Options& o, const std::vector<std::string>& argv) {
    IntegerMatrix a = parse_matrix(o.matrix);
    auto cl = commutator_lattice(a, o.kmax);

    Run r;
    r.exit_code = kExitTrue;
    r.human = "matrix: " + a.to_string() + "\nkmax: " + std::to_string(o.kmax) + "\n" +
              "rank: " + std::to_string(cl.basis.rank()) + "\n";
    std::string basis_line;
    for (const auto& col : cl.basis.basis) {
        if (!basis_line.empty()) basis_line += " ";
        basis_line += "[";
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (i) basis_line += ",";
            basis_line += col[i].get_str();
        }
        basis_line += "]";
    }
    r.human += "basis: " + basis_line + "\n";
    r.human += "index: " + (cl.index ? cl.index->get_str() : std::string("infinite")) + "\n";

    r.report = make_report("lifted commutator-lattice", argv);
    r.report["matrix"] = matrix_to_json(a);
    r.report["kmax"] = o.kmax;
    r.report["rank"] = cl.basis.rank();
    Json basis = Json::array();
    for (const auto& col : cl.basis.basis) {
        Json v = Json::array();
        for (const auto& e : col) v.push_back(int_to_json(e));
        basis.push_back(std::move(v));
    }
    r.report["basis"] = std::move(basis);
    if (cl.index)
        r.report["index"] = int_to_json(*cl.index);
    else
        r.report["index"] = "infinite";
    r.report["verdict"] = "ok";
    return r;
}

}  // namespace detail

/// Parses and runs one invocation; output goes to `out`, diagnostics to
/// `err`. Returns the process exit code.
inline int dispatch(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact classification of orbit stacks of discrete dynamical systems"};
    app.require_subcommand(1);
    detail::Options o;

    auto* rotation = app.add_subcommand("rotation", "circle rotations");
    auto* rot_equiv = rotation->add_subcommand("equiv", "decide stack equivalence of two rotation numbers");
    rot_equiv->add_option("--tau", o.tau, "first rotation number (expression)")->required();
    rot_equiv->add_option("--sigma", o.sigma, "second rotation number (expression)")->required();
    auto* ob = rot_equiv->add_option("--oracle-bound", o.oracle_bound,
                                     "also run the exhaustive homography search up to this entry bound");
    rotation->require_subcommand(1);

    auto* toral = app.add_subcommand("toral", "hyperbolic toral automorphisms");
    auto* toral_equiv = toral->add_subcommand("equiv", "decide stack equivalence of two matrices");
    toral_equiv->add_option("--a", o.mat_a, "first matrix literal")->required();
    toral_equiv->add_option("--b", o.mat_b, "second matrix literal")->required();
    toral_equiv->add_option("--method", o.method, "lm, search or auto (default auto)");
    toral_equiv->add_option("--bound", o.bound, "entry bound for the bounded search (default 10)");
    toral->require_subcommand(1);

    auto* lens = app.add_subcommand("lens", "lens spaces");
    auto* lens_classify_cmd = lens->add_subcommand("classify", "three-level classification for a given p");
    lens_classify_cmd->add_option("--p", o.p, "order of the cyclic group")->required();
    auto* lens_equiv_cmd = lens->add_subcommand("equiv", "compare two lens spaces at one level");
    lens_equiv_cmd->add_option("--p", o.p, "order of the cyclic group")->required();
    lens_equiv_cmd->add_option("--q", o.q, "first parameter")->required();
    lens_equiv_cmd->add_option("--q2", o.q2, "second parameter")->required();
    lens_equiv_cmd->add_option("--level", o.level, "stack, homeo or homotopy (default stack)");
    lens->require_subcommand(1);

    auto* groupoid = app.add_subcommand("groupoid", "finite action groupoids");
    auto* gm = groupoid->add_subcommand("morita", "test a morphism for the Morita property");
    auto* gf = groupoid->add_subcommand("factor", "factor a Morita morphism through a free quotient");
    for (auto* sub : {gm, gf}) {
        sub->add_option("--domain", o.domain_file, "domain groupoid JSON file")->required();
        sub->add_option("--codomain", o.codomain_file, "codomain groupoid JSON file")->required();
        sub->add_option("--morphism", o.morphism_file, "morphism JSON file")->required();
    }
    groupoid->require_subcommand(1);

    auto* lifted = app.add_subcommand("lifted", "lifted groups Z x_A Z^n");
    auto* cl = lifted->add_subcommand("commutator-lattice", "lattice spanned by commutator translation parts");
    cl->add_option("--matrix", o.matrix, "unimodular matrix literal")->required();
    cl->add_option("--kmax", o.kmax, "largest exponent magnitude (default 6)");
    lifted->require_subcommand(1);

    for (auto* sub : {rot_equiv, toral_equiv, lens_classify_cmd, lens_equiv_cmd, gm, gf, cl}) {
        sub->add_flag("--json", o.json, "emit a machine-readable report");
        sub->add_flag("--timing", o.timing, "include wall-clock timing in the report");
    }

    std::vector<std::string> echo = argv;
    try {
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitTrue : kExitUsage;
    }
    o.oracle_requested = ob->count() > 0;
    auto started = std::chrono::steady_clock::now();
    detail::Run r;
    try {
        if (rot_equiv->parsed())
            r = detail::run_rotation_equiv(o, echo);
        else if (toral_equiv->parsed())
            r = detail::run_toral_equiv(o, echo);
        else if (lens_classify_cmd->parsed())
            r = detail::run_lens_classify(o, echo);
        else if (lens_equiv_cmd->parsed())
            r = detail::run_lens_equiv(o, echo);
        else if (gm->parsed())
            r = detail::run_groupoid_morita(o, echo);
        else if (gf->parsed())
            r = detail::run_groupoid_factor(o, echo);
        else if (cl->parsed())
            r = detail::run_lifted_commutator_lattice(o, echo);
        else {
            err << "usage error: missing subcommand\n";
            return kExitUsage;
        }
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }

    if (o.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        r.report["timing_ms"] = ms;
    }
    if (o.json)
        out << render_report(r.report);
    else
        out << r.human;
    return r.exit_code;
}

}  // namespace orbistack::cli

#pragma once

// Command-line front end. run_command takes the arguments after the program
// name and writes the report to `out`, diagnostics to `err`.
//
// Exit codes: 0 solved / holds, 2 diagnosed unsolvable, 1 error (usage,
// I/O, violated hypothesis, failed certificate).

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opeq/congruence.hpp"
#include "opeq/douglas.hpp"
#include "opeq/harness.hpp"
#include "opeq/matrix_file.hpp"
#include "opeq/shift_demo.hpp"
#include "opeq/sylvester.hpp"

namespace opeq::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kError = 1, kUnsolvable = 2 };

namespace detail {

inline Json to_json(const RangeDecision& d) {
    return Json{{"holds", d.holds},
                {"residual", d.residual},
                {"ranks", {{"subject", d.ranks.subject}, {"target", d.ranks.target}, {"joint", d.ranks.joint}}}};
}

inline Json to_json(const Certificate& c) {
    Json residuals = Json::object();
    for (const auto& r : c.residuals) {
        residuals[r.name] = {{"value", r.value},
                             {"threshold", r.threshold},
                             {"bound", r.upper_bound ? "upper" : "lower"},
                             {"pass", r.passed()}};
    }
    Json decisions = Json::object();
    for (const auto& [name, d] : c.decisions) decisions[name] = to_json(d);
    Json info = Json::object();
    for (const auto& [name, v] : c.info) info[name] = v;
    return Json{{"equation", c.equation}, {"pass", c.pass}, {"residuals", residuals}, {"decisions", decisions},
                {"info", info}};
}

inline Json to_json(const SylvesterDiagnosis& d, const ToleranceConfig& tol) {
    return Json{{"solvable", d.solvable()},
                {"R(C N_B) in R(A)", to_json(d.cond_range_cnb)},
                {"R(P_B* C*) in R(B*)", to_json(d.cond_range_pbc)},
                {"classical_residual", d.classical_residual},
                {"classical_residual_relative", relative_to(d.classical_residual, d.scale)},
                {"scale", d.scale},
                {"tolerance_anomaly", d.tolerance_anomaly(tol)}};
}

inline Json to_json(const CongruenceDiagnosis& d, const ToleranceConfig& tol) {
    return Json{{"hypotheses_hold", d.hypotheses_hold(tol)},
                {"criteria_hold", d.criteria_hold()},
                {"R(C) in R(B)", to_json(d.hyp_c_in_b)},
                {"R(C*) in R(A)", to_json(d.hyp_cstar_in_a)},
                {"B* C* P_A residual", d.hyp_cstar_pa_in_nbstar},
                {"R(C N_B*) in R(A)", to_json(d.cond_cnbstar_in_a)},
                {"R(C* N_A*) in R(B)", to_json(d.cond_cstar_nastar_in_b)}};
}

inline Json to_json(const IntersectionReport& r) {
    return Json{{"dim", r.dim},
                {"rank_formula_dim", r.rank_formula_dim},
                {"dims_agree", r.dims_agree()},
                {"projection_residual", r.projection_residual},
                {"kernel_residual", r.kernel_residual},
                {"block_identity_residual", r.block_identity_residual},
                {"ax_bz_residual", r.ax_bz_residual},
                {"R(sqrt(AXA*)) in intersection", to_json(r.sqrt_axa_in_intersection)},
                {"R(sqrt(BYB*)) in intersection", to_json(r.sqrt_byb_in_intersection)},
                {"pn_s_invariant_residual", r.pn_s_invariant_residual}};
}

inline Json shape_of(const ComplexMatrix& m) { return Json::array({m.rows(), m.cols()}); }

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(6) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

inline bool is_scalar_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (e.is_structured()) return false;
    return true;
}

/// Human-readable form: one "key: value" line per leaf, nested keys joined
/// by '.', and {"columns", "rows"} objects as aligned tables.
inline void render_human(const Json& v, std::ostream& os, const std::string& prefix = "") {
    if (v.is_object() && v.contains("columns") && v.contains("rows") && v.size() == 2) {
        os << prefix << ":\n";
        for (const auto& c : v["columns"]) os << std::setw(16) << scalar_text(c);
        os << "\n";
        for (const auto& row : v["rows"]) {
            for (const auto& cell : row) os << std::setw(16) << scalar_text(cell);
            os << "\n";
        }
        return;
    }
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) render_human(child, os, prefix.empty() ? key : prefix + "." + key);
        return;
    }
    if (is_scalar_array(v)) {
        os << prefix << ": [";
        bool first = true;
        for (const auto& e : v) {
            os << (first ? "" : ", ") << scalar_text(e);
            first = false;
        }
        os << "]\n";
        return;
    }
    if (v.is_array()) {
        std::size_t i = 0;
        for (const auto& e : v) render_human(e, os, prefix + "[" + std::to_string(i++) + "]");
        return;
    }
    os << prefix << ": " << scalar_text(v) << "\n";
}

struct Shared {
    double tol_rank = ToleranceConfig{}.rank_rel;
    double tol_residual = ToleranceConfig{}.residual_rel;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    bool json = false;

    ToleranceConfig tolerances() const {
        ToleranceConfig t{tol_rank, tol_residual};
        t.validate();
        return t;
    }
};

struct Inputs {
    std::string a, b, c;
};

class Session {
public:
    Session(const Shared& shared, std::ostream& out, std::ostream& err) : shared_(shared), out_(out), err_(err) {}

    ToleranceConfig tol() const { return shared_.tolerances(); }

    Json header(const std::string& command, const std::string& equation) const {
        const ToleranceConfig t = tol();
        Json r;
        r["command"] = command;
        if (!equation.empty()) r["equation"] = equation;
        r["tolerances"] = {{"rank_rel", t.rank_rel}, {"residual_rel", t.residual_rel}};
        return r;
    }

    ComplexMatrix load(const std::string& path, const char* name, Json& report) const {
        if (path.empty()) throw InvalidArgument(std::string("--") + name + " is required");
        ComplexMatrix m = load_matrix(path);
        report["inputs"][name] = shape_of(m);
        return m;
    }

    void write_outputs(const NamedOperators& mats, Json& report, std::optional<std::size_t> block_k = std::nullopt) const {
        if (shared_.out_dir.empty()) return;
        std::filesystem::create_directories(shared_.out_dir);
        Json files = Json::array();
        for (const auto& [name, m] : mats) {
            const std::string file = name + ".json";
            save_matrix(std::filesystem::path(shared_.out_dir) / file, m, block_k);
            files.push_back(file);
        }
        report["outputs"] = files;
    }

    int finish(Json& report, const std::string& status, int code) const {
        report["status"] = status;
        report["exit_code"] = code;
        if (shared_.json) {
            out_ << report.dump(2) << "\n";
        } else {
            render_human(report, out_);
        }
        return code;
    }

private:
    const Shared& shared_;
    std::ostream& out_;
    std::ostream& err_;
};

inline int solved_or_failed(const Session& s, Json& report, const Certificate& cert) {
    report["certificate"] = to_json(cert);
    return cert.pass ? s.finish(report, "solved", kOk) : s.finish(report, "certificate-failed", kError);
}

inline int cmd_diagnose(const Session& s, const std::string& equation, const Inputs& in) {
    Json report = s.header("diagnose", equation);
    const ToleranceConfig tol = s.tol();
    const ComplexMatrix a = s.load(in.a, "A", report);
    const ComplexMatrix b = s.load(in.b, "B", report);
    const ComplexMatrix c = s.load(in.c, "C", report);
    if (equation == "sylvester") {
        const SylvesterDiagnosis d = diagnose_ax_yb(a, b, c, tol);
        report["diagnosis"] = to_json(d, tol);
        return d.solvable() ? s.finish(report, "solvable", kOk) : s.finish(report, "unsolvable", kUnsolvable);
    }
    const CongruenceDiagnosis d = diagnose_congruence(a, b, c, tol);
    report["diagnosis"] = to_json(d, tol);
    if (!d.hypotheses_hold(tol)) return s.finish(report, "hypothesis-violated", kError);
    return d.criteria_hold() ? s.finish(report, "solvable", kOk) : s.finish(report, "unsolvable", kUnsolvable);
}

inline int cmd_solve(const Session& s, const Shared& shared, const std::string& equation, const Inputs& in) {
    Json report = s.header("solve", equation);
    const ToleranceConfig tol = s.tol();
    const ComplexMatrix a = s.load(in.a, "A", report);
    const ComplexMatrix b = equation == "douglas" ? ComplexMatrix() : s.load(in.b, "B", report);
    const ComplexMatrix c = s.load(in.c, "C", report);

    if (equation == "douglas") {
        try {
            const ReducedSolutionReport r = reduced_solution(a, c, tol);
            report["solution"] = {{"residual", r.residual},
                                  {"reduced_certificate", r.reduced_certificate},
                                  {"lambda", r.lambda_factor}};
            s.write_outputs({{"X", r.d}}, report);
            return solved_or_failed(s, report, verify("douglas", {{"A", a}, {"C", c}}, {{"X", r.d}}, tol));
        } catch (const RangeNotContained& e) {
            report["diagnosis"] = {{"R(C) in R(A)", to_json(range_inclusion(c, a, tol))}};
            return s.finish(report, "unsolvable", kUnsolvable);
        }
    }
    if (equation == "sylvester") {
        const SylvesterDiagnosis d = diagnose_ax_yb(a, b, c, tol);
        report["diagnosis"] = to_json(d, tol);
        if (!d.solvable()) return s.finish(report, "unsolvable", kUnsolvable);
        const SylvesterSolution sol =
            shared.seed_given ? solve_ax_yb(a, b, c, sample_params(a, b, shared.seed), tol) : solve_ax_yb(a, b, c, tol);
        report["solution"] = {{"residual", sol.residual},
                              {"parameters", shared.seed_given ? "random" : "zero"}};
        if (shared.seed_given) report["solution"]["parameter_seed"] = shared.seed;
        s.write_outputs({{"X", sol.x}, {"Y", sol.y}}, report);
        return solved_or_failed(s, report,
                                verify("sylvester", {{"A", a}, {"B", b}, {"C", c}}, {{"X", sol.x}, {"Y", sol.y}}, tol));
    }
    if (equation == "orthogonal") {
        try {
            const OrthogonalSolution sol = solve_ax_by_orthogonal(a, b, c, tol);
            report["solution"] = {{"residual", sol.residual},
                                  {"lambda", sol.lambda},
                                  {"hypothesis_residual", sol.hypothesis_residual},
                                  {"off_block_residual", sol.off_block_residual},
                                  {"off_block_anomaly", sol.off_block_anomaly},
                                  {"majorization_certified", sol.majorization_certified}};
            s.write_outputs({{"X", sol.x}, {"Y", sol.y}}, report);
            return solved_or_failed(
                s, report, verify("orthogonal", {{"A", a}, {"B", b}, {"C", c}}, {{"X", sol.x}, {"Y", sol.y}}, tol));
        } catch (const HypothesisViolated& e) {
            report["diagnosis"] = {{"hypothesis", e.hypothesis()}, {"residual", e.residual()}};
            return s.finish(report, "hypothesis-violated", kError);
        } catch (const NotSolvable& e) {
            report["diagnosis"] = {{"R(C) in R(A) + R(B)", to_json(range_inclusion(c, hstack(a, b), tol))}};
            return s.finish(report, "unsolvable", kUnsolvable);
        }
    }
    if (equation == "congruence") {
        const CongruenceDiagnosis d = diagnose_congruence(a, b, c, tol);
        report["diagnosis"] = to_json(d, tol);
        if (!d.hypotheses_hold(tol)) return s.finish(report, "hypothesis-violated", kError);
        if (!d.criteria_hold()) return s.finish(report, "unsolvable", kUnsolvable);
        const CongruenceSolution sol = solve_congruence(a, b, c, tol);
        const NecessityReport nec = solvability_necessity_check(a, b, c, sol.x, sol.y, tol);
        report["solution"] = {{"residual", sol.residual}, {"necessity_check", nec.pass()}};
        s.write_outputs({{"X", sol.x}, {"Y", sol.y}}, report);
        return solved_or_failed(s, report,
                                verify("congruence", {{"A", a}, {"B", b}, {"C", c}}, {{"X", sol.x}, {"Y", sol.y}}, tol));
    }
    // congruence-cz
    try {
        const CzSolution sol = solve_congruence_cz(a, b, c, tol);
        report["intersection"] = to_json(sol.intersection);
        report["solution"] = {{"residual", sol.residual},
                              {"x_norm", frobenius(sol.x)},
                              {"y_norm", frobenius(sol.y)},
                              {"z_norm", frobenius(sol.z)},
                              {"intersection in R(C)", to_json(sol.intersection_in_c)}};
        s.write_outputs({{"X", sol.x}, {"Y", sol.y}, {"Z", sol.z}}, report);
        return solved_or_failed(s, report,
                                verify("congruence-cz", {{"A", a}, {"B", b}, {"C", c}},
                                       {{"X", sol.x}, {"Y", sol.y}, {"Z", sol.z}}, tol));
    } catch (const EmptyIntersection&) {
        report["intersection"] = to_json(range_intersection(a, b, tol));
        return s.finish(report, "unsolvable", kUnsolvable);
    } catch (const IntersectionNotInRangeC& e) {
        report["intersection"] = to_json(range_intersection(a, b, tol));
        report["diagnosis"] = {{"intersection in R(C) residual", e.residual()}};
        return s.finish(report, "unsolvable", kUnsolvable);
    } catch (const HypothesisViolated& e) {
        report["intersection"] = to_json(range_intersection(a, b, tol));
        report["diagnosis"] = {{"hypothesis", e.hypothesis()}, {"residual", e.residual()}};
        return s.finish(report, "hypothesis-violated", kError);
    }
}

inline int cmd_intersect(const Session& s, const Inputs& in) {
    Json report = s.header("intersect", "");
    const ToleranceConfig tol = s.tol();
    const ComplexMatrix a = s.load(in.a, "A", report);
    const ComplexMatrix b = s.load(in.b, "B", report);
    const IntersectionReport r = range_intersection(a, b, tol);
    report["intersection"] = to_json(r);
    s.write_outputs({{"P", r.p}, {"basis", r.intersection_basis}}, report);
    return s.finish(report, "holds", kOk);
}

inline std::vector<std::size_t> parse_counts(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw InvalidArgument("'" + item + "' is not a non-negative integer");
        }
    }
    return out;
}

inline std::map<std::string, std::size_t> parse_ranks(const std::string& text) {
    std::map<std::string, std::size_t> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidArgument("rank target '" + item + "' is not key=value");
        const auto values = parse_counts(item.substr(eq + 1));
        if (values.size() != 1) throw InvalidArgument("rank target '" + item + "' is not key=value");
        out[item.substr(0, eq)] = values[0];
    }
    return out;
}

inline int cmd_gen(const Session& s, const Shared& shared, const std::string& family, const std::string& shape,
                   const std::string& ranks, double lambda) {
    Json report = s.header("gen", "");
    if (shared.out_dir.empty()) throw InvalidArgument("gen requires --out");
    InstanceSpec spec;
    spec.family = parse_family(family);
    spec.seed = shared.seed;
    spec.lambda = lambda;
    const auto dims = parse_counts(shape);
    if (dims.size() != 4 && dims.size() != 5) throw InvalidArgument("--shape takes m,n,p,q[,k]");
    spec.shape = Shape{dims[0], dims[1], dims[2], dims[3], dims.size() == 5 ? dims[4] : 1};
    spec.ranks = parse_ranks(ranks);

    const NamedOperators ops = generate(spec);
    report["family"] = std::string(to_string(spec.family));
    report["seed"] = spec.seed;
    report["shape"] = {{"m", spec.shape.m}, {"n", spec.shape.n}, {"p", spec.shape.p}, {"q", spec.shape.q},
                       {"k", spec.shape.k}};
    Json r = Json::object();
    for (const auto& [key, v] : spec.ranks) r[key] = v;
    report["ranks"] = r;
    if (spec.family == Family::ScaledEqualityPair) report["lambda"] = spec.lambda;
    Json shapes = Json::object();
    for (const auto& [name, m] : ops) shapes[name] = shape_of(m);
    report["operators"] = shapes;
    s.write_outputs(ops, report, spec.shape.k > 1 ? std::optional<std::size_t>(spec.shape.k) : std::nullopt);
    return s.finish(report, "generated", kOk);
}

inline int cmd_demo(const Session& s, std::size_t n) {
    Json report = s.header("demo", "");
    report["demo"] = "truncated-shift";
    const ShiftDemoReport r = truncated_shift_demo(n, s.tol());
    report["n"] = r.n;
    report["singular_values"] = r.singular_values;
    report["min_nonzero_sigma"] = r.min_nonzero_sigma;
    report["rank"] = r.rank;
    report["pinv_norm"] = r.pinv_norm;
    Json rows = Json::array();
    for (std::size_t j = 1; j <= r.n; ++j) rows.push_back({j, r.singular_values[j - 1], 1.0 / static_cast<double>(j)});
    report["table"] = {{"columns", {"j", "sigma_j", "weight_1_over_j"}}, {"rows", rows}};
    return s.finish(report, "holds", kOk);
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver for AX = C, AX + YB = C, AX + BY = C, AXA* + BYB* = C and AXA* + BYB* = CZ", "opeq"};
    app.require_subcommand(1);
    app.fallthrough();

    detail::Shared shared;
    app.add_option("--tol-rank", shared.tol_rank, "relative rank tolerance");
    app.add_option("--tol-residual", shared.tol_residual, "relative residual tolerance");
    auto* seed_opt = app.add_option("--seed", shared.seed, "seed for gen, or random parameters for solve sylvester");
    app.add_option("--out", shared.out_dir, "directory for output matrix files");
    app.add_flag("--json", shared.json, "emit the report as JSON");

    detail::Inputs in;
    auto add_inputs = [&in](CLI::App* sub, bool with_b, bool with_c) {
        sub->add_option("--A", in.a, "matrix file for A");
        if (with_b) sub->add_option("--B", in.b, "matrix file for B");
        if (with_c) sub->add_option("--C", in.c, "matrix file for C");
    };

    std::string diag_eq;
    auto* diagnose = app.add_subcommand("diagnose", "decide solvability");
    diagnose->add_option("equation", diag_eq)->required()->check(CLI::IsMember({"sylvester", "congruence"}));
    add_inputs(diagnose, true, true);

    std::string solve_eq;
    auto* solve = app.add_subcommand("solve", "solve and certify");
    solve->add_option("equation", solve_eq)
        ->required()
        ->check(CLI::IsMember({"douglas", "sylvester", "congruence", "congruence-cz", "orthogonal"}));
    add_inputs(solve, true, true);

    auto* intersect = app.add_subcommand("intersect", "range intersection of A and B");
    add_inputs(intersect, true, false);

    std::string family = "sylvester-solvable";
    std::string shape = "4,4,4,4,1";
    std::string ranks;
    double lambda = 4.0;
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    gen->add_option("--family", family, "instance family");
    gen->add_option("--shape", shape, "m,n,p,q[,k]");
    gen->add_option("--ranks", ranks, "rank targets, e.g. a=2,b=1");
    gen->add_option("--lambda", lambda, "scale for scaled-equality-pair");

    std::string demo_name;
    std::size_t demo_n = 5;
    auto* demo = app.add_subcommand("demo", "illustrations");
    demo->add_option("name", demo_name)->required()->check(CLI::IsMember({"truncated-shift"}));
    demo->add_option("--n", demo_n, "truncation size")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store{"opeq"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kError;
    }
    shared.seed_given = seed_opt->count() > 0;

    detail::Session session(shared, out, err);
    try {
        if (diagnose->parsed()) return detail::cmd_diagnose(session, diag_eq, in);
        if (solve->parsed()) return detail::cmd_solve(session, shared, solve_eq, in);
        if (intersect->parsed()) return detail::cmd_intersect(session, in);
        if (gen->parsed()) return detail::cmd_gen(session, shared, family, shape, ranks, lambda);
        return detail::cmd_demo(session, demo_n);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace opeq::cli

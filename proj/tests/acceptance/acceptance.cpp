// Acceptance sweep. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opeq/cli.hpp"
#include "opeq/opeq.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using opeq::ComplexMatrix;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Accumulates failures and the worst observed value of a few named metrics.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            ++failures_;
            if (first_.empty()) first_ = what;
        }
    }

    void worst(const std::string& name, double v) {
        for (auto& [n, w] : worst_) {
            if (n == name) {
                w = std::max(w, v);
                return;
            }
        }
        worst_.emplace_back(name, v);
    }

    Outcome finish(const std::string& summary) const {
        std::ostringstream os;
        os << summary;
        for (const auto& [n, w] : worst_) os << ", max " << n << " " << w;
        if (failures_ > 0) os << "; " << failures_ << " failed checks, first: " << first_;
        return {failures_ == 0, os.str()};
    }

private:
    int failures_ = 0;
    std::string first_;
    std::vector<std::pair<std::string, double>> worst_;
};

opeq::Shape random_shape(gen::Source& src, long lo, long hi, bool blocks) {
    opeq::Shape s;
    s.m = static_cast<std::size_t>(src.dim(lo, hi));
    s.n = static_cast<std::size_t>(src.dim(lo, hi));
    s.p = static_cast<std::size_t>(src.dim(lo, hi));
    s.q = static_cast<std::size_t>(src.dim(lo, hi));
    s.k = blocks ? static_cast<std::size_t>(src.dim(1, 2)) : 1;
    return s;
}

opeq::NamedOperators make(opeq::Family f, std::uint64_t seed, const opeq::Shape& shape,
                          std::map<std::string, std::size_t> ranks = {}) {
    opeq::InstanceSpec spec;
    spec.family = f;
    spec.seed = seed;
    spec.shape = shape;
    spec.ranks = std::move(ranks);
    return opeq::generate(spec);
}

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

ComplexMatrix lower_shift() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

template <class Fn>
void guarded(Tally& t, const std::string& label, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        t.require(false, label + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------

Outcome penrose_suite() {
    Tally t;
    gen::Source src(1001);
    for (int i = 0; i < 500; ++i) {
        const long m = src.dim(1, 12), n = src.dim(1, 12);
        const long r = src.dim(0, std::min(m, n));
        const ComplexMatrix a = src.ranked(m, n, r);
        guarded(t, "matrix " + std::to_string(i), [&] {
            const auto p = oracle::penrose(a, opeq::pinv(a));
            t.worst("identity residual", p.worst());
            t.require(p.worst() <= 1e-10, "matrix " + std::to_string(i) + " Penrose residual " + std::to_string(p.worst()));
            t.require(static_cast<long>(opeq::numerical_rank(a)) == oracle::lu_rank(a),
                      "matrix " + std::to_string(i) + " rank disagrees with LU oracle");
        });
    }
    return t.finish("500 matrices");
}

Outcome douglas_suite() {
    Tally t;
    gen::Source src(1002);
    int tight = 0;
    const int total = 200;
    for (int i = 0; i < total; ++i) {
        const auto ops = make(opeq::Family::DouglasSolvable, 2000 + i, random_shape(src, 2, 7, i % 3 == 0));
        const ComplexMatrix &a = ops.at("A"), &c = ops.at("C");
        const std::string id = "instance " + std::to_string(i);
        guarded(t, id, [&] {
            const auto r = opeq::reduced_solution(a, c);
            const double reduced = opeq::relative_to(r.reduced_certificate, opeq::frobenius(r.d));
            t.worst("residual", r.residual);
            t.worst("P_A* D - D", reduced);
            t.require(r.residual <= 1e-8, id + " residual");
            t.require(reduced <= 1e-10, id + " reduced certificate");
            const double scale = opeq::spectral_norm(a * a.adjoint());
            const double margin = opeq::majorization_margin(a, c, r.lambda_factor * (1.0 + 1e-8));
            t.require(margin >= -1e-8 * scale, id + " lambda does not certify the majorization");
            if (!opeq::majorization_holds(a, c, r.lambda_factor * (1.0 - 1e-3))) ++tight;
        });
    }
    t.require(tight * 100 >= 95 * total, "near-tightness on only " + std::to_string(tight) + "/200");
    return t.finish("200 instances, lambda(1-1e-3) rejected on " + std::to_string(tight) + "/200");
}

Outcome non_equivalence_witness() {
    Tally t;
    // CC* = diag(0,1) is not dominated by any multiple of AA* = diag(1,0),
    // and R(C) = span e2 is not inside R(A) = span e1.
    const ComplexMatrix a = diag2(1, 0), c = lower_shift();
    bool diagnosed = false;
    try {
        opeq::reduced_solution(a, c);
    } catch (const opeq::RangeNotContained&) {
        diagnosed = true;
    } catch (const std::exception& e) {
        t.require(false, std::string("unexpected error ") + e.what());
    }
    t.require(diagnosed, "fixed instance not diagnosed RangeNotContained");
    t.require(!opeq::douglas_factor(a, c).has_value(), "douglas_factor returned a value");

    // Implication direction only: every solvable instance is majorized.
    gen::Source src(1003);
    for (int i = 0; i < 50; ++i) {
        const auto ops = make(opeq::Family::DouglasSolvable, 3000 + i, random_shape(src, 1, 6, false));
        guarded(t, "solvable " + std::to_string(i), [&] {
            const auto lambda = opeq::douglas_factor(ops.at("A"), ops.at("C"));
            t.require(lambda.has_value(), "solvable instance " + std::to_string(i) + " without a Douglas factor");
        });
    }
    return t.finish("fixed 2x2 instance diagnosed RangeNotContained; 50 solvable instances majorized");
}

Outcome sylvester_suite() {
    Tally t;
    gen::Source src(1004);
    for (int i = 0; i < 200; ++i) {
        const auto shape = random_shape(src, 2, 6, i % 4 == 0);
        const auto ops = make(opeq::Family::SylvesterSolvable, 4000 + i, shape);
        const ComplexMatrix &a = ops.at("A"), &b = ops.at("B"), &c = ops.at("C");
        const std::string id = "solvable " + std::to_string(i);
        guarded(t, id, [&] {
            t.require(opeq::numerical_rank(a) < static_cast<std::size_t>(std::min(a.rows(), a.cols())) &&
                          opeq::numerical_rank(b) < static_cast<std::size_t>(std::min(b.rows(), b.cols())),
                      id + " A or B is not rank deficient");
            const auto d = opeq::diagnose_ax_yb(a, b, c);
            t.require(d.solvable(), id + " diagnosed unsolvable");
            t.worst("classical/scale", d.classical_residual / d.scale);
            t.require(d.classical_residual <= 1e-10 * d.scale, id + " classical residual");
            const auto zero = opeq::solve_ax_yb(a, b, c);
            t.worst("solution residual", zero.residual);
            t.require(zero.residual <= 1e-8, id + " zero-parameter residual");
            for (std::uint64_t j = 0; j < 5; ++j) {
                const auto s = opeq::solve_ax_yb(a, b, c, opeq::sample_params(a, b, 10 * (4000 + i) + j));
                t.worst("solution residual", s.residual);
                t.require(s.residual <= 1e-8, id + " random-parameter residual");
            }
        });
    }
    double least = 1e300;
    for (int i = 0; i < 200; ++i) {
        const auto ops = make(opeq::Family::SylvesterUnsolvable, 5000 + i, random_shape(src, 2, 6, i % 4 == 0));
        const std::string id = "unsolvable " + std::to_string(i);
        guarded(t, id, [&] {
            const auto d = opeq::diagnose_ax_yb(ops.at("A"), ops.at("B"), ops.at("C"));
            t.require(!d.solvable(), id + " diagnosed solvable");
            least = std::min(least, d.classical_residual / d.scale);
            t.require(d.classical_residual >= 0.1 * d.scale, id + " classical residual below 0.1 scale");
        });
    }
    return t.finish("200 solvable x 6 parameter sets, 200 unsolvable (min classical/scale " + std::to_string(least) +
                    ")");
}

Outcome completeness_suite() {
    Tally t;
    gen::Source src(1005);
    for (int i = 0; i < 100; ++i) {
        const auto ops = make(opeq::Family::SylvesterSolvable, 6000 + i, random_shape(src, 2, 6, i % 4 == 0));
        const std::string id = "instance " + std::to_string(i);
        guarded(t, id, [&] {
            const auto w = opeq::completeness_witness(ops.at("A"), ops.at("B"), ops.at("C"), ops.at("X0"), ops.at("Y0"));
            t.worst("witness", std::max(w.witness_x, w.witness_y));
            t.require(w.pass, id + " witness exceeds 1e-8 scale");
        });
    }
    return t.finish("100 hidden solutions");
}

Outcome orthogonal_suite() {
    Tally t;
    gen::Source src(1006);
    for (int i = 0; i < 100; ++i) {
        opeq::Shape shape = random_shape(src, 2, 5, false);
        shape.m = shape.p + shape.q + static_cast<std::size_t>(src.dim(0, 2));
        const auto ops = make(opeq::Family::OrthogonalPair, 7000 + i, shape);
        const std::string id = "instance " + std::to_string(i);
        guarded(t, id, [&] {
            const auto s = opeq::solve_ax_by_orthogonal(ops.at("A"), ops.at("B"), ops.at("C"));
            t.worst("residual", s.residual);
            t.require(s.residual <= 1e-8, id + " residual");
            t.require(s.majorization_certified, id + " majorization certificate");
        });
    }
    return t.finish("100 instances");
}

Outcome congruence_suite() {
    Tally t;
    guarded(t, "worked solvable", [&] {
        const auto s = opeq::solve_congruence(diag2(1, 0), opeq::identity(2), lower_shift());
        t.worst("worked residual", s.residual);
        t.require(s.residual <= 1e-12, "worked instance residual");
        t.require(opeq::solvability_necessity_check(diag2(1, 0), opeq::identity(2), lower_shift(), s.x, s.y).pass(),
                  "worked instance necessity");
    });
    bool rejected = false;
    try {
        opeq::solve_congruence(diag2(1, 0), diag2(0, 1), lower_shift());
    } catch (const opeq::NotSolvable&) {
        rejected = true;
    } catch (const std::exception& e) {
        t.require(false, std::string("worked violating: ") + e.what());
    }
    t.require(rejected, "worked violating instance not rejected");

    // Ranks are drawn so that R(A) and R(B) each extend past their shared
    // part, which both generated families need for a nonzero C.
    gen::Source src(1007);
    int violating_rejected = 0;
    for (int i = 0; i < 100; ++i) {
        const long k = src.dim(1, 2), m = src.dim(3, 6), big_m = m * k;
        const long shared = src.dim(1, std::max<long>(1, big_m / 3));
        const long extra_a = src.dim(1, big_m - shared - 1);
        const long extra_b = src.dim(1, big_m - shared - extra_a);
        const long ra = shared + extra_a, rb = shared + extra_b;
        opeq::Shape shape;
        shape.k = static_cast<std::size_t>(k);
        shape.m = shape.n = static_cast<std::size_t>(m);
        shape.p = static_cast<std::size_t>((ra + k - 1) / k + src.dim(0, 1));
        shape.q = static_cast<std::size_t>((rb + k - 1) / k + src.dim(0, 1));
        const std::map<std::string, std::size_t> ranks{{"a", static_cast<std::size_t>(ra)},
                                                       {"b", static_cast<std::size_t>(rb)},
                                                       {"s", static_cast<std::size_t>(shared)}};
        const std::string id = "instance " + std::to_string(i);
        guarded(t, id, [&] {
            const auto ops = make(opeq::Family::CongruenceSolvable, 8000 + i, shape, ranks);
            const ComplexMatrix &a = ops.at("A"), &b = ops.at("B"), &c = ops.at("C");
            const auto s = opeq::solve_congruence(a, b, c);
            t.worst("generated residual", s.residual);
            t.require(s.residual <= 1e-8, id + " residual");
            t.require(opeq::solvability_necessity_check(a, b, c, s.x, s.y).pass(), id + " necessity");
        });
        guarded(t, "violating " + id, [&] {
            const auto ops = make(opeq::Family::CongruenceCriterionViolating, 8500 + i, shape, ranks);
            try {
                opeq::solve_congruence(ops.at("A"), ops.at("B"), ops.at("C"));
                t.require(false, "violating " + id + " accepted");
            } catch (const opeq::NotSolvable&) {
                ++violating_rejected;
            }
        });
    }
    return t.finish("worked pair plus 100 generated; " + std::to_string(violating_rejected) +
                    "/100 criterion-violating instances rejected");
}

Outcome intersection_suite() {
    Tally t;
    gen::Source src(1008);
    for (int i = 0; i < 200; ++i) {
        const long m = src.dim(1, 10), p = src.dim(1, 10), q = src.dim(1, 10);
        const ComplexMatrix a = src.ranked(m, p, src.dim(1, std::min(m, p)));
        const ComplexMatrix b = src.ranked(m, q, src.dim(1, std::min(m, q)));
        const std::string id = "pair " + std::to_string(i);
        guarded(t, id, [&] {
            const auto r = opeq::range_intersection(a, b);
            const long expected = oracle::lu_rank(a) + oracle::lu_rank(b) - oracle::lu_rank(opeq::hstack(a, b));
            t.require(static_cast<long>(r.dim) == expected, id + " dimension disagrees with the rank formula");
            t.worst("block identity", r.block_identity_residual);
            t.worst("AX=BZ", r.ax_bz_residual);
            t.worst("sqrt inclusion",
                    std::max(r.sqrt_axa_in_intersection.residual, r.sqrt_byb_in_intersection.residual));
            t.require(r.block_identity_residual <= 1e-10, id + " block identities");
            t.require(r.ax_bz_residual <= 1e-10, id + " AX = BZ / AZ* = BY");
            t.require(r.sqrt_axa_in_intersection.holds && r.sqrt_axa_in_intersection.residual <= 1e-8,
                      id + " R((AXA*)^1/2) inclusion");
            t.require(r.sqrt_byb_in_intersection.holds && r.sqrt_byb_in_intersection.residual <= 1e-8,
                      id + " R((BYB*)^1/2) inclusion");
        });
    }
    return t.finish("200 pairs");
}

Outcome cz_suite() {
    Tally t;
    gen::Source src(1009);
    for (int i = 0; i < 50; ++i) {
        opeq::Shape shape = random_shape(src, 3, 6, i % 5 == 0);
        shape.m = std::max<std::size_t>(shape.m, 4);
        const auto ops = make(opeq::Family::CongruenceCz, 9000 + i, shape);
        const ComplexMatrix &a = ops.at("A"), &b = ops.at("B"), &c = ops.at("C");
        const std::string id = "instance " + std::to_string(i);
        guarded(t, id, [&] {
            const long dim = oracle::lu_rank(a) + oracle::lu_rank(b) - oracle::lu_rank(opeq::hstack(a, b));
            t.require(dim >= 1, id + " has a trivial intersection");
            const auto s = opeq::solve_congruence_cz(a, b, c);
            const double scale = opeq::frobenius(a) + opeq::frobenius(b) + opeq::frobenius(c);
            const double abs_residual = opeq::frobenius(a * s.x * a.adjoint() + b * s.y * b.adjoint() - c * s.z);
            t.worst("residual/scale", abs_residual / scale);
            t.require(abs_residual <= 1e-8 * scale, id + " residual");
            const double min_eig = std::min(opeq::min_eigenvalue(s.x), opeq::min_eigenvalue(s.y));
            t.require(min_eig >= -1e-10 * scale, id + " x or y not PSD");
            t.require(opeq::frobenius(s.x) > 1e-10 * scale && opeq::frobenius(s.y) > 1e-10 * scale &&
                          opeq::frobenius(s.z) > 1e-10 * scale,
                      id + " vanishing solution block");
            const auto cert = opeq::verify("congruence-cz", {{"A", a}, {"B", b}, {"C", c}},
                                           {{"X", s.x}, {"Y", s.y}, {"Z", s.z}});
            t.require(cert.pass, id + " certificate");
        });
    }
    return t.finish("50 instances");
}

Outcome module_suite() {
    Tally t;
    gen::Source src(1010);
    for (int i = 0; i < 100; ++i) {
        const auto k = static_cast<std::size_t>(src.dim(1, 3));
        const auto n = static_cast<std::size_t>(src.dim(1, 4)), m = static_cast<std::size_t>(src.dim(1, 4));
        const long rows = static_cast<long>(m * k), cols = static_cast<long>(n * k);
        const long r = src.dim(0, std::min(rows, cols));
        const opeq::ModuleContext dom(k, n), cod(k, m);
        const opeq::ModuleOperator op(dom, cod, src.ranked(rows, cols, r));
        const opeq::ModuleOperator adj = opeq::adjoint(op);
        const std::string id = "operator " + std::to_string(i);
        guarded(t, id, [&] {
            opeq::Xoshiro256 rng(11000 + static_cast<std::uint64_t>(i));
            for (int j = 0; j < 20; ++j) {
                const auto x = opeq::ModuleElement::random(dom, rng);
                const auto y = opeq::ModuleElement::random(cod, rng);
                const ComplexMatrix lhs = opeq::inner_product(op(x), y).data();
                const ComplexMatrix rhs = opeq::inner_product(x, adj(y)).data();
                const double scale = std::max(
                    {opeq::frobenius(op.data()) * opeq::frobenius(x.data()) * opeq::frobenius(y.data()),
                     std::numeric_limits<double>::min()});
                const double dev = opeq::frobenius(lhs - rhs) / scale;
                t.worst("pairing", dev);
                t.require(dev <= 1e-12, id + " adjoint pairing");
            }
            const auto lin = opeq::check_module_linearity(op, 20, 12000 + static_cast<std::uint64_t>(i));
            t.worst("linearity", lin.max_deviation);
            t.require(lin.pass, id + " A-linearity");
            t.require(opeq::numerical_rank(op.data()) == opeq::numerical_rank(adj.data()), id + " rank(A) != rank(A*)");
        });
    }
    return t.finish("100 operators, k in {1,2,3}");
}

Outcome shift_demo() {
    Tally t;
    for (std::size_t n = 1; n <= 50; ++n) {
        const auto r = opeq::truncated_shift_demo(n);
        const double target = 1.0 / static_cast<double>(n);
        const double sigma_err = std::abs(r.min_nonzero_sigma - target);
        const double pinv_err = std::abs(r.pinv_norm - static_cast<double>(n)) / static_cast<double>(n);
        t.worst("|sigma_min - 1/n|", sigma_err);
        t.worst("pinv relative error", pinv_err);
        t.require(sigma_err <= 1e-10, "n = " + std::to_string(n) + " min nonzero sigma");
        t.require(pinv_err <= 1e-8, "n = " + std::to_string(n) + " pseudoinverse norm");
    }
    return t.finish("n = 1..50");
}

// ---------------------------------------------------------------------------
// Determinism and golden reports

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Numbers agree when |a - b| <= 1e-12 + 1e-9 |b|; everything else must match exactly.
bool json_close(const nlohmann::json& got, const nlohmann::json& want, const std::string& path, std::string& why) {
    if (got.is_number() && want.is_number()) {
        const double a = got.get<double>(), b = want.get<double>();
        if (std::abs(a - b) <= 1e-12 + 1e-9 * std::abs(b)) return true;
        why = path + ": " + got.dump() + " vs " + want.dump();
        return false;
    }
    if (got.type() != want.type()) {
        why = path + ": type differs";
        return false;
    }
    if (got.is_object()) {
        if (got.size() != want.size()) {
            why = path + ": key sets differ";
            return false;
        }
        for (auto it = want.begin(); it != want.end(); ++it) {
            if (!got.contains(it.key())) {
                why = path + "." + it.key() + ": missing";
                return false;
            }
            if (!json_close(got.at(it.key()), it.value(), path + "." + it.key(), why)) return false;
        }
        return true;
    }
    if (got.is_array()) {
        if (got.size() != want.size()) {
            why = path + ": length differs";
            return false;
        }
        for (std::size_t i = 0; i < want.size(); ++i)
            if (!json_close(got[i], want[i], path + "[" + std::to_string(i) + "]", why)) return false;
        return true;
    }
    if (got == want) return true;
    why = path + ": " + got.dump() + " vs " + want.dump();
    return false;
}

int run_cli(std::vector<std::string> args, std::string& out) {
    std::ostringstream o, e;
    const int code = opeq::cli::run_command(args, o, e);
    out = o.str();
    return code;
}

Outcome determinism(const fs::path& golden) {
    Tally t;
    const fs::path scratch = fs::temp_directory_path() / "opeq_acceptance";
    fs::remove_all(scratch);

    std::size_t compared = 0;
    for (const auto& [family, name] : opeq::kFamilyNames) {
        const fs::path one = scratch / "first" / std::string(name), two = scratch / "second" / std::string(name);
        std::string ignored;
        const int c1 = run_cli({"gen", "--family", std::string(name), "--seed", "42", "--out", one.string()}, ignored);
        const int c2 = run_cli({"gen", "--family", std::string(name), "--seed", "42", "--out", two.string()}, ignored);
        t.require(c1 == 0 && c2 == 0, std::string(name) + " gen failed");
        if (c1 != 0 || c2 != 0) continue;
        for (const auto& entry : fs::directory_iterator(one)) {
            const fs::path other = two / entry.path().filename();
            t.require(fs::exists(other) && slurp(entry.path()) == slurp(other),
                      std::string(name) + "/" + entry.path().filename().string() + " differs between runs");
            ++compared;
        }
    }

    // Default-family seed-42 files against the frozen copies.
    for (const auto& entry : fs::directory_iterator(golden / "gen42")) {
        const fs::path fresh = scratch / "first" / "sylvester-solvable" / entry.path().filename();
        std::string why;
        const bool ok = fs::exists(fresh) && json_close(nlohmann::json::parse(slurp(fresh)),
                                                        nlohmann::json::parse(slurp(entry.path())), "", why);
        t.require(ok, "gen42/" + entry.path().filename().string() + " " + why);
    }

    const auto cases = nlohmann::json::parse(slurp(golden / "cases.json"));
    for (const auto& c : cases) {
        const std::string name = c.at("name").get<std::string>();
        std::vector<std::string> args{"--json"};
        for (const auto& a : c.at("args")) {
            const std::string s = a.get<std::string>();
            args.push_back(s.ends_with(".json") ? (golden / s).string() : s);
        }
        const fs::path outdir = scratch / "reports" / name;
        if (c.contains("outputs")) {
            args.push_back("--out");
            args.push_back(outdir.string());
        }
        std::string out;
        const int code = run_cli(args, out);
        t.require(code == c.at("exit").get<int>(), name + " exit code " + std::to_string(code));
        std::string why;
        const bool same = json_close(nlohmann::json::parse(out), nlohmann::json::parse(slurp(golden / "expected" / (name + ".json"))),
                                     name, why);
        t.require(same, "report " + why);
        if (c.contains("outputs")) {
            for (const auto& o : c.at("outputs")) {
                const std::string file = o.get<std::string>() + ".json";
                const fs::path got = outdir / file;
                const bool ok = fs::exists(got) &&
                                json_close(nlohmann::json::parse(slurp(got)),
                                           nlohmann::json::parse(slurp(golden / "expected" / name / file)),
                                           name + "/" + file, why);
                t.require(ok, "output " + why);
            }
        }
    }
    return t.finish(std::to_string(compared) + " generated files byte-identical, " + std::to_string(cases.size()) +
                    " golden reports");
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path golden = argc > 1 ? fs::path(argv[1]) : fs::path(OPEQ_GOLDEN_DIR);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"penrose", penrose_suite},
        {"douglas", douglas_suite},
        {"non-equivalence-witness", non_equivalence_witness},
        {"sylvester", sylvester_suite},
        {"completeness", completeness_suite},
        {"orthogonal-pair", orthogonal_suite},
        {"congruence", congruence_suite},
        {"intersection", intersection_suite},
        {"congruence-cz", cz_suite},
        {"module-layer", module_suite},
        {"truncated-shift", shift_demo},
        {"determinism", [&golden] { return determinism(golden); }},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("uncaught: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2d %-24s %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

// Generates a rank-deficient AX + YB = C instance, solves it, checks the
// answer, then shows a congruence instance that has no solution.

#include <iostream>

#include "opeq/opeq.hpp"

int main() {
    opeq::InstanceSpec spec;
    spec.family = opeq::Family::SylvesterSolvable;
    spec.seed = 7;
    spec.shape = {5, 4, 4, 3, 1};
    const auto ops = opeq::generate(spec);
    const auto &a = ops.at("A"), &b = ops.at("B"), &c = ops.at("C");

    const auto diagnosis = opeq::diagnose_ax_yb(a, b, c);
    std::cout << "AX + YB = C solvable: " << std::boolalpha << diagnosis.solvable() << '\n';

    const auto sol = opeq::solve_ax_yb(a, b, c, opeq::sample_params(a, b, 1));
    const auto cert = opeq::verify("sylvester", {{"A", a}, {"B", b}, {"C", c}}, {{"X", sol.x}, {"Y", sol.y}});
    std::cout << "relative residual " << sol.residual << ", certificate " << (cert.pass ? "passes" : "fails") << '\n';

    // A = diag(1,0), B = diag(0,1), C = e2 e1^*: hypotheses hold, the range criterion does not.
    opeq::ComplexMatrix a2 = opeq::zeros(2, 2), b2 = opeq::zeros(2, 2), c2 = opeq::zeros(2, 2);
    a2(0, 0) = 1.0;
    b2(1, 1) = 1.0;
    c2(1, 0) = 1.0;
    try {
        opeq::solve_congruence(a2, b2, c2);
    } catch (const opeq::NotSolvable& e) {
        std::cout << "congruence: " << e.what() << '\n';
    }
    return cert.pass ? 0 : 1;
}

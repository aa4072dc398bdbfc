// Small tour of the library API: classify the lens spaces for one p,
// decide a rotation pair, and certify a toral conjugacy.
#include <iostream>

#include "orbistack/expr.hpp"
#include "orbistack/lens.hpp"
#include "orbistack/rotation.hpp"
#include "orbistack/toral.hpp"

int main() {
    using namespace orbistack;

    auto lens = lens_classify(7);
    std::cout << "lens p=7 stack classes:";
    for (const auto& cls : lens.stack_classes) {
        std::cout << " {";
        for (std::size_t i = 0; i < cls.size(); ++i) std::cout << (i ? "," : "") << cls[i];
        std::cout << "}";
    }
    std::cout << "\n";

    auto tau = parse_quadratic("sqrt(2)");
    auto sigma = parse_quadratic("(3-sqrt(2))/7");
    auto rot = gl2z_equivalent(tau, sigma);
    std::cout << "rotations " << print_quadratic(tau) << " vs " << print_quadratic(sigma) << ": "
              << (rot.equivalent ? "same orbit stack" : "different orbit stacks") << "\n";

    IntegerMatrix cat{{2, 1}, {1, 1}};
    IntegerMatrix other{{1, 1}, {1, 2}};
    auto verdict = toral_stack_equiv(cat, other);
    std::cout << "cat map vs transpose: " << (verdict.yes() ? "equivalent" : "not equivalent");
    if (verdict.certificate) std::cout << " via P = " << verdict.certificate->to_string();
    std::cout << "\n";
    return 0;
}

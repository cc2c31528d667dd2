// Prints the first Virasoro operators of a pair on a small truncation and
// checks [L_1, L_-1] = 2 L_0 on the guarded window.
#include "lgvw/lgvw.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace lgvw;
    const std::string poly = argc > 1 ? argv[1] : "x^3";
    const std::string group = argc > 2 ? argv[2] : "J";
    const int m = 4;
    try {
        const ResolvedPair p = resolve_pair(poly, group);
        const GradedSpace g = graded_space(build_state_space(p.w, p.group));
        std::cout << p.id << ": rank " << g.rank() << ", Str(theta^2 - 1/4) = " << g.supertrace() << "\n";
        for (int k = -1; k <= 1; ++k)
            std::cout << "\nL_" << k << " =\n" << virasoro_operator(g, k, m).restricted(2).dump();
        const QOperator lhs = commutator(virasoro_operator(g, 1, m), virasoro_operator(g, -1, m));
        const QOperator rhs = Rational(2) * virasoro_operator(g, 0, m);
        const bool ok = (lhs - rhs).restricted(m - 2).is_zero();
        std::cout << "\n[L_1, L_-1] = 2 L_0 on levels <= " << m - 2 << ": " << (ok ? "yes" : "no") << "\n";
        return ok ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

// Builds the A-model state space of an invertible pair, maps it through the
// Krawitz correspondence and prints both sides with their gradings.
#include "lgvw/lgvw.hpp"

#include <iomanip>
#include <iostream>

int main(int argc, char** argv)
{
    using namespace lgvw;
    const std::string poly = argc > 1 ? argv[1] : "x1^2x2+x2^2x3+x3^3";
    const std::string group = argc > 2 ? argv[2] : "J";
    try {
        const ResolvedPair p = resolve_pair(poly, group);
        const StateSpace a = build_state_space(p.w, p.group);
        const MirrorCorrespondence m = krawitz_map(a);
        const MirrorReport r = verify_mirror(m);

        std::cout << "A: W = " << p.w.to_string() << ", |G| = " << a.group.order() << "\n";
        std::cout << "B: W^T = " << m.w_b.to_string() << ", |G^T| = " << m.g_b.order() << "\n\n";
        for (std::size_t k = 0; k < m.source.size(); ++k) {
            const auto& s = m.source[k];
            const auto& t = m.image[k];
            std::cout << std::left << std::setw(24) << s.label << " (" << s.mu_plus << ", " << s.mu_minus << ")  ->  "
                      << std::setw(24) << t.label << " (" << t.mu_plus_b << ", " << t.mu_minus_b << ")\n";
        }
        std::cout << "\nbijective " << r.bijective << ", gradings " << r.bigrading_preserved << ", parity "
                  << r.parity_preserved << ", chat " << r.chat_a << " = " << r.chat_b << "\n";
        return r.passed() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

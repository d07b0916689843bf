// Small tour: kernel entries, a few intersection numbers, the Airy wave function at T = 0.

#include "wk/wk.hpp"

#include <iostream>

int main() {
    wk::Kernel K = wk::kernel_from_closed_form(20);
    std::cout << "A(x,y) first block: " << K(0, 2).str() << " " << K(1, 1).str() << " " << K(2, 0).str() << "\n";

    for (auto m : std::vector<std::vector<int>>{{0, 0, 0}, {1}, {4}, {1, 1, 1, 1}, {2, 3}}) {
        wk::CorrelatorKey key(m);
        std::cout << "<" << key.str() << ">_" << key.genus() << " = " << wk::intersection_number(key, K).str() << "\n";
    }

    auto tau = wk::TruncatedTau::airy_schur(9, 9);
    wk::Series1 w = wk::wave_at_zero(tau);
    std::cout << "w(0; xi) =";
    for (auto& [e, c] : w.terms()) std::cout << " + (" << c.str() << ") xi^" << e;
    std::cout << " + O(xi^-10)\n";
}

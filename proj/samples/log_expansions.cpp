// Logarithms of the universal formal module over Q_3 in both generator
// families, and the Araki generators written in the Hazewinkel ones.

#include <iostream>

#include "fmlab/fmlab.hpp"

using namespace fmlab;

int main() {
    const SymbolicContext ctx(NumberField::make(3, 1, 1));
    for (int h = 1; h <= 2; ++h) {
        std::cout << "Araki      l_" << h << " = " << log_araki(h, ctx) << '\n';
        std::cout << "Hazewinkel l_" << h << " = " << log_hazewinkel(h, ctx) << '\n';
    }
    const auto images = araki_in_hazewinkel(2, ctx);
    for (int h = 1; h <= 2; ++h) {
        std::cout << "v_" << h << " = " << images[static_cast<std::size_t>(h)] << '\n';
        std::cout << "  congruent to V_" << h << " mod pi: " << std::boolalpha << araki_congruent_to_hazewinkel(h, ctx) << '\n';
    }
}

// Base change along Q_3 -> Q_3(sqrt 3): the images of the first two
// generators, compared with their closed forms.

#include <iostream>

#include "fmlab/fmlab.hpp"

using namespace fmlab;

int main() {
    const auto ext = Extension::make(NumberField::make(3, 1, 1), NumberField::make(3, 1, 2));
    std::cout << "extension " << ext.base().label() << " -> " << ext.top().label() << ", alpha = " << ext.alpha() << '\n';

    auto hz = symbolic_gamma(ext, Basis::Hazewinkel);
    const auto V1 = hz.image(1);
    std::cout << "gamma(V_1) = " << V1 << '\n';
    std::cout << "  closed form holds: " << std::boolalpha
              << (V1 == closed_gamma_V1(hz.source_context(), hz.target_context())) << '\n';
    std::cout << "gamma(V_2) = " << hz.image(2) << '\n';

    auto ar = symbolic_gamma(ext, Basis::Araki);
    std::cout << "gamma(v_2) = " << ar.image(2) << '\n';
    std::cout << "  corrected closed form holds: "
              << (ar.image(2) == closed_gamma_v2(ar.source_context(), ar.target_context())) << '\n';
}

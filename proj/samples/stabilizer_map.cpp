// The map of stabilizer presentations for the tame extension Q_5(sqrt 5)/Q_5
// at height 2: the root of unity c, the relations and a coalgebra check.

#include <iostream>

#include "fmlab/fmlab.hpp"

using namespace fmlab;

int main() {
    const auto ext = Extension::make(NumberField::make(5, 1, 1), NumberField::make(5, 1, 2));
    const ThetaMap th = theta_tame(ext, 2, 4);
    const auto& c = *th.target.c;
    std::cout << "residue field of size " << th.target.field.size() << ", c = " << c << " of order " << c.multiplicative_order()
              << '\n';
    std::cout << "c^" << th.root_order << " = " << c.pow(th.root_order) << ", eps(alpha) = " << *th.epsilon_alpha << '\n';
    for (int i = 1; i <= th.target.M; ++i) {
        const auto& r = th.target.relation(i);
        std::cout << "t_" << i << "^" << r.exponent << " = " << r.coefficient << " t_" << i << "   theta(t_" << i << ") = t_"
                  << *th.image[static_cast<std::size_t>(i - 1)] << '\n';
    }
    for (int k = 1; k < th.source.coproduct_bound; ++k)
        std::cout << "coalgebra map in degree " << k << ": " << std::boolalpha << theta_is_coalgebra_map(k, th) << '\n';
}

#pragma once

// Numerical data of PSL(2, q) and the Brauer characters psi_m on powers of a
// fixed element g_0 of odd order n coprime to q. Classes of elements of order
// dividing n correspond to Gamma_n via x -> class of g_0^x; no group elements
// or matrices are ever built.

#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/numtheory.hpp"

namespace torsion {

struct GroupProfile {
    Int q;
    Int t;   // characteristic
    int f;   // q = t^f
    Int d2;  // gcd(2, q - 1)
    BigInt order;
    std::vector<Int> element_orders;  // ascending
};

/// Throws std::invalid_argument unless q is a prime power >= 4.
GroupProfile group_profile(Int q);

/// Element orders n > 1 with gcd(n, 2q) = 1 that are not prime powers.
std::vector<Int> admissible_orders(Int q);

/// psi_m(g_0^i) = sum_{j=-m}^{m} zeta_n^{ij} = 1 + sum_{j=1}^m alpha_{ij}.
CycInt psi_value(Int n, Int m, Int i);

/// Gamma_n classes of the eigenvalue exponents of Theta_m(g_0^i): the class
/// of 0 followed by the classes of i*j for j = 1..m.
std::vector<Int> theta_exponents(Int m, Int i, Int n);

} // namespace torsion

#include "torsion/psl2.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace torsion {

GroupProfile group_profile(Int q)
{
    if (q < 4)
        throw std::invalid_argument("group_profile: q = " + std::to_string(q) +
                                    " is too small (PSL(2,q) is solvable for q < 4)");
    const auto fac = factorize(q);
    if (fac.size() != 1)
        throw std::invalid_argument("group_profile: q = " + std::to_string(q) + " is not a prime power");

    GroupProfile g{};
    g.q = q;
    g.t = fac.front().prime;
    g.f = fac.front().exponent;
    g.d2 = gcd(2, q - 1);
    g.order = BigInt(q - 1) * q * (q + 1) / g.d2;

    std::set<Int> orders{g.t};
    for (Int m : {(q - 1) / g.d2, (q + 1) / g.d2})
        for (Int e : Modulus(m).divisors())
            orders.insert(e);
    g.element_orders.assign(orders.begin(), orders.end());
    return g;
}

std::vector<Int> admissible_orders(Int q)
{
    const GroupProfile g = group_profile(q);
    std::vector<Int> out;
    for (Int n : g.element_orders) {
        if (n <= 1 || gcd(n, 2 * q) != 1)
            continue;
        if (Modulus(n).is_prime_power())
            continue;
        out.push_back(n);
    }
    return out;
}

CycInt psi_value(Int n, Int m, Int i)
{
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("psi_value: expected odd n >= 3");
    if (m < 0)
        throw std::invalid_argument("psi_value: expected m >= 0");
    CycInt out = CycInt::constant(n, 1);
    for (Int j = 1; j <= m; ++j) {
        out.add_term(i * j, 1);
        out.add_term(-i * j, 1);
    }
    return out;
}

std::vector<Int> theta_exponents(Int m, Int i, Int n)
{
    if (n < 1 || m < 0)
        throw std::invalid_argument("theta_exponents: expected n >= 1 and m >= 0");
    std::vector<Int> out{0};
    for (Int j = 1; j <= m; ++j)
        out.push_back(gamma_class(i * j, n));
    return out;
}

} // namespace torsion

#pragma once

#include <compare>
#include <cstdint>

namespace motsteen {

// Bidegree (p,q): cohomological degree p and weight q.
struct Bidegree {
    long long p = 0;
    long long q = 0;

    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    Bidegree& operator+=(Bidegree b)
    {
        p += b.p;
        q += b.q;
        return *this;
    }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

inline bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

}  // namespace motsteen

#include "gpseq/number_theory.hpp"

namespace gpseq {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1u)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1u;
    }
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    // These twelve bases are a proven witness set below 3.3e24.
    for (std::uint64_t a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t r = n;
    for (auto [p, k] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

} // namespace gpseq

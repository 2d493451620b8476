// Seeded generators for the property suites.
#ifndef MONOTRI_TEST_GENERATORS_HPP_
#define MONOTRI_TEST_GENERATORS_HPP_

#include "monotri/monotri.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using monotri::BigInt;

class Source {
  public:
    explicit Source(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    bool coin() { return range(0, 1) == 1; }

    template <class T>
    T const& pick(std::vector<T> const& v)
    {
        return v[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    /// Big integer with up to `digits` decimal digits, any sign.
    BigInt big(unsigned digits)
    {
        BigInt x = 0;
        auto len = range(1, digits);
        for (std::int64_t i = 0; i < len; ++i)
            x = x * 10 + range(0, 9);
        return coin() ? BigInt(-x) : x;
    }

    /// Coefficient divisible by a random power of p, as in the congruence families.
    BigInt p_heavy(std::uint64_t p, unsigned max_power, std::int64_t spread)
    {
        BigInt x = monotri::pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(range(0, max_power)));
        return x * BigInt(static_cast<long>(range(-spread, spread)));
    }

    monotri::Trinomial trinomial(unsigned min_n, unsigned max_n, unsigned digits)
    {
        auto n = static_cast<unsigned>(range(min_n, max_n));
        BigInt b = 0;
        while (b == 0)
            b = big(digits);
        return monotri::Trinomial(n, big(digits), b);
    }

    monotri::FpPoly fp_poly(monotri::PrimeField const& F, int degree, bool monic)
    {
        std::vector<std::uint64_t> c;
        for (int i = 0; i <= degree; ++i)
            c.push_back(static_cast<std::uint64_t>(range(0, static_cast<std::int64_t>(F.characteristic()) - 1)));
        if (monic)
            c.back() = 1;
        else if (c.back() == 0)
            c.back() = 1;
        return monotri::FpPoly(F, c);
    }

    monotri::FqPoly fq_poly(monotri::ExtensionField const& K, int degree)
    {
        std::vector<monotri::FqElement> c;
        for (int i = 0; i <= degree; ++i)
            c.push_back(K.random(rng_));
        if (K.is_zero(c.back()))
            c.back() = K.one();
        return monotri::FqPoly(K, c);
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

} // namespace gen

#endif /* MONOTRI_TEST_GENERATORS_HPP_ */

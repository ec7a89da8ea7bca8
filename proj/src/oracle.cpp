#include "gsmodel/oracle.hpp"

#include <limits>
#include <stdexcept>

namespace gsm {

std::uint64_t Oracle::below(std::uint64_t bound)
{
    if (bound == 0) {
        throw std::invalid_argument("Oracle::below: empty range");
    }
    // Rejection sampling on the largest multiple of bound.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

std::uint64_t Oracle::between(std::uint64_t lo, std::uint64_t hi)
{
    if (hi < lo) {
        throw std::invalid_argument("Oracle::between: hi < lo");
    }
    if (lo == 0 && hi == std::numeric_limits<std::uint64_t>::max()) {
        return engine_();
    }
    return lo + below(hi - lo + 1);
}

bool Oracle::bernoulli(const Rational& p)
{
    if (p <= 0) {
        return false;
    }
    if (p >= 1) {
        return true;
    }
    const std::uint64_t draw = engine_() >> 32;
    // draw / 2^32 < p  <=>  draw * den < p_num * 2^32
    mpz_class lhs = mpz_class(static_cast<unsigned long>(draw)) * p.get_den();
    mpz_class rhs = p.get_num() << 32;
    return lhs < rhs;
}

} // namespace gsm

#include "modcrit/scalar.hpp"

namespace modcrit {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (p_ == 0) return rational(1 / q_);
    // extended Euclid on (r_, p_)
    int64_t t = 0, newt = 1;
    int64_t r = p_, newr = static_cast<int64_t>(r_);
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p_;
    return residue(p_, static_cast<uint64_t>(t));
}

std::string Scalar::str() const {
    if (p_ > 0) return std::to_string(r_);
    return q_.get_str();
}

}  // namespace modcrit

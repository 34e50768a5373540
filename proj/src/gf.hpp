#pragma once
#include <vector>

namespace sbc::detail {

// Arithmetic tables for GF(p^e), elements encoded 0..q-1 as base-p digit
// strings of polynomial coefficients.
class GF {
public:
    GF(int p, int e);

    int q() const { return q_; }
    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }

private:
    int p_, e_, q_;
    std::vector<int> add_, mul_;
    std::vector<int> irr_;  // monic irreducible, little-endian, degree e

    std::vector<int> digits(int a) const;
    int undigits(const std::vector<int>& d) const;
    int add_slow(int a, int b) const;
    int mul_slow(int a, int b) const;
    void find_irreducible();
    bool divides(const std::vector<int>& div, std::vector<int> poly) const;
};

struct Factor {
    int p;
    int e;
    int pe;
};
std::vector<Factor> factorize(int m);
bool is_prime_power(int m);

const GF& gf(int q);  // cached; q must be a prime power

}  // namespace sbc::detail

#include "gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "sbc/errors.hpp"

namespace sbc::detail {

std::vector<Factor> factorize(int m) {
    std::vector<Factor> out;
    for (int d = 2; (long)d * d <= m; ++d) {
        if (m % d == 0) {
            Factor f{d, 0, 1};
            while (m % d == 0) {
                m /= d;
                f.e++;
                f.pe *= d;
            }
            out.push_back(f);
        }
    }
    if (m > 1) out.push_back({m, 1, m});
    return out;
}

bool is_prime_power(int m) {
    return m >= 2 && factorize(m).size() == 1;
}

GF::GF(int p, int e) : p_(p), e_(e), q_(1) {
    for (int i = 0; i < e; ++i) q_ *= p;
    if (e_ > 1) find_irreducible();
    add_.resize((size_t)q_ * q_);
    mul_.resize((size_t)q_ * q_);
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
            add_[a * q_ + b] = add_slow(a, b);
            mul_[a * q_ + b] = mul_slow(a, b);
        }
}

std::vector<int> GF::digits(int a) const {
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

int GF::undigits(const std::vector<int>& d) const {
    int a = 0;
    for (int i = e_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
}

int GF::add_slow(int a, int b) const {
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
    return undigits(da);
}

int GF::mul_slow(int a, int b) const {
    if (e_ == 1) return (int)(((long)a * b) % p_);
    auto da = digits(a), db = digits(b);
    std::vector<int> prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (int)((prod[i + j] + (long)da[i] * db[j]) % p_);
    for (int i = (int)prod.size() - 1; i >= e_; --i) {
        int c = prod[i];
        if (c == 0) continue;
        for (int j = 0; j <= e_; ++j) {
            int idx = i - e_ + j;
            prod[idx] = (int)(((long)prod[idx] - (long)c * irr_[j] % p_ + (long)p_ * p_) % p_);
        }
    }
    prod.resize(e_);
    return undigits(prod);
}

bool GF::divides(const std::vector<int>& div, std::vector<int> poly) const {
    const int dd = (int)div.size() - 1;
    while ((int)poly.size() - 1 >= dd) {
        int c = poly.back();
        if (c != 0) {
            int off = (int)poly.size() - 1 - dd;
            for (int j = 0; j <= dd; ++j)
                poly[off + j] = (int)(((long)poly[off + j] - (long)c * div[j] % p_ + (long)p_ * p_) % p_);
        }
        poly.pop_back();
    }
    for (int x : poly)
        if (x != 0) return false;
    return true;
}

void GF::find_irreducible() {
    // smallest monic irreducible of degree e by trial division
    long count = 1;
    for (int i = 0; i < e_; ++i) count *= p_;
    for (long tail = 0; tail < count; ++tail) {
        std::vector<int> poly(e_ + 1);
        long t = tail;
        for (int i = 0; i < e_; ++i) {
            poly[i] = (int)(t % p_);
            t /= p_;
        }
        poly[e_] = 1;
        bool ok = true;
        // divisor degrees 1..e/2, monic
        for (int d = 1; d <= e_ / 2 && ok; ++d) {
            long dc = 1;
            for (int i = 0; i < d; ++i) dc *= p_;
            for (long dt = 0; dt < dc && ok; ++dt) {
                std::vector<int> div(d + 1);
                long u = dt;
                for (int i = 0; i < d; ++i) {
                    div[i] = (int)(u % p_);
                    u /= p_;
                }
                div[d] = 1;
                if (divides(div, poly)) ok = false;
            }
        }
        if (ok) {
            irr_ = poly;
            return;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

const GF& gf(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) {
        auto f = factorize(q);
        if (f.size() != 1) throw argument_error("not a prime power: " + std::to_string(q));
        it = cache.emplace(q, std::make_unique<GF>(f[0].p, f[0].e)).first;
    }
    return *it->second;
}

}  // namespace sbc::detail

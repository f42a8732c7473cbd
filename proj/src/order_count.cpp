#include "sgmod/order_count.hpp"

#include "sgmod/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sgmod {

OrderCount OrderCount::of(std::uint64_t n) {
    if (n == 0) throw InvalidInput("OrderCount::of: zero is not a group order");
    OrderCount r;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::uint64_t e = 0;
        while (n % p == 0) { n /= p; ++e; }
        r.factors_.emplace_back(p, e);
    }
    if (n > 1) r.factors_.emplace_back(n, 1);
    return r;
}

OrderCount OrderCount::prime_power(std::uint64_t p, std::uint64_t e) {
    if (p < 2) throw InvalidInput("OrderCount::prime_power: p must be >= 2");
    OrderCount r;
    if (e > 0) r.factors_.emplace_back(p, e);
    return r;
}

OrderCount OrderCount::times(const OrderCount& other) const {
    OrderCount r;
    auto a = factors_.begin(), b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            r.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            r.factors_.push_back(*b++);
        } else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a; ++b;
        }
    }
    return r;
}

OrderCount OrderCount::pow(std::uint64_t e) const {
    OrderCount r;
    if (e == 0) return r;
    r.factors_ = factors_;
    for (auto& f : r.factors_) f.second *= e;
    return r;
}

bool OrderCount::divides(const OrderCount& other) const {
    auto b = other.factors_.begin();
    for (const auto& f : factors_) {
        while (b != other.factors_.end() && b->first < f.first) ++b;
        if (b == other.factors_.end() || b->first != f.first || b->second < f.second)
            return false;
    }
    return true;
}

OrderCount OrderCount::divided_by(const OrderCount& other) const {
    if (!other.divides(*this))
        throw InvalidInput("OrderCount::divided_by: " + other.str() +
                           " does not divide " + str());
    OrderCount r;
    auto b = other.factors_.begin();
    for (const auto& f : factors_) {
        std::uint64_t e = f.second;
        if (b != other.factors_.end() && b->first == f.first) { e -= b->second; ++b; }
        if (e) r.factors_.emplace_back(f.first, e);
    }
    return r;
}

bool OrderCount::fits_u64() const {
    long double v = 1.0L;
    for (const auto& f : factors_)
        for (std::uint64_t i = 0; i < f.second; ++i) {
            v *= static_cast<long double>(f.first);
            if (v > 1.8e19L) return false;
        }
    return true;
}

std::uint64_t OrderCount::as_u64() const {
    if (!fits_u64()) throw InvalidInput("OrderCount::as_u64: " + str() + " overflows");
    std::uint64_t v = 1;
    for (const auto& f : factors_)
        for (std::uint64_t i = 0; i < f.second; ++i) v *= f.first;
    return v;
}

double OrderCount::log2() const {
    double v = 0;
    for (const auto& f : factors_)
        v += static_cast<double>(f.second) * std::log2(static_cast<double>(f.first));
    return v;
}

std::string OrderCount::str() const {
    if (factors_.empty()) return "1";
    if (fits_u64()) return std::to_string(as_u64());
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += " * ";
        s += std::to_string(f.first);
        if (f.second > 1) s += "^" + std::to_string(f.second);
    }
    return s;
}

} // namespace sgmod

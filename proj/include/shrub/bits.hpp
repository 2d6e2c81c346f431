#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace shrub {

// Fixed-width bitset sized at runtime.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }
    void assign(int i, bool b) { b ? set(i) : reset(i); }

    void set_all() {
        for (auto& x : w_) x = ~uint64_t(0);
        trim();
    }
    void clear() {
        for (auto& x : w_) x = 0;
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    // first set bit at or after i, or -1
    int next(int i) const {
        if (i >= n_) return -1;
        int k = i >> 6;
        uint64_t x = w_[k] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (x) return k * 64 + std::countr_zero(x);
            if (++k >= (int)w_.size()) return -1;
            x = w_[k];
        }
    }
    int first() const { return next(0); }

    template <class F>
    void for_each(F&& f) const {
        for (int k = 0; k < (int)w_.size(); ++k) {
            uint64_t x = w_[k];
            while (x) {
                int b = std::countr_zero(x);
                f(k * 64 + b);
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    Bits& operator&=(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& operator^=(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    Bits operator~() const {
        Bits r = *this;
        for (auto& x : r.w_) x = ~x;
        r.trim();
        return r;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    bool intersects(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    const std::vector<uint64_t>& words() const { return w_; }
    size_t hash() const {
        size_t h = n_;
        for (auto x : w_) h ^= std::hash<uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    static Bits from(int n, const std::vector<int>& v) {
        Bits b(n);
        for (int i : v) b.set(i);
        return b;
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
    }
    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace shrub

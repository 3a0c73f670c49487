#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ddks {

/// Fixed-universe bitset over element indices 0..n-1.
/// Groups here never exceed 512 elements, so this is at most 8 words.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::uint32_t universe() const { return n_; }

    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void clear(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto x : w_) c += std::uint32_t(std::popcount(x));
        return c;
    }
    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }

    /// Subset-or-equal test.
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    /// Lowest set index, or universe() if none.
    std::uint32_t first() const { return next(0); }

    /// Lowest set index >= from, or universe() if none.
    std::uint32_t next(std::uint32_t from) const {
        if (from >= n_) return n_;
        std::size_t wi = from >> 6;
        std::uint64_t cur = w_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (cur) return std::uint32_t(wi * 64 + std::countr_zero(cur));
            if (++wi >= w_.size()) return n_;
            cur = w_[wi];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t cur = w_[wi];
            while (cur) {
                f(std::uint32_t(wi * 64 + std::countr_zero(cur)));
                cur &= cur - 1;
            }
        }
    }

    std::vector<std::uint16_t> to_list() const {
        std::vector<std::uint16_t> out;
        out.reserve(count());
        for_each([&](std::uint32_t i) { out.push_back(std::uint16_t(i)); });
        return out;
    }

    // ordering for deterministic containers
    bool operator<(const Bits& o) const { return w_ < o.w_; }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace ddks

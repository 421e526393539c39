#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace sweepdec {

// Fixed-width bit vector over F2; used for qubit sets (faces) and check sets (edges).
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    size_t size() const { return n_; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void clear(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void reset() { std::fill(w_.begin(), w_.end(), 0); }

    BitVec& operator^=(const BitVec& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }
    size_t count() const {
        size_t s = 0;
        for (uint64_t x : w_) s += static_cast<size_t>(__builtin_popcountll(x));
        return s;
    }
    bool intersects(const BitVec& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    // parity of |this & o|
    int overlap_parity(const BitVec& o) const {
        assert(n_ == o.n_);
        uint64_t acc = 0;
        for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return __builtin_parityll(acc);
    }

    template <class F>
    void for_each_set(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t x = w_[wi];
            while (x) {
                f(wi * 64 + static_cast<size_t>(__builtin_ctzll(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<uint32_t> to_indices() const {
        std::vector<uint32_t> out;
        for_each_set([&](size_t i) { out.push_back(static_cast<uint32_t>(i)); });
        return out;
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

using QubitSet = BitVec;  // over face indices
using CheckSet = BitVec;  // over edge indices

}  // namespace sweepdec

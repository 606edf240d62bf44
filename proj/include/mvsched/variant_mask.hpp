#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mvsched {

/// Set of variant indices. Sized on demand; bits beyond the stored words are zero.
class VariantMask {
public:
    VariantMask() = default;

    void set(std::size_t bit, bool value = true) {
        std::size_t w = bit / 64;
        if (w >= words_.size()) {
            if (!value) return;
            words_.resize(w + 1, 0);
        }
        std::uint64_t m = std::uint64_t{1} << (bit % 64);
        if (value) {
            words_[w] |= m;
        } else {
            words_[w] &= ~m;
        }
    }

    bool test(std::size_t bit) const {
        std::size_t w = bit / 64;
        return w < words_.size() && ((words_[w] >> (bit % 64)) & 1U) != 0;
    }

    bool intersects(const VariantMask& other) const {
        std::size_t n = words_.size() < other.words_.size() ? words_.size() : other.words_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if ((words_[i] & other.words_[i]) != 0) return true;
        }
        return false;
    }

    bool any() const {
        for (auto w : words_) {
            if (w != 0) return true;
        }
        return false;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    VariantMask& operator|=(const VariantMask& other) {
        if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
        for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    friend bool operator==(const VariantMask& a, const VariantMask& b) {
        std::size_t n = a.words_.size() > b.words_.size() ? a.words_.size() : b.words_.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t x = i < a.words_.size() ? a.words_[i] : 0;
            std::uint64_t y = i < b.words_.size() ? b.words_[i] : 0;
            if (x != y) return false;
        }
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace mvsched

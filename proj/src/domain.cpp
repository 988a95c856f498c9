// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/domain.hpp"

#include <bit>
#include <string>

namespace fd {

Domain::Domain(std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw EmptyRangeError("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
    // hi - lo may overflow only for absurd ranges; compute in unsigned space.
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span >= static_cast<std::uint64_t>(kMaxWidth))
        throw WidthExceededError("range " + std::to_string(lo) + ".." + std::to_string(hi) +
                                 " exceeds max width " + std::to_string(kMaxWidth));
    offset_ = lo;
    width_ = static_cast<int>(span) + 1;
    words_.assign((width_ + kBitsPerWord - 1) / kBitsPerWord, 0);
    for (int i = 0; i < width_; ++i)
        words_[i / kBitsPerWord] |= std::uint64_t{1} << (i % kBitsPerWord);
    min_ = lo;
    max_ = hi;
    size_ = width_;
}

bool Domain::contains(std::int64_t v) const {
    if (v < offset_ || v >= offset_ + width_)
        return false;
    int pos = static_cast<int>(v - offset_);
    return (words_[pos / kBitsPerWord] >> (pos % kBitsPerWord)) & 1;
}

bool Domain::remove(std::int64_t v) {
    if (!contains(v))
        return false;
    int pos = static_cast<int>(v - offset_);
    words_[pos / kBitsPerWord] &= ~(std::uint64_t{1} << (pos % kBitsPerWord));
    recompute_caches();
    return true;
}

bool Domain::remove_below(std::int64_t v) {
    if (empty() || v <= min_)
        return false;
    bool changed = false;
    std::int64_t hi = v - 1 < offset_ + width_ - 1 ? v - 1 : offset_ + width_ - 1;
    for (std::int64_t x = offset_; x <= hi; ++x) {
        int pos = static_cast<int>(x - offset_);
        std::uint64_t bit = std::uint64_t{1} << (pos % kBitsPerWord);
        if (words_[pos / kBitsPerWord] & bit) {
            words_[pos / kBitsPerWord] &= ~bit;
            changed = true;
        }
    }
    if (changed)
        recompute_caches();
    return changed;
}

bool Domain::remove_above(std::int64_t v) {
    if (empty() || v >= max_)
        return false;
    bool changed = false;
    std::int64_t lo = v + 1 > offset_ ? v + 1 : offset_;
    for (std::int64_t x = lo; x <= offset_ + width_ - 1; ++x) {
        int pos = static_cast<int>(x - offset_);
        std::uint64_t bit = std::uint64_t{1} << (pos % kBitsPerWord);
        if (words_[pos / kBitsPerWord] & bit) {
            words_[pos / kBitsPerWord] &= ~bit;
            changed = true;
        }
    }
    if (changed)
        recompute_caches();
    return changed;
}

bool Domain::remove_all() {
    if (empty())
        return false;
    for (auto& w : words_)
        w = 0;
    size_ = 0;
    min_ = max_ = offset_;
    return true;
}

bool Domain::assign(std::int64_t v) {
    if (!contains(v))
        return remove_all();
    if (size_ == 1)
        return false;
    for (auto& w : words_)
        w = 0;
    int pos = static_cast<int>(v - offset_);
    words_[pos / kBitsPerWord] |= std::uint64_t{1} << (pos % kBitsPerWord);
    min_ = max_ = v;
    size_ = 1;
    return true;
}

bool Domain::remove_mask(std::span<const std::uint64_t> mask) {
    bool changed = false;
    for (std::size_t i = 0; i < words_.size() && i < mask.size(); ++i) {
        std::uint64_t cleared = words_[i] & mask[i];
        if (cleared) {
            words_[i] &= ~mask[i];
            changed = true;
        }
    }
    if (changed)
        recompute_caches();
    return changed;
}

bool Domain::next_above(std::int64_t v, std::int64_t& out) const {
    if (empty() || v >= max_)
        return false;
    std::int64_t start = v + 1 > offset_ ? v + 1 : offset_;
    for (std::int64_t x = start; x <= max_; ++x) {
        if (contains(x)) {
            out = x;
            return true;
        }
    }
    return false;
}

std::vector<std::int64_t> Domain::values() const {
    std::vector<std::int64_t> out;
    out.reserve(size_);
    if (empty())
        return out;
    for (std::int64_t x = min_; x <= max_; ++x)
        if (contains(x))
            out.push_back(x);
    return out;
}

void Domain::recompute_caches() {
    size_ = 0;
    int lo = -1, hi = -1;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        if (!w)
            continue;
        size_ += std::popcount(w);
        int first = static_cast<int>(i) * kBitsPerWord + std::countr_zero(w);
        int last = static_cast<int>(i) * kBitsPerWord + (kBitsPerWord - 1 - std::countl_zero(w));
        if (lo < 0)
            lo = first;
        hi = last;
    }
    if (size_ > 0) {
        min_ = offset_ + lo;
        max_ = offset_ + hi;
    } else {
        // Normalized so equality on empty domains is well defined.
        min_ = max_ = offset_;
    }
}

} // namespace fd

// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fd {

struct EmptyRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WidthExceededError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Finite set of integers stored as a fixed-width bitset.
///
/// Bit i of the word array corresponds to value offset() + i. The width is
/// fixed when the domain is created; values outside [offset, offset+width-1]
/// are not representable and removal never widens the set. Min, max and
/// cardinality are cached and kept in sync by every mutator.
class Domain {
  public:
    static constexpr int kMaxWidth = 1024;
    static constexpr int kBitsPerWord = 64;

    Domain() = default;

    /// Full range {lo, ..., hi}. Throws EmptyRangeError if lo > hi and
    /// WidthExceededError if the range spans more than kMaxWidth values.
    Domain(std::int64_t lo, std::int64_t hi);

    std::int64_t offset() const { return offset_; }
    int width() const { return width_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool is_singleton() const { return size_ == 1; }

    /// Undefined when empty.
    std::int64_t min() const { return min_; }
    std::int64_t max() const { return max_; }

    bool contains(std::int64_t v) const;

    /// Each mutator returns true when at least one bit was cleared.
    bool remove(std::int64_t v);
    bool remove_below(std::int64_t v);
    bool remove_above(std::int64_t v);
    bool remove_all();
    /// Keep only v (wipes out if v is absent).
    bool assign(std::int64_t v);
    /// Clear every bit set in mask; mask is aligned to this domain's words.
    bool remove_mask(std::span<const std::uint64_t> mask);

    /// Smallest member > v, or nullopt semantics via has_next/next pattern:
    /// returns true and writes the member into out when one exists.
    bool next_above(std::int64_t v, std::int64_t& out) const;

    std::vector<std::int64_t> values() const;

    std::span<const std::uint64_t> words() const { return words_; }
    int word_count() const { return static_cast<int>(words_.size()); }

    bool operator==(const Domain& o) const = default;

  private:
    void recompute_caches();

    std::int64_t offset_ = 0;
    int width_ = 0;
    std::vector<std::uint64_t> words_;
    std::int64_t min_ = 0;
    std::int64_t max_ = 0;
    int size_ = 0;
};

} // namespace fd

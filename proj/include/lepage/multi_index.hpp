#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "lepage/rational.hpp"

namespace lepage {

/// A multi-index I in N^m: entry i counts the copies of base index i.
///
/// Stored inline; the chart dimension m is limited to kMaxDim.
class MultiIndex {
public:
    static constexpr int kMaxDim = 6;

    MultiIndex() = default;
    /// The zero multi-index of length m.
    explicit MultiIndex(int m);
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(const std::vector<int>& entries);

    /// 1_i in dimension m (i is 0-based).
    static MultiIndex unit(int m, int i);

    int size() const noexcept { return size_; }
    int operator[](int i) const noexcept { return entries_[i]; }
    void set(int i, int value);

    /// |I|
    int length() const noexcept;
    bool is_zero() const noexcept { return length() == 0; }

    /// I!
    Integer factorial() const;
    /// |I|! / I!
    Integer weight() const;

    MultiIndex operator+(const MultiIndex& other) const;
    /// Entrywise difference, absent when an entry would go negative.
    std::optional<MultiIndex> checked_difference(const MultiIndex& other) const;
    MultiIndex plus_unit(int i) const;
    std::optional<MultiIndex> minus_unit(int i) const;

    /// Componentwise K <= I.
    bool divides(const MultiIndex& other) const;

    /// Decomposes into a sorted list of base indices (1_{j1} + ... + 1_{jr}).
    std::vector<int> to_sequence() const;

    std::vector<int> to_vector() const;
    /// "(2,0,1)"
    std::string str() const;

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
        return a.size_ == b.size_ && a.entries_ == b.entries_;
    }
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        for (int k = 0; k < a.size_; ++k)
            if (auto c = a.entries_[k] <=> b.entries_[k]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    std::size_t hash() const noexcept;

private:
    std::uint8_t size_ = 0;
    std::array<std::uint8_t, kMaxDim> entries_{};
};

/// All multi-indices of dimension m and length exactly r, in lexicographic order
/// (descending in the first entry).
std::vector<MultiIndex> multi_indices_of_length(int m, int r);

/// All multi-indices of dimension m with length <= r, by increasing length.
std::vector<MultiIndex> multi_indices_up_to(int m, int r);

/// All K with 0 <= K <= I.
std::vector<MultiIndex> sub_indices(const MultiIndex& I);

/// Binomial coefficient I! / (K! (I-K)!) for K <= I.
Integer multi_binomial(const MultiIndex& I, const MultiIndex& K);

}  // namespace lepage

template <>
struct std::hash<lepage::MultiIndex> {
    std::size_t operator()(const lepage::MultiIndex& m) const noexcept { return m.hash(); }
};

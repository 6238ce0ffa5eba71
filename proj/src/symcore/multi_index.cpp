#include "lepage/multi_index.hpp"

#include "lepage/errors.hpp"

namespace lepage {

MultiIndex::MultiIndex(int m) {
    if (m < 0 || m > kMaxDim)
        throw DimensionError("multi-index dimension " + std::to_string(m) + " outside [0, " +
                             std::to_string(kMaxDim) + "]");
    size_ = static_cast<std::uint8_t>(m);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(const std::vector<int>& entries) : MultiIndex(static_cast<int>(entries.size())) {
    for (int k = 0; k < size_; ++k) set(k, entries[k]);
}

MultiIndex MultiIndex::unit(int m, int i) {
    MultiIndex out(m);
    out.set(i, 1);
    return out;
}

void MultiIndex::set(int i, int value) {
    if (i < 0 || i >= size_) throw DimensionError("multi-index position out of range");
    if (value < 0 || value > 255) throw DomainError("multi-index entry out of range");
    entries_[i] = static_cast<std::uint8_t>(value);
}

int MultiIndex::length() const noexcept {
    int total = 0;
    for (int k = 0; k < size_; ++k) total += entries_[k];
    return total;
}

Integer MultiIndex::factorial() const {
    Integer out = 1;
    for (int k = 0; k < size_; ++k) out *= lepage::factorial(entries_[k]);
    return out;
}

Integer MultiIndex::weight() const { return lepage::factorial(length()) / factorial(); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (size_ != other.size_) throw DimensionError("multi-index length mismatch");
    MultiIndex out(size_);
    for (int k = 0; k < size_; ++k) out.set(k, entries_[k] + other.entries_[k]);
    return out;
}

std::optional<MultiIndex> MultiIndex::checked_difference(const MultiIndex& other) const {
    if (size_ != other.size_) throw DimensionError("multi-index length mismatch");
    MultiIndex out(size_);
    for (int k = 0; k < size_; ++k) {
        int d = int(entries_[k]) - int(other.entries_[k]);
        if (d < 0) return std::nullopt;
        out.entries_[k] = static_cast<std::uint8_t>(d);
    }
    return out;
}

MultiIndex MultiIndex::plus_unit(int i) const {
    MultiIndex out = *this;
    out.set(i, entries_[i] + 1);
    return out;
}

std::optional<MultiIndex> MultiIndex::minus_unit(int i) const {
    if (i < 0 || i >= size_) throw DimensionError("multi-index position out of range");
    if (entries_[i] == 0) return std::nullopt;
    MultiIndex out = *this;
    --out.entries_[i];
    return out;
}

bool MultiIndex::divides(const MultiIndex& other) const {
    if (size_ != other.size_) throw DimensionError("multi-index length mismatch");
    for (int k = 0; k < size_; ++k)
        if (entries_[k] > other.entries_[k]) return false;
    return true;
}

std::vector<int> MultiIndex::to_sequence() const {
    std::vector<int> out;
    for (int k = 0; k < size_; ++k)
        for (int c = 0; c < entries_[k]; ++c) out.push_back(k);
    return out;
}

std::vector<int> MultiIndex::to_vector() const {
    return std::vector<int>(entries_.begin(), entries_.begin() + size_);
}

std::string MultiIndex::str() const {
    std::string out = "(";
    for (int k = 0; k < size_; ++k) {
        if (k) out += ",";
        out += std::to_string(entries_[k]);
    }
    return out + ")";
}

std::size_t MultiIndex::hash() const noexcept {
    std::size_t h = size_;
    for (int k = 0; k < size_; ++k) h = h * 131 + entries_[k];
    return h;
}

namespace {

void fill(int m, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (pos == m - 1) {
        cur.set(pos, remaining);
        out.push_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur.set(pos, v);
        fill(m, pos + 1, remaining - v, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_length(int m, int r) {
    std::vector<MultiIndex> out;
    if (m == 0) {
        if (r == 0) out.emplace_back(0);
        return out;
    }
    MultiIndex cur(m);
    fill(m, 0, r, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int m, int r) {
    std::vector<MultiIndex> out;
    for (int len = 0; len <= r; ++len) {
        auto level = multi_indices_of_length(m, len);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& I) {
    std::vector<MultiIndex> out{MultiIndex(I.size())};
    for (int k = 0; k < I.size(); ++k) {
        std::vector<MultiIndex> next;
        for (const auto& base : out)
            for (int v = 0; v <= I[k]; ++v) {
                MultiIndex K = base;
                K.set(k, v);
                next.push_back(K);
            }
        out = std::move(next);
    }
    return out;
}

Integer multi_binomial(const MultiIndex& I, const MultiIndex& K) {
    auto diff = I.checked_difference(K);
    if (!diff) return 0;
    return I.factorial() / (K.factorial() * diff->factorial());
}

}  // namespace lepage

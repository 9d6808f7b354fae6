#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace csea
{

using VertexIndex = std::size_t;

/// Fixed-universe bitset over vertex indices [0, universe).
///
/// All binary operations require both operands to share the same universe.
/// Ordering compares the ascending member lists lexicographically, which is
/// the canonical order used for pattern emission and tie-breaking.
class VertexSet
{
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
    VertexSet(std::size_t universe, std::initializer_list<VertexIndex> members) : VertexSet(universe)
    {
        for (auto v : members)
            insert(v);
    }

    static VertexSet full(std::size_t universe)
    {
        VertexSet s(universe);
        for (auto& w : s.words_)
            w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const { return universe_; }

    void insert(VertexIndex v) { words_[v / 64] |= std::uint64_t{1} << (v % 64); }
    void erase(VertexIndex v) { words_[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
    bool contains(VertexIndex v) const { return (words_[v / 64] >> (v % 64)) & 1U; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty() const
    {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    bool is_subset_of(const VertexSet& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~other.words_[i]) != 0)
                return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    /// |this \ other| without materializing the difference.
    std::size_t count_minus(const VertexSet& other) const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & ~other.words_[i]));
        return c;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
        {
            auto w = words_[i];
            while (w != 0)
            {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(i * 64 + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<VertexIndex> members() const
    {
        std::vector<VertexIndex> out;
        for_each([&](VertexIndex v) { out.push_back(v); });
        return out;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    /// Lexicographic comparison of ascending member lists.
    friend bool operator<(const VertexSet& a, const VertexSet& b)
    {
        for (std::size_t i = 0; i < a.words_.size(); ++i)
        {
            if (a.words_[i] == b.words_[i])
                continue;
            auto diff = a.words_[i] ^ b.words_[i];
            auto low = diff & (~diff + 1);
            // The lowest element x of the symmetric difference decides. The set
            // holding x is smaller unless the other set is a prefix of it.
            if ((a.words_[i] & low) != 0)
                return b.has_member_from(i, low);
            return !a.has_member_from(i, low);
        }
        return false;
    }

    std::size_t hash() const
    {
        std::size_t h = universe_;
        for (auto w : words_)
            h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    void trim()
    {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    // any member strictly above the bit `low` in word i
    bool has_member_from(std::size_t i, std::uint64_t low) const
    {
        if ((words_[i] & ~((low << 1) - 1)) != 0)
            return true;
        for (std::size_t j = i + 1; j < words_.size(); ++j)
            if (words_[j] != 0)
                return true;
        return false;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct VertexSetHash
{
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace csea

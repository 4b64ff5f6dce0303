#ifndef FPSMAX_INDEXED_SET_HPP
#define FPSMAX_INDEXED_SET_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fpsmax {

/// Set of integers in [0, universe) with O(1) insert, erase, membership and
/// positional access (for uniform sampling).
///
/// While a journal is open every mutation is logged; rollback() undoes them
/// in reverse order and restores the exact element order, not just the
/// membership.
class IndexedSet {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    IndexedSet() = default;
    explicit IndexedSet(std::size_t universe) : pos_(universe, npos) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    bool contains(std::uint32_t x) const { return pos_[x] != npos; }
    std::uint32_t operator[](std::size_t i) const { return items_[i]; }
    std::uint32_t position(std::uint32_t x) const { return pos_[x]; }
    std::span<const std::uint32_t> items() const { return items_; }

    void insert(std::uint32_t x) {
        if (contains(x)) return;
        pos_[x] = static_cast<std::uint32_t>(items_.size());
        items_.push_back(x);
        if (journaling_) journal_.push_back({x, pos_[x], true});
    }

    void erase(std::uint32_t x) {
        const std::uint32_t p = pos_[x];
        if (p == npos) return;
        const std::uint32_t last = items_.back();
        items_[p] = last;
        pos_[last] = p;
        items_.pop_back();
        pos_[x] = npos;
        if (journaling_) journal_.push_back({x, p, false});
    }

    void assign(bool member, std::uint32_t x) {
        if (member) {
            insert(x);
        } else {
            erase(x);
        }
    }

    void clear() {
        for (std::uint32_t x : items_) pos_[x] = npos;
        items_.clear();
        journal_.clear();
        journaling_ = false;
    }

    void open_journal() {
        journal_.clear();
        journaling_ = true;
    }

    void rollback() {
        journaling_ = false;
        for (auto it = journal_.rbegin(); it != journal_.rend(); ++it) {
            if (it->inserted) {
                items_.pop_back();
                pos_[it->elem] = npos;
            } else {
                const std::uint32_t end = static_cast<std::uint32_t>(items_.size());
                items_.push_back(it->elem);
                const std::uint32_t moved = items_[it->pos];
                items_[it->pos] = it->elem;
                items_[end] = moved;
                pos_[moved] = end;
                pos_[it->elem] = it->pos;
            }
        }
        journal_.clear();
    }

    friend bool operator==(const IndexedSet& a, const IndexedSet& b) {
        return a.items_ == b.items_ && a.pos_ == b.pos_;
    }

private:
    struct Entry {
        std::uint32_t elem;
        std::uint32_t pos;
        bool inserted;
    };

    std::vector<std::uint32_t> items_;
    std::vector<std::uint32_t> pos_;
    std::vector<Entry> journal_;
    bool journaling_ = false;
};

}  // namespace fpsmax

#endif

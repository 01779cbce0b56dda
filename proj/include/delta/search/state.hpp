#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace delta::search {

// Fixed-width bitset over the fact ids of one grounded task.
class StateBits {
  public:
    StateBits() = default;
    explicit StateBits(size_t num_facts) : blocks_((num_facts + 63) / 64, 0) {}

    static StateBits from_ids(size_t num_facts, const std::vector<int>& ids) {
        StateBits s(num_facts);
        for (int id : ids)
            s.set(id);
        return s;
    }

    bool test(int id) const { return (blocks_[id >> 6] >> (id & 63)) & 1u; }
    void set(int id) { blocks_[id >> 6] |= uint64_t{1} << (id & 63); }
    void reset(int id) { blocks_[id >> 6] &= ~(uint64_t{1} << (id & 63)); }

    bool contains_all(const std::vector<int>& ids) const {
        for (int id : ids)
            if (!test(id))
                return false;
        return true;
    }
    bool contains_none(const std::vector<int>& ids) const {
        for (int id : ids)
            if (test(id))
                return false;
        return true;
    }

    std::vector<int> to_ids() const {
        std::vector<int> ids;
        for (size_t b = 0; b < blocks_.size(); ++b) {
            uint64_t word = blocks_[b];
            while (word) {
                int bit = __builtin_ctzll(word);
                ids.push_back(static_cast<int>(b * 64) + bit);
                word &= word - 1;
            }
        }
        return ids;
    }

    size_t hash() const {
        // FNV-1a over the blocks; good enough for duplicate detection maps.
        uint64_t h = 1469598103934665603ull;
        for (uint64_t block : blocks_) {
            h ^= block;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }

    bool operator==(const StateBits& other) const { return blocks_ == other.blocks_; }

  private:
    std::vector<uint64_t> blocks_;
};

struct StateBitsHash {
    size_t operator()(const StateBits& s) const { return s.hash(); }
};

}  // namespace delta::search

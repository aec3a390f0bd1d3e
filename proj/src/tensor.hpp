#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace doeforge::detail {

// Visits every index tuple of the box prod [0, counts[k]) in lexicographic
// order (last index fastest).
template <typename Fn>
void for_each_index(const std::vector<std::size_t>& counts, Fn&& fn) {
    for (std::size_t c : counts) {
        if (c == 0) return;
    }
    std::vector<std::size_t> idx(counts.size(), 0);
    while (true) {
        fn(std::span<const std::size_t>(idx));
        std::size_t k = counts.size();
        while (k > 0) {
            --k;
            if (++idx[k] < counts[k]) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (counts.empty()) return;
    }
}

}  // namespace doeforge::detail

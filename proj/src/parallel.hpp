#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace nightenh::detail {

int worker_count();

// Runs fn(begin, end) over disjoint row ranges. Each row must be written by
// exactly one call, so the result does not depend on the thread count.
template <typename Fn>
void parallel_rows(int rows, Fn&& fn) {
    const int workers = std::min(worker_count(), rows);
    if (workers <= 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const int chunk = (rows + workers - 1) / workers;
    for (int begin = 0; begin < rows; begin += chunk) {
        const int end = std::min(rows, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
}

}  // namespace nightenh::detail

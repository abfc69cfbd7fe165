#pragma once

namespace nightenh {

// Worker threads used by row-parallel kernels. 0 restores the default
// (hardware concurrency, or NIGHTENH_THREADS when set).
void set_thread_count(int n);
int thread_count();

}  // namespace nightenh

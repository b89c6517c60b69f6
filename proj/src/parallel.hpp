// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace logdet {

/**
 * Runs body(task) for task in [0, count) on up to `threads` workers with a
 * static round-robin assignment. Each task must write only its own outputs;
 * results are then independent of the worker count. The first exception
 * thrown (lowest task index) is rethrown after all workers join.
 */
template <typename Body>
void parallel_tasks(std::int64_t count, int threads, Body&& body)
{
    const auto workers = static_cast<std::int64_t>(
        std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1)));
    if (workers <= 1) {
        for (std::int64_t task = 0; task < count; ++task) {
            body(task);
        }
        return;
    }
    std::mutex guard;
    std::exception_ptr failure;
    std::int64_t failed_task = count;
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (std::int64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t task = w; task < count; task += workers) {
                    try {
                        body(task);
                    } catch (...) {
                        std::lock_guard lock(guard);
                        if (task < failed_task) {
                            failed_task = task;
                            failure = std::current_exception();
                        }
                        return;
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace logdet

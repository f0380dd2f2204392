#pragma once

#include <atomic>
#include <exception>
#include <thread>

namespace nbv {

template <class T>
std::vector<T> run_parallel(const std::vector<std::function<T()>>& jobs, unsigned workers)
{
    std::vector<T> out(jobs.size());
    if (workers == 0)
        workers = default_workers();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            try {
                out[i] = jobs[i]();
            }
            catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    }
    else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace nbv

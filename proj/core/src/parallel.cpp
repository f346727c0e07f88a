#include "twocolor/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace twocolor {

int default_worker_count() {
  if (const char* env = std::getenv("TWOCOLOR_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware count
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t n_threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t worker) {
    for (std::size_t i = worker; i < count; i += n_threads) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (n_threads == 1) {
    body(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) threads.emplace_back(body, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace twocolor

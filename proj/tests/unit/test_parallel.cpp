#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "logdamp/parallel.hpp"

using namespace logdamp;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) {
    if (value) {
      setenv("LOGDAMP_THREADS", value, 1);
    } else {
      unsetenv("LOGDAMP_THREADS");
    }
  }
  ~ThreadsEnv() { unsetenv("LOGDAMP_THREADS"); }
};

}  // namespace

TEST_CASE("worker count honours LOGDAMP_THREADS") {
  {
    ThreadsEnv env("3");
    CHECK(worker_count() == 3);
  }
  {
    ThreadsEnv env("1");
    CHECK(worker_count() == 1);
  }
  const std::size_t hardware = std::max(1u, std::thread::hardware_concurrency());
  for (const char* junk : {"0", "-2", "many", ""}) {
    ThreadsEnv env(junk);
    CHECK(worker_count() == hardware);
  }
  ThreadsEnv env(nullptr);
  CHECK(worker_count() == hardware);
}

TEST_CASE("results land in their own slots whatever the thread count") {
  auto work = [](std::size_t i) {
    double s = 0.0;
    for (std::size_t k = 1; k <= 200 + i % 37; ++k) s += std::sin(static_cast<double>(i * k)) / static_cast<double>(k);
    return s;
  };
  std::vector<double> reference;
  {
    ThreadsEnv env("1");
    reference = parallel_map(1000, work);
  }
  for (const char* threads : {"2", "5", "16"}) {
    ThreadsEnv env(threads);
    const auto again = parallel_map(1000, work);
    CHECK(again == reference);
  }
  for (std::size_t i = 0; i < reference.size(); i += 97) CHECK(reference[i] == work(i));
}

TEST_CASE("empty ranges do nothing") {
  bool called = false;
  parallel_for(0, [&](std::size_t) { called = true; });
  CHECK_FALSE(called);
  CHECK(parallel_map(0, [](std::size_t i) { return i; }).empty());
}

TEST_CASE("the lowest failing index is rethrown") {
  ThreadsEnv env("4");
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60 || i == 99) throw std::runtime_error("item " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "item 17");
  }
}

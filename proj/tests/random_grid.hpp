#ifndef CHIBAG_TESTS_RANDOM_GRID_HPP
#define CHIBAG_TESTS_RANDOM_GRID_HPP

#include <cstdint>
#include <random>
#include <string>

#include <gtest/gtest.h>

namespace support {

// Random parameter grids, reseeded from the running test's name so each
// test sees the same points regardless of filtering or order.
inline double uniform(double lo, double hi) {
  static std::string current;
  static std::mt19937_64 gen;
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const std::string name = info ? std::string(info->test_suite_name()) + "." + info->name() : "";
  if (name != current) {
    current = name;
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
    gen.seed(h);
  }
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace support

#endif  // CHIBAG_TESTS_RANDOM_GRID_HPP

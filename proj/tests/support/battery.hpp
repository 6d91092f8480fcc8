#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace acceptance {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Criteria 1 to 11 once.
std::vector<Criterion> run_core(std::uint64_t seed);

/// Criteria 1 to 12; the last one repeats 1 to 11 and compares the text.
std::vector<Criterion> run_battery(std::uint64_t seed);

/// One line per criterion, without timings so repeated runs compare equal.
std::string render(const Criterion& c);
std::string render(const std::vector<Criterion>& all);

} // namespace acceptance

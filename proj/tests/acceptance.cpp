// Runs every acceptance criterion with the default configuration and prints
// one PASS/FAIL line each. Exit status 0 only if all pass.

#include <iostream>

#include "fanokit/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace fanokit;
  try {
    RunConfig cfg = argc > 1 ? load_run_config(argv[1]) : RunConfig{};
    auto summary = run_acceptance_suite(cfg);
    for (const auto& c : summary.criteria) std::cout << format_line(c) << "\n";
    std::cout << (summary.all_passed() ? "all criteria passed" : "some criteria FAILED") << std::endl;
    return summary.all_passed() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

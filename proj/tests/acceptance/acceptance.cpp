// Acceptance suite runner: executes the numbered acceptance criteria and
// prints one pass/fail line per criterion. Exit 0 iff all requested
// criteria pass.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "sfi/verify.hpp"

int main(int argc, char** argv) {
  std::string scale_str = "desk";
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--scale") == 0 && i + 1 < argc) {
      scale_str = argv[++i];
    } else if (std::strcmp(argv[i], "--criteria") == 0 && i + 1 < argc) {
      const std::string s = argv[++i];
      std::size_t pos = 0;
      while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        ids.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--scale smoke|desk|full] [--criteria 1,2,...]\n",
                   argv[0]);
      return 3;
    }
  }
  const auto results = sfi::run_criteria(sfi::scale_from_string(scale_str), ids);
  if (results.empty()) {
    std::fprintf(stderr, "no criteria selected\n");
    return 3;
  }
  return sfi::verdict_exit_code(results);
}

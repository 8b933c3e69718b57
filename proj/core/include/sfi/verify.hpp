#pragma once

#include <string>
#include <vector>

namespace sfi {

/// desk runs the acceptance criteria at their stated grids and ladders
/// (the exit gate); smoke is a reduced-size sanity pass; full is desk.
enum class Scale { smoke, desk, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

/// Runs the requested acceptance criteria (all ten when ids is empty),
/// printing one pass/fail line per criterion. Criteria 6 and 7 share a
/// lambda sweep and are computed together when either is requested.
std::vector<CriterionResult> run_criteria(Scale scale, const std::vector<int>& ids = {});

std::string verdict_json(const std::vector<CriterionResult>& results, Scale scale);

/// 0 when every criterion passed, 1 otherwise.
int verdict_exit_code(const std::vector<CriterionResult>& results);

Scale scale_from_string(const std::string& s);

}  // namespace sfi

#pragma once

namespace invbasis::cli {

/// Exit codes: 0 property established, 1 property refuted (witness produced),
/// 2 usage or input error, 3 budget exceeded.
enum ExitStatus : int { established = 0, refuted = 1, usage_error = 2, budget_exceeded = 3 };

int run(int argc, char** argv);

}  // namespace invbasis::cli

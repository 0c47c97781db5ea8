#pragma once

// Command-line front end. Exit codes: 0 success, 1 internal error, 2 usage or
// invalid input, 3 cap exceeded, 4 verification failure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace prymrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitVerification = 4;

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
};

// Golden p = 5 genus-2 data (symbolic Cartier entries, D at a supersingular
// Legendre parameter, a p-rank 1 curve with a supersingular Prym, a p-rank 0
// curve with a p-rank 0 cover). `modulus` defines a in F_25, x^2+4x+2 by
// default. Other primes run only the checks that make sense for any p.
std::vector<CheckResult> golden_checks(std::uint32_t p, std::optional<std::vector<std::uint32_t>> modulus);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prymrank
